#pragma once

// Seeded samplers built directly on mt19937_64 so that draws are identical
// across standard library implementations.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "jmcurv/nbody.hpp"
#include "jmcurv/shape_space.hpp"

namespace jmcurv {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal by Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2 * M_PI * u2);
        has_spare_ = true;
        return r * std::cos(2 * M_PI * u2);
    }

    RVec normal_vector(Eigen::Index dim) {
        RVec v(dim);
        for (Eigen::Index k = 0; k < dim; ++k) v[k] = normal();
        return v;
    }

    std::uint64_t next() { return rng_(); }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Unit-mass configuration with positions in the square [-1, 1]^2 and every
/// pairwise distance at least min_gap.
inline Configuration random_configuration(Sampler& s, std::size_t n, double min_gap = 0.3) {
    for (;;) {
        std::vector<Complex> q(n);
        for (Complex& z : q) z = {s.uniform(-1, 1), s.uniform(-1, 1)};
        Configuration c(std::move(q));
        if (closest_pair(c).distance >= min_gap) return c;
    }
}

/// Unit-norm reduced point whose embedded configuration keeps every pair at
/// least min_gap apart.
inline ReducedPoint random_reduced_point(Sampler& s, std::size_t n, double min_gap = 0.15) {
    const ComEmbedding emb(n);
    for (;;) {
        RVec p = s.normal_vector(2 * static_cast<Eigen::Index>(n - 1));
        p.normalize();
        if (closest_pair(emb.embed(p)).distance >= min_gap) return ReducedPoint(p);
    }
}

/// Orthonormalized horizontal projections of two Gaussian vectors.
inline TangentPair random_horizontal_pair(Sampler& s, const ReducedPoint& p) {
    const Eigen::Index dim = p.coords().size();
    for (;;) {
        const RVec a = horizontal_project(p, s.normal_vector(dim));
        const RVec b = horizontal_project(p, s.normal_vector(dim));
        if (a.norm() < 1e-3 || b.norm() < 1e-3) continue;
        const RVec r = b - a.normalized().dot(b) * a.normalized();
        if (r.norm() < 1e-3) continue;
        return make_tangent_pair(p, a, b);
    }
}

} // namespace jmcurv
