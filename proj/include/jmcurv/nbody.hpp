#pragma once

// Strong-force potential U = sum_{i<j} m_i m_j / r_ij^2 and its calculus.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jmcurv/error.hpp"
#include "jmcurv/realified.hpp"
#include "jmcurv/reduced_point.hpp"

namespace jmcurv {

/// Relative collision tolerance: pairs closer than kCollisionTolerance * (1 + |q|) are rejected.
inline constexpr double kCollisionTolerance = 1e-9;

class Configuration {
public:
    /// Unit masses.
    explicit Configuration(std::vector<Complex> positions)
        : Configuration(positions, std::vector<double>(positions.size(), 1.0)) {}

    Configuration(std::vector<Complex> positions, std::vector<double> masses)
        : positions_(std::move(positions)), masses_(std::move(masses)) {
        if (positions_.size() < 3)
            throw std::invalid_argument("configuration needs at least 3 bodies");
        if (masses_.size() != positions_.size())
            throw std::invalid_argument("masses and positions differ in length");
        for (double m : masses_)
            if (!(m > 0.0)) throw std::invalid_argument("masses must be positive");
    }

    static Configuration from_realified(const RVec& x) { return Configuration(complexify(x)); }

    std::size_t size() const noexcept { return positions_.size(); }
    const std::vector<Complex>& positions() const noexcept { return positions_; }
    const std::vector<double>& masses() const noexcept { return masses_; }
    RVec realified() const { return realify(positions_); }

    bool unit_masses() const {
        for (double m : masses_)
            if (m != 1.0) return false;
        return true;
    }

private:
    std::vector<Complex> positions_;
    std::vector<double> masses_;
};

struct DerivativeBundle {
    double value = 0.0;
    RVec gradient;  ///< length 2n, over (x_k, y_k)
    RMat hessian;   ///< 2n x 2n
};

/// Closest pair and its distance.
struct ClosestPair {
    std::size_t i = 0;
    std::size_t j = 0;
    double distance = std::numeric_limits<double>::infinity();
};

inline ClosestPair closest_pair(const Configuration& config) {
    ClosestPair best;
    const auto& q = config.positions();
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            double d = std::abs(q[i] - q[j]);
            if (d < best.distance) best = {i, j, d};
        }
    return best;
}

inline double collision_threshold(const Configuration& config) {
    return kCollisionTolerance * (1.0 + config.realified().norm());
}

/// Throws CollisionError naming the closest pair when it is within `factor` times the tolerance.
inline void require_collision_free(const Configuration& config, double factor = 1.0) {
    ClosestPair c = closest_pair(config);
    if (!(c.distance >= factor * collision_threshold(config)))
        throw CollisionError(c.i, c.j, c.distance);
}

inline double potential(const Configuration& config) {
    require_collision_free(config);
    const auto& q = config.positions();
    const auto& m = config.masses();
    double u = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j)
            u += m[i] * m[j] / std::norm(q[i] - q[j]);
    return u;
}

/// Exact gradient and Hessian in realified coordinates.
///
/// Per pair, with d = q_i - q_j, s = |d|^2 and c = m_i m_j, the term c/s has
/// gradient -2c d/s^2 and Hessian c (8 d d^T / s^3 - 2 I / s^2) with respect to d.
inline DerivativeBundle potential_derivatives(const Configuration& config) {
    require_collision_free(config);
    const auto& q = config.positions();
    const auto& m = config.masses();
    const auto n = static_cast<Eigen::Index>(q.size());

    DerivativeBundle out;
    out.gradient = RVec::Zero(2 * n);
    out.hessian = RMat::Zero(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double c = m[i] * m[j];
            const Eigen::Vector2d d(q[i].real() - q[j].real(), q[i].imag() - q[j].imag());
            const double s = d.squaredNorm();
            out.value += c / s;

            const Eigen::Vector2d g = -2.0 * c * d / (s * s);
            out.gradient.segment<2>(2 * i) += g;
            out.gradient.segment<2>(2 * j) -= g;

            const Eigen::Matrix2d h =
                c * (8.0 * d * d.transpose() / (s * s * s) - 2.0 * Eigen::Matrix2d::Identity() / (s * s));
            out.hessian.block<2, 2>(2 * i, 2 * i) += h;
            out.hessian.block<2, 2>(2 * j, 2 * j) += h;
            out.hessian.block<2, 2>(2 * i, 2 * j) -= h;
            out.hessian.block<2, 2>(2 * j, 2 * i) -= h;
        }
    return out;
}

/// Exact gradient only.
inline RVec potential_gradient(const Configuration& config) {
    require_collision_free(config);
    const auto& q = config.positions();
    const auto& m = config.masses();
    const auto n = static_cast<Eigen::Index>(q.size());
    RVec g = RVec::Zero(2 * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const Eigen::Vector2d d(q[i].real() - q[j].real(), q[i].imag() - q[j].imag());
            const double s = d.squaredNorm();
            const Eigen::Vector2d gij = -2.0 * m[i] * m[j] * d / (s * s);
            g.segment<2>(2 * i) += gij;
            g.segment<2>(2 * j) -= gij;
        }
    return g;
}

inline Complex center_of_mass(const Configuration& config) {
    Complex sum{0.0, 0.0};
    double total = 0.0;
    for (std::size_t k = 0; k < config.size(); ++k) {
        sum += config.masses()[k] * config.positions()[k];
        total += config.masses()[k];
    }
    return sum / total;
}

/// Sum of m_i |q_i - q_cm|^2.
inline double moment_of_inertia(const Configuration& config) {
    const Complex cm = center_of_mass(config);
    double total = 0.0;
    for (std::size_t k = 0; k < config.size(); ++k)
        total += config.masses()[k] * std::norm(config.positions()[k] - cm);
    return total;
}

/// Real-orthonormal, zero-sum basis of the center-of-mass-zero subspace of C^n,
/// identifying C^{n-1} with it. Columns act complex-linearly.
class ComEmbedding {
public:
    explicit ComEmbedding(std::size_t n) : n_(n) {
        if (n < 3) throw std::invalid_argument("embedding needs n >= 3");
        basis_ = RMat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n - 1));
        if (n == 4) {
            const double h = 0.5, r = 1.0 / std::sqrt(2.0);
            basis_ << h, r, 0.0,
                      h, -r, 0.0,
                      -h, 0.0, r,
                      -h, 0.0, -r;
        } else {
            // Gram-Schmidt over e1-e2, e1+e2-2e3, ... in index order.
            for (std::size_t a = 0; a + 1 < n; ++a) {
                Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
                for (std::size_t k = 0; k <= a; ++k) w[static_cast<Eigen::Index>(k)] = 1.0;
                w[static_cast<Eigen::Index>(a + 1)] = -static_cast<double>(a + 1);
                for (std::size_t b = 0; b < a; ++b)
                    w -= basis_.col(static_cast<Eigen::Index>(b)).dot(w) * basis_.col(static_cast<Eigen::Index>(b));
                basis_.col(static_cast<Eigen::Index>(a)) = w.normalized();
            }
        }
        realified_ = RMat::Zero(2 * basis_.rows(), 2 * basis_.cols());
        for (Eigen::Index i = 0; i < basis_.rows(); ++i)
            for (Eigen::Index a = 0; a < basis_.cols(); ++a) {
                realified_(2 * i, 2 * a) = basis_(i, a);
                realified_(2 * i + 1, 2 * a + 1) = basis_(i, a);
            }
    }

    std::size_t bodies() const noexcept { return n_; }
    /// n x (n-1) real matrix; column a is the a-th basis vector.
    const RMat& basis() const noexcept { return basis_; }
    /// 2n x 2(n-1) realified matrix of the embedding.
    const RMat& realified() const noexcept { return realified_; }

    /// L x for a realified vector of C^{n-1}.
    RVec apply(const RVec& x) const { return realified_ * x; }
    /// L^T y, the pullback of a realified covector on C^n.
    RVec pullback(const RVec& y) const { return realified_.transpose() * y; }

    Configuration embed(const ReducedPoint& p) const {
        require_size(p.coords());
        return Configuration::from_realified(apply(p.coords()));
    }
    Configuration embed(const RVec& coords) const {
        require_size(coords);
        return Configuration::from_realified(apply(coords));
    }

private:
    void require_size(const RVec& x) const {
        if (x.size() != 2 * static_cast<Eigen::Index>(n_ - 1))
            throw std::invalid_argument("point dimension does not match embedding");
    }

    std::size_t n_;
    RMat basis_;
    RMat realified_;
};

/// Derivatives of U_L = U o L at a point of C^{n-1}.
struct RestrictedDerivatives {
    double value = 0.0;
    RVec gradient;          ///< gradient of U_L, length 2(n-1)
    RMat hessian;           ///< Hessian of U_L
    RVec ambient_gradient;  ///< gradient of U at L p, length 2n

    /// dU_L(v)
    double first(const RVec& v) const { return gradient.dot(v); }
    /// d^2 U_L(v, v)
    double second(const RVec& v) const { return v.dot(hessian * v); }
};

inline double restricted_potential(const RVec& p, const ComEmbedding& emb) {
    return potential(emb.embed(p));
}
inline double restricted_potential(const ReducedPoint& p, const ComEmbedding& emb) {
    return restricted_potential(p.coords(), emb);
}

inline RestrictedDerivatives restricted_derivatives(const RVec& p, const ComEmbedding& emb) {
    const DerivativeBundle d = potential_derivatives(emb.embed(p));
    const RMat& l = emb.realified();
    RestrictedDerivatives out;
    out.value = d.value;
    out.ambient_gradient = d.gradient;
    out.gradient = l.transpose() * d.gradient;
    out.hessian = l.transpose() * d.hessian * l;
    return out;
}
inline RestrictedDerivatives restricted_derivatives(const ReducedPoint& p, const ComEmbedding& emb) {
    return restricted_derivatives(p.coords(), emb);
}

} // namespace jmcurv
