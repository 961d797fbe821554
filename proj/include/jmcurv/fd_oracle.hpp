#pragma once

// Finite-difference oracles. Nothing here calls the closed-form derivative or
// curvature code; only the potential itself and the horizontal projection.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "jmcurv/error.hpp"
#include "jmcurv/nbody.hpp"
#include "jmcurv/realified.hpp"
#include "jmcurv/shape_space.hpp"

namespace jmcurv::fd {

inline const double kEps = std::numeric_limits<double>::epsilon();

/// Default first-derivative step: cbrt(eps) times the closest-pair distance.
inline double gradient_step(const Configuration& c) { return std::cbrt(kEps) * closest_pair(c).distance; }
/// Default second-difference step: eps^(1/4) times the closest-pair distance.
inline double hessian_step(const Configuration& c) { return std::pow(kEps, 0.25) * closest_pair(c).distance; }

namespace detail {

inline double potential_at(const Configuration& base, const RVec& x) {
    return potential(Configuration(complexify(x), base.masses()));
}

inline void require_margin(const Configuration& c, double h) {
    const ClosestPair cp = closest_pair(c);
    if (!(cp.distance >= 10.0 * h)) throw CollisionError(cp.i, cp.j, cp.distance);
}

} // namespace detail

/// Central-difference gradient of the potential.
inline RVec fd_gradient(const Configuration& config, double h = 0.0) {
    if (h <= 0.0) h = gradient_step(config);
    detail::require_margin(config, h);
    const RVec x = config.realified();
    RVec g(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        RVec xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        g[k] = (detail::potential_at(config, xp) - detail::potential_at(config, xm)) / (2 * h);
    }
    return g;
}

/// Central second differences of the potential.
inline RMat fd_hessian(const Configuration& config, double h = 0.0) {
    if (h <= 0.0) h = hessian_step(config);
    detail::require_margin(config, h);
    const RVec x = config.realified();
    const Eigen::Index dim = x.size();
    const double u0 = detail::potential_at(config, x);
    auto at = [&](Eigen::Index i, double si, Eigen::Index j, double sj) {
        RVec y = x;
        y[i] += si * h;
        y[j] += sj * h;
        return detail::potential_at(config, y);
    };
    RMat hess(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        hess(i, i) = (at(i, 1, i, 0) - 2 * u0 + at(i, -1, i, 0)) / (h * h);
        for (Eigen::Index j = i + 1; j < dim; ++j) {
            const double v = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) / (4 * h * h);
            hess(i, j) = v;
            hess(j, i) = v;
        }
    }
    return hess;
}

/// Covariant Riemann tensor R_abcd at one point, with R_abab > 0 on the round sphere.
class RiemannTensor {
public:
    explicit RiemannTensor(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim * dim), 0.0) {}

    int dim() const noexcept { return dim_; }
    double& operator()(int a, int b, int c, int d) { return data_[index(a, b, c, d)]; }
    double operator()(int a, int b, int c, int d) const { return data_[index(a, b, c, d)]; }

    /// R(X, Y, X, Y)
    double contract(const RVec& x, const RVec& y) const {
        double s = 0.0;
        for (int a = 0; a < dim_; ++a)
            for (int b = 0; b < dim_; ++b)
                for (int c = 0; c < dim_; ++c)
                    for (int d = 0; d < dim_; ++d) s += (*this)(a, b, c, d) * x[a] * y[b] * x[c] * y[d];
        return s;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    std::size_t index(int a, int b, int c, int d) const {
        return static_cast<std::size_t>(((a * dim_ + b) * dim_ + c) * dim_ + d);
    }
    int dim_;
    std::vector<double> data_;
};

/// Riemann tensor at u = 0 of a metric given as a callable u -> g(u), from
/// second-order central differences with step h.
template <class MetricFn>
RiemannTensor fd_riemann(MetricFn&& metric, int dim, double h) {
    auto g_at = [&](int i, double si, int j, double sj) {
        RVec u = RVec::Zero(dim);
        u[i] += si * h;
        u[j] += sj * h;
        return RMat(metric(u));
    };
    const RMat g0 = metric(RVec::Zero(dim));
    std::vector<RMat> dg(static_cast<std::size_t>(dim));
    std::vector<RMat> ddg(static_cast<std::size_t>(dim * dim));
    for (int c = 0; c < dim; ++c) {
        const RMat gp = g_at(c, 1, c, 0), gm = g_at(c, -1, c, 0);
        dg[c] = (gp - gm) / (2 * h);
        ddg[c * dim + c] = (gp - 2 * g0 + gm) / (h * h);
        for (int d = c + 1; d < dim; ++d) {
            const RMat v = (g_at(c, 1, d, 1) - g_at(c, 1, d, -1) - g_at(c, -1, d, 1) + g_at(c, -1, d, -1)) / (4 * h * h);
            ddg[c * dim + d] = v;
            ddg[d * dim + c] = v;
        }
    }
    // dg1(a, b, c) = d_c g_ab ; dg2(a, b, c, d) = d_c d_d g_ab
    auto dg1 = [&](int a, int b, int c) { return dg[c](a, b); };
    auto dg2 = [&](int a, int b, int c, int d) { return ddg[c * dim + d](a, b); };

    const RMat ginv = g0.inverse();
    // Christoffel symbols of the first kind: gamma1[f][b][c] = Gamma_{f b c}
    std::vector<double> gamma1(static_cast<std::size_t>(dim * dim * dim));
    auto g1 = [&](int f, int b, int c) -> double& { return gamma1[static_cast<std::size_t>((f * dim + b) * dim + c)]; };
    for (int f = 0; f < dim; ++f)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c) g1(f, b, c) = 0.5 * (dg1(f, b, c) + dg1(f, c, b) - dg1(b, c, f));

    RiemannTensor r(dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c)
                for (int d = 0; d < dim; ++d) {
                    double v = 0.5 * (dg2(a, d, b, c) + dg2(b, c, a, d) - dg2(a, c, b, d) - dg2(b, d, a, c));
                    // + g_ef (Gamma^e_bc Gamma^f_ad - Gamma^e_bd Gamma^f_ac), with g_ef Gamma^e Gamma^f = Gamma_e g^ef Gamma_f
                    for (int e = 0; e < dim; ++e)
                        for (int f = 0; f < dim; ++f)
                            v += ginv(e, f) * (g1(e, b, c) * g1(f, a, d) - g1(e, b, d) * g1(f, a, c));
                    r(a, b, c, d) = v;
                }
    return r;
}

/// Sectional curvature of span(x, y) at u = 0 for a metric callable.
template <class MetricFn>
double fd_sectional_from_metric(MetricFn&& metric, int dim, const RVec& x, const RVec& y, double h) {
    const RMat g0 = metric(RVec::Zero(dim));
    const double gram = x.dot(g0 * x) * y.dot(g0 * y) - std::pow(x.dot(g0 * y), 2);
    if (gram < 1e-8) throw IllConditionedError("plane Gram determinant below 1e-8");
    return fd_riemann(metric, dim, h).contract(x, y) / gram;
}

/// Quotient metric on shape space in the affine chart u -> base + sum u_a frame_a.
class ChartMetricSampler {
public:
    explicit ChartMetricSampler(ReducedPoint base)
        : base_(std::move(base)), emb_(base_.bodies()), frame_(horizontal_frame(base_)) {}

    const ReducedPoint& base() const noexcept { return base_; }
    const std::vector<RVec>& frame() const noexcept { return frame_; }
    const ComEmbedding& embedding() const noexcept { return emb_; }
    int dim() const noexcept { return static_cast<int>(frame_.size()); }

    RVec slice(const RVec& u) const {
        RVec s = base_.coords();
        for (int a = 0; a < dim(); ++a) s += u[a] * frame_[static_cast<std::size_t>(a)];
        return s;
    }

    /// g_ab(u) = U_L(s) <hor_s f_a, hor_s f_b>
    RMat operator()(const RVec& u) const {
        const RVec s = slice(u);
        const double ul = restricted_potential(s, emb_);
        std::vector<RVec> h;
        h.reserve(frame_.size());
        for (const RVec& f : frame_) h.push_back(horizontal_project(s, f));
        RMat g(dim(), dim());
        for (int a = 0; a < dim(); ++a)
            for (int b = a; b < dim(); ++b) {
                const double v = ul * h[static_cast<std::size_t>(a)].dot(h[static_cast<std::size_t>(b)]);
                g(a, b) = v;
                g(b, a) = v;
            }
        return g;
    }

    /// Frame coordinates of a tangent vector at the base.
    RVec coordinates(const RVec& v) const {
        RVec c(dim());
        for (int a = 0; a < dim(); ++a) c[a] = frame_[static_cast<std::size_t>(a)].dot(v);
        return c;
    }

private:
    ReducedPoint base_;
    ComEmbedding emb_;
    std::vector<RVec> frame_;
};

inline RMat chart_metric(const ReducedPoint& base, const RVec& u) { return ChartMetricSampler(base)(u); }

/// Scale-invariant potential U(s/|s|) times the Fubini-Study metric, pulled back
/// through the same chart. FS is evaluated from its Hermitian closed form
/// Re(<X,Y>/|z|^2 - <X,z><z,Y>/|z|^4).
inline RMat fs_chart_metric(const ChartMetricSampler& sampler, const RVec& u) {
    const RVec s = sampler.slice(u);
    const std::vector<Complex> z = complexify(s);
    double zz = 0.0;
    for (const Complex& c : z) zz += std::norm(c);
    auto herm = [](const std::vector<Complex>& a, const std::vector<Complex>& b) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * std::conj(b[k]);
        return acc;
    };
    std::vector<std::vector<Complex>> fz;
    for (const RVec& f : sampler.frame()) fz.push_back(complexify(f));

    const double unorm = restricted_potential(RVec(s / std::sqrt(zz)), sampler.embedding());
    const int dim = sampler.dim();
    RMat g(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            const auto& xa = fz[static_cast<std::size_t>(a)];
            const auto& xb = fz[static_cast<std::size_t>(b)];
            const Complex v = herm(xa, xb) / zz - herm(xa, z) * herm(z, xb) / (zz * zz);
            g(a, b) = unorm * v.real();
        }
    return g;
}

inline constexpr double kMetricStep = 1e-3;

/// Curvature of the shape-space metric through span(pair) from the FD chart Riemann tensor.
inline double fd_sectional(const TangentPair& pair, double h_g = kMetricStep) {
    const ChartMetricSampler sampler(pair.base);
    return fd_sectional_from_metric(sampler, sampler.dim(), sampler.coordinates(pair.v1),
                                    sampler.coordinates(pair.v2), h_g);
}

/// Curvature of the ambient conformal metric U_L ds^2 on C^{n-1} through span(pair),
/// from an FD Riemann tensor in Cartesian coordinates.
inline double fd_ambient_sectional(const TangentPair& pair, double h_g = kMetricStep) {
    const ComEmbedding emb(pair.base.bodies());
    const RVec& p = pair.base.coords();
    const int dim = static_cast<int>(p.size());
    auto metric = [&](const RVec& u) {
        return RMat(restricted_potential(RVec(p + u), emb) * RMat::Identity(dim, dim));
    };
    return fd_sectional_from_metric(metric, dim, pair.v1, pair.v2, h_g);
}

struct BracketVertical {
    double dot_e = 0.0;         ///< [V1, V2] . p
    double dot_ie = 0.0;        ///< [V1, V2] . ip
    double jm_norm_sq = 0.0;    ///< |[V1, V2]^vertical|^2 in the JM metric
    double field_twist = 0.0;   ///< V1 . i V2 at the base
};

/// Lie bracket of the horizontal extensions V_a(x) = hor_x(v_a)/sqrt(U_L(x)) at the base,
/// by central differences of directional derivatives.
inline BracketVertical fd_bracket_vertical(const TangentPair& pair, double h = 0.0) {
    const ComEmbedding emb(pair.base.bodies());
    const RVec& p = pair.base.coords();
    if (h <= 0.0) h = std::cbrt(kEps) * p.norm();
    auto field = [&](const RVec& v, const RVec& x) {
        return RVec(horizontal_project(x, v) / std::sqrt(restricted_potential(x, emb)));
    };
    auto derivative = [&](const RVec& v, const RVec& dir) {
        const double len = dir.norm();
        const RVec step = (h / len) * dir;
        return RVec((field(v, p + step) - field(v, p - step)) * (len / (2 * h)));
    };
    const RVec w1 = field(pair.v1, p), w2 = field(pair.v2, p);
    const RVec bracket = derivative(pair.v2, w1) - derivative(pair.v1, w2);

    BracketVertical out;
    out.dot_e = bracket.dot(p);
    out.dot_ie = bracket.dot(times_i(p));
    out.jm_norm_sq = restricted_potential(p, emb) * (out.dot_e * out.dot_e + out.dot_ie * out.dot_ie) / p.squaredNorm();
    out.field_twist = w1.dot(times_i(w2));
    return out;
}

} // namespace jmcurv::fd
