#pragma once

// Sectional curvature of the shape-space metric obtained from U_L ds^2 by
// Riemannian submersion along the C* orbits.
//
//   U_L^3 K = (3/4)(d1U^2 + d2U^2) - |grad U / 2|^2 - (U_L/2)(d11U + d22U)
//             + 3 (U_L^2 / |p|^2) (v1 . i v2)^2
//
// The first three terms are the conformal (ambient) curvature, the last is the
// O'Neill correction from the vertical part of [V1, V2].

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "jmcurv/error.hpp"
#include "jmcurv/nbody.hpp"
#include "jmcurv/shape_space.hpp"

namespace jmcurv {

struct CurvatureBreakdown {
    double term_first_partials = 0.0;  ///< (3/4)((d1 U_L)^2 + (d2 U_L)^2)
    double term_grad_norm = 0.0;       ///< -|grad U / 2|^2
    double term_laplacian = 0.0;       ///< -(U_L/2)(d1^2 U_L + d2^2 U_L)
    double term_oneill = 0.0;          ///< 3 (U_L^2/|p|^2)(v1 . i v2)^2
    double u_l = 0.0;
    double k = 0.0;

    double terms_sum() const { return term_first_partials + term_grad_norm + term_laplacian + term_oneill; }
};

namespace detail {

inline void require_bodies(const TangentPair& pair, const ComEmbedding& emb) {
    if (pair.base.bodies() != emb.bodies())
        throw std::invalid_argument("tangent pair and embedding disagree on body count");
}

inline CurvatureBreakdown breakdown(const TangentPair& pair, const ComEmbedding& emb) {
    validate(pair);
    require_bodies(pair, emb);
    const RestrictedDerivatives d = restricted_derivatives(pair.base, emb);
    const double u = d.value;
    const double d1 = d.first(pair.v1), d2 = d.first(pair.v2);
    const double dd1 = d.second(pair.v1), dd2 = d.second(pair.v2);
    const double twist = pair.v1.dot(times_i(pair.v2));

    CurvatureBreakdown out;
    out.u_l = u;
    out.term_first_partials = 0.75 * (d1 * d1 + d2 * d2);
    out.term_grad_norm = -0.25 * d.ambient_gradient.squaredNorm();
    out.term_laplacian = -0.5 * u * (dd1 + dd2);
    out.term_oneill = 3.0 * u * u / pair.base.coords().squaredNorm() * twist * twist;
    out.k = out.terms_sum() / (u * u * u);
    return out;
}

} // namespace detail

/// Full breakdown of K(sigma) at an arbitrary point and horizontal plane.
inline CurvatureBreakdown sectional_curvature(const TangentPair& pair, const ComEmbedding& emb) {
    return detail::breakdown(pair, emb);
}
inline CurvatureBreakdown sectional_curvature(const TangentPair& pair) {
    return sectional_curvature(pair, ComEmbedding(pair.base.bodies()));
}

/// Sectional curvature of the ambient conformal metric U_L ds^2 through span(v1, v2).
inline double kn_block(const TangentPair& pair, const ComEmbedding& emb) {
    const CurvatureBreakdown b = detail::breakdown(pair, emb);
    return (b.term_first_partials + b.term_grad_norm + b.term_laplacian) / (b.u_l * b.u_l * b.u_l);
}
inline double kn_block(const TangentPair& pair) { return kn_block(pair, ComEmbedding(pair.base.bodies())); }

/// Un-normalized O'Neill summand 3 (U_L^2/|p|^2)(v1 . i v2)^2.
inline double oneill_term(const TangentPair& pair, const ComEmbedding& emb) {
    validate(pair);
    detail::require_bodies(pair, emb);
    const double u = restricted_potential(pair.base, emb);
    const double twist = pair.v1.dot(times_i(pair.v2));
    return 3.0 * u * u / pair.base.coords().squaredNorm() * twist * twist;
}
inline double oneill_term(const TangentPair& pair) { return oneill_term(pair, ComEmbedding(pair.base.bodies())); }

/// Reciprocal gaps and frame weights on the collinear circle theta = pi/2.
/// Indices are zero-based body labels: rho[j][k] = 1/(q_j - q_k) (antisymmetric),
/// alpha[j][k] = (v1^j - v1^k)^2 + (v2^j - v2^k)^2 (symmetric), zero on the diagonal.
struct RhoAlphaTable {
    double phi = 0.0;
    std::array<std::array<double, 4>, 4> rho{};
    std::array<std::array<double, 4>, 4> alpha{};

    /// 1-based accessors matching the usual pair labels.
    double r(int j, int k) const { return rho[j - 1][k - 1]; }
    double a(int j, int k) const { return alpha[j - 1][k - 1]; }

    /// Sum over the six unordered pairs of rho^power.
    double pair_sum(int power) const {
        double s = 0.0;
        for (int j = 0; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k) s += std::pow(rho[j][k], power);
        return s;
    }
    /// Sum over pairs of alpha rho^4.
    double weighted_quartic_sum() const {
        double s = 0.0;
        for (int j = 0; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k) s += alpha[j][k] * std::pow(rho[j][k], 4);
        return s;
    }
};

inline RhoAlphaTable collinear_rho_alpha(double phi) {
    const CollinearChart chart{phi, M_PI / 2};
    const TangentPair frame = normal_plane_frame(chart);  // throws at collision angles
    const ComEmbedding& emb = four_body_embedding();
    const RVec q = emb.apply(frame.base.coords());
    const RVec w1 = emb.apply(frame.v1);
    const RVec w2 = emb.apply(frame.v2);

    RhoAlphaTable t;
    t.phi = phi;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            if (j == k) continue;
            t.rho[j][k] = 1.0 / (q[2 * j] - q[2 * k]);
            // L v_a is purely imaginary: compare imaginary parts.
            const double d1 = w1[2 * j + 1] - w1[2 * k + 1];
            const double d2 = w2[2 * j + 1] - w2[2 * k + 1];
            t.alpha[j][k] = d1 * d1 + d2 * d2;
        }
    return t;
}

/// Both sides of the positivity criterion lhs < rhs on the collinear circle,
/// with lhs = |grad U/2|^2 and rhs = U_L * sum alpha rho^4.
struct InequalitySides {
    double lhs = 0.0;
    double rhs = 0.0;
    /// lhs as 2[(r12^3 + r13^3 + r14^3)^2 + (r13^3 - r14^3 - r34^3)^2].
    double lhs_paired = 0.0;
    /// lhs as 2 sum rho^6 - 96 / (sin^2 2phi cos^2 2phi).
    double lhs_expanded = 0.0;
    /// rhs as 2 sum rho^6 plus the trigonometric positive term.
    double rhs_expanded = 0.0;
};

inline InequalitySides inequality_sides(const RhoAlphaTable& t) {
    InequalitySides s;
    for (int k = 0; k < 4; ++k) {
        double inner = 0.0;
        for (int j = 0; j < 4; ++j)
            if (j != k) inner += std::pow(t.rho[j][k], 3);
        s.lhs += inner * inner;
    }
    s.rhs = t.pair_sum(2) * t.weighted_quartic_sum();

    auto c3 = [&](int j, int k) { return std::pow(t.r(j, k), 3); };
    const double first = c3(1, 2) + c3(1, 3) + c3(1, 4);
    const double second = c3(1, 3) - c3(1, 4) - c3(3, 4);
    s.lhs_paired = 2.0 * (first * first + second * second);

    const double sin2 = std::sin(2 * t.phi), cos2 = std::cos(2 * t.phi);
    const double sum6 = t.pair_sum(6);
    s.lhs_expanded = 2.0 * sum6 - 96.0 / (sin2 * sin2 * cos2 * cos2);

    auto pw = [&](int j, int k, int e) { return std::pow(t.r(j, k), e); };
    const double tan2 = sin2 / cos2;
    s.rhs_expanded = 2.0 * sum6 + (1.0 / (tan2 * tan2)) * (pw(1, 3, 6) + pw(1, 4, 6)) +
                     8.0 * tan2 * tan2 * (pw(1, 2, 6) + pw(3, 4, 6)) +
                     (pw(1, 3, 4) + pw(1, 4, 4)) * (4.0 / (sin2 * sin2) + 16.0 / (cos2 * cos2));
    return s;
}
inline InequalitySides inequality_sides(double phi) { return inequality_sides(collinear_rho_alpha(phi)); }

/// Normal-plane curvature on the collinear circle through the rho/alpha algebra:
/// first partials and the O'Neill term vanish, U_L^3 K = rhs - lhs.
inline CurvatureBreakdown collinear_normal_curvature(double phi) {
    const RhoAlphaTable t = collinear_rho_alpha(phi);
    const InequalitySides s = inequality_sides(t);
    CurvatureBreakdown b;
    b.u_l = t.pair_sum(2);
    b.term_first_partials = 0.0;
    b.term_oneill = 0.0;
    b.term_grad_norm = -s.lhs;
    b.term_laplacian = b.u_l * t.weighted_quartic_sum();
    b.k = b.terms_sum() / (b.u_l * b.u_l * b.u_l);
    return b;
}

/// Gaussian curvature of the three-body shape sphere at the shape of p.
inline double pants_curvature(const ReducedPoint& p) {
    if (p.bodies() != 3) throw std::invalid_argument("pants curvature needs n = 3");
    const std::vector<RVec> frame = horizontal_frame(p);
    return sectional_curvature(TangentPair{p, frame[0], frame[1]}).k;
}

} // namespace jmcurv
