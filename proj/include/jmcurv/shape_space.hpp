#pragma once

// Quotient of C^{n-1} by rotations and scalings: vertical/horizontal split,
// orthonormal frames, and the collinear chart of the four-body shape space.

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "jmcurv/error.hpp"
#include "jmcurv/nbody.hpp"
#include "jmcurv/realified.hpp"
#include "jmcurv/reduced_point.hpp"

namespace jmcurv {

inline constexpr double kFrameTolerance = 1e-10;

/// (p/|p|, ip/|p|), an orthonormal basis of the orbit direction C p.
inline std::array<RVec, 2> vertical_frame(const ReducedPoint& p) {
    const RVec e = p.coords() / p.norm();
    return {e, times_i(e)};
}

/// Removes the components of w along p and ip.
inline RVec horizontal_project(const RVec& p, const RVec& w) {
    const double nn = p.squaredNorm();
    if (nn == 0.0) throw ZeroPointError();
    const RVec ip = times_i(p);
    return w - (p.dot(w) / nn) * p - (ip.dot(w) / nn) * ip;
}
inline RVec horizontal_project(const ReducedPoint& p, const RVec& w) {
    return horizontal_project(p.coords(), w);
}

/// Orthonormal basis of the horizontal space: Gram-Schmidt over horizontal projections of the
/// realified standard basis in index order.
inline std::vector<RVec> horizontal_frame(const ReducedPoint& p) {
    const Eigen::Index dim = p.coords().size();
    const auto [e, ie] = vertical_frame(p);
    std::vector<RVec> frame;
    for (Eigen::Index k = 0; k < dim && static_cast<Eigen::Index>(frame.size()) < dim - 2; ++k) {
        RVec w = RVec::Unit(dim, k);
        // Project out vertical and accepted directions twice for stability.
        for (int pass = 0; pass < 2; ++pass) {
            w -= e.dot(w) * e;
            w -= ie.dot(w) * ie;
            for (const RVec& f : frame) w -= f.dot(w) * f;
        }
        const double len = w.norm();
        if (len < 1e-8) continue;
        frame.push_back(w / len);
    }
    return frame;
}

/// Two orthonormal horizontal vectors at a base point; the plane they span is sigma.
struct TangentPair {
    ReducedPoint base;
    RVec v1;
    RVec v2;
};

/// Throws FrameError when the pair is not orthonormal or not horizontal.
inline void validate(const TangentPair& pair, double tol = kFrameTolerance) {
    const RVec& p = pair.base.coords();
    if (pair.v1.size() != p.size() || pair.v2.size() != p.size())
        throw FrameError("tangent vectors do not match the point dimension");
    const double pn = p.norm();
    const RVec ip = times_i(p);
    auto fail = [](const char* what) { throw FrameError(what); };
    if (std::abs(pair.v1.squaredNorm() - 1.0) > tol || std::abs(pair.v2.squaredNorm() - 1.0) > tol)
        fail("tangent vectors are not unit length");
    if (std::abs(pair.v1.dot(pair.v2)) > tol) fail("tangent vectors are not orthogonal");
    for (const RVec* v : {&pair.v1, &pair.v2})
        if (std::abs(v->dot(p)) > tol * pn || std::abs(v->dot(ip)) > tol * pn)
            fail("tangent vector is not horizontal");
}

/// Orthonormalizes (v1 first) two spanning vectors of a horizontal plane.
inline TangentPair make_tangent_pair(const ReducedPoint& base, const RVec& a, const RVec& b,
                                     double tol = kFrameTolerance) {
    if (a.size() != base.coords().size() || b.size() != base.coords().size())
        throw FrameError("tangent vectors do not match the point dimension");
    const double an = a.norm();
    if (an == 0.0) throw FrameError("first spanning vector is zero");
    RVec v1 = a / an;
    RVec v2 = b - v1.dot(b) * v1;
    const double bn = v2.norm();
    if (bn < 1e-12 * std::max(1.0, b.norm())) throw FrameError("spanning vectors are parallel");
    v2 /= bn;
    TangentPair pair{base, std::move(v1), std::move(v2)};
    validate(pair, tol);
    return pair;
}

/// Angles (phi, theta) on the real 2-sphere p = (cos phi cos theta, cos phi sin theta, sin phi)
/// covering the collinear shapes of four bodies.
struct CollinearChart {
    double phi = 0.0;
    double theta = 0.0;
};

inline const ComEmbedding& four_body_embedding() {
    static const ComEmbedding emb(4);
    return emb;
}

inline RVec collinear_coords(const CollinearChart& c) {
    RVec x = RVec::Zero(6);
    x[0] = std::cos(c.phi) * std::cos(c.theta);
    x[2] = std::cos(c.phi) * std::sin(c.theta);
    x[4] = std::sin(c.phi);
    return x;
}

/// Throws CollisionError when L p(phi, theta) has coincident bodies.
inline ReducedPoint collinear_point(const CollinearChart& c) {
    ReducedPoint p(collinear_coords(c));
    require_collision_free(four_body_embedding().embed(p));
    return p;
}

/// v1 = i (sin phi cos theta, sin phi sin theta, -cos phi), v2 = i (-sin theta, cos theta, 0),
/// spanning i T_p RP^2.
inline TangentPair normal_plane_frame(const CollinearChart& c) {
    ReducedPoint p = collinear_point(c);
    RVec v1 = RVec::Zero(6), v2 = RVec::Zero(6);
    v1[1] = std::sin(c.phi) * std::cos(c.theta);
    v1[3] = std::sin(c.phi) * std::sin(c.theta);
    v1[5] = -std::cos(c.phi);
    v2[1] = -std::sin(c.theta);
    v2[3] = std::cos(c.theta);
    return TangentPair{std::move(p), std::move(v1), std::move(v2)};
}

/// Real counterparts of the normal frame, spanning T_p RP^2.
inline TangentPair tangent_plane_frame(const CollinearChart& c) {
    ReducedPoint p = collinear_point(c);
    RVec a = RVec::Zero(6), b = RVec::Zero(6);
    a[0] = std::sin(c.phi) * std::cos(c.theta);
    a[2] = std::sin(c.phi) * std::sin(c.theta);
    a[4] = -std::cos(c.phi);
    b[0] = -std::sin(c.theta);
    b[2] = std::cos(c.theta);
    return make_tangent_pair(p, a, b);
}

} // namespace jmcurv
