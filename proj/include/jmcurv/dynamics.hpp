#pragma once

// Newton's equations for the strong-force potential and the geodesics of the
// conformal metric U_L ds^2, both by fixed-step classical RK4.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jmcurv/error.hpp"
#include "jmcurv/nbody.hpp"
#include "jmcurv/realified.hpp"
#include "jmcurv/shape_space.hpp"

namespace jmcurv::dynamics {

inline constexpr double kDefaultStep = 1e-4;
/// Integration stops once the closest pair is within this multiple of the collision tolerance.
inline constexpr double kStopFactor = 10.0;
/// ... or once one step moves a body by more than this fraction of the closest-pair distance,
/// since a fixed step can otherwise jump straight through a collision.
inline constexpr double kMaxStepFraction = 0.02;

struct PhaseState {
    Configuration config;
    std::vector<Complex> velocities;
};

struct PhaseDerivative {
    std::vector<Complex> position_rate;
    std::vector<Complex> velocity_rate;
};

struct Monitors {
    double t = 0.0;
    double energy = 0.0;            ///< H = T + V with V = -U
    double angular_momentum = 0.0;  ///< J = sum m (q x qdot), about the center of mass
    double inertia = 0.0;           ///< I
    double inertia_rate = 0.0;      ///< dI/dt
    double virial_residual = std::numeric_limits<double>::quiet_NaN();  ///< second difference of I minus 4H
};

inline double kinetic_energy(const PhaseState& s) {
    double t = 0.0;
    for (std::size_t k = 0; k < s.velocities.size(); ++k) t += 0.5 * s.config.masses()[k] * std::norm(s.velocities[k]);
    return t;
}

inline Monitors monitors(const PhaseState& s, double t = 0.0) {
    const auto& q = s.config.positions();
    const auto& m = s.config.masses();
    const Complex qc = center_of_mass(s.config);
    Complex vc{0.0, 0.0};
    double total = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        vc += m[k] * s.velocities[k];
        total += m[k];
    }
    vc /= total;

    Monitors out;
    out.t = t;
    out.energy = kinetic_energy(s) - potential(s.config);
    for (std::size_t k = 0; k < q.size(); ++k) {
        const Complex cross = std::conj(q[k] - qc) * (s.velocities[k] - vc);
        out.angular_momentum += m[k] * cross.imag();
        out.inertia_rate += 2.0 * m[k] * cross.real();
    }
    out.inertia = moment_of_inertia(s.config);
    return out;
}

/// Positions move with the velocities; accelerations are grad U / m.
inline PhaseDerivative newton_rhs(const PhaseState& s) {
    if (s.velocities.size() != s.config.size()) throw std::invalid_argument("velocity count mismatch");
    const std::vector<Complex> grad = complexify(potential_gradient(s.config));
    PhaseDerivative d;
    d.position_rate = s.velocities;
    d.velocity_rate.resize(grad.size());
    for (std::size_t k = 0; k < grad.size(); ++k) d.velocity_rate[k] = grad[k] / s.config.masses()[k];
    return d;
}

struct NewtonTrajectory {
    std::vector<PhaseState> states;
    std::vector<Monitors> monitors;
    bool truncated = false;
};

namespace detail {

inline PhaseState advance(const PhaseState& s, const PhaseDerivative& d, double h) {
    std::vector<Complex> q = s.config.positions(), v = s.velocities;
    for (std::size_t k = 0; k < q.size(); ++k) {
        q[k] += h * d.position_rate[k];
        v[k] += h * d.velocity_rate[k];
    }
    return PhaseState{Configuration(std::move(q), s.config.masses()), std::move(v)};
}

inline PhaseState rk4_step(const PhaseState& s, double dt) {
    const PhaseDerivative k1 = newton_rhs(s);
    const PhaseDerivative k2 = newton_rhs(advance(s, k1, dt / 2));
    const PhaseDerivative k3 = newton_rhs(advance(s, k2, dt / 2));
    const PhaseDerivative k4 = newton_rhs(advance(s, k3, dt));
    std::vector<Complex> q = s.config.positions(), v = s.velocities;
    for (std::size_t k = 0; k < q.size(); ++k) {
        q[k] += dt / 6 * (k1.position_rate[k] + 2.0 * k2.position_rate[k] + 2.0 * k3.position_rate[k] + k4.position_rate[k]);
        v[k] += dt / 6 * (k1.velocity_rate[k] + 2.0 * k2.velocity_rate[k] + 2.0 * k3.velocity_rate[k] + k4.velocity_rate[k]);
    }
    return PhaseState{Configuration(std::move(q), s.config.masses()), std::move(v)};
}

inline bool near_collision(const Configuration& c) {
    return !(closest_pair(c).distance >= kStopFactor * collision_threshold(c));
}

inline bool near_collision(const Configuration& prev, const Configuration& next) {
    if (near_collision(next)) return true;
    const double d = std::min(closest_pair(prev).distance, closest_pair(next).distance);
    double move = 0.0;
    for (std::size_t k = 0; k < prev.size(); ++k)
        move = std::max(move, std::abs(next.positions()[k] - prev.positions()[k]));
    return !(move <= kMaxStepFraction * d);
}

inline std::size_t step_count(double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end >= 0.0)) throw std::invalid_argument("need dt > 0 and t_end >= 0");
    return static_cast<std::size_t>(std::llround(t_end / dt));
}

} // namespace detail

/// Fixed-step RK4 with a monitor record per sample. The virial residual is the
/// centered second difference of I minus 4H (empty at the two ends).
inline NewtonTrajectory integrate_newton(const PhaseState& initial, double t_end, double dt = kDefaultStep) {
    const std::size_t steps = detail::step_count(t_end, dt);
    require_collision_free(initial.config, kStopFactor);

    NewtonTrajectory traj;
    traj.states.reserve(steps + 1);
    traj.states.push_back(initial);
    for (std::size_t k = 0; k < steps; ++k) {
        try {
            PhaseState next = detail::rk4_step(traj.states.back(), dt);
            if (detail::near_collision(traj.states.back().config, next.config)) {
                traj.truncated = true;
                break;
            }
            traj.states.push_back(std::move(next));
        } catch (const CollisionError&) {
            traj.truncated = true;
            break;
        }
    }
    traj.monitors.reserve(traj.states.size());
    for (std::size_t k = 0; k < traj.states.size(); ++k)
        traj.monitors.push_back(monitors(traj.states[k], static_cast<double>(k) * dt));
    for (std::size_t k = 1; k + 1 < traj.monitors.size(); ++k) {
        const double ddi = (traj.monitors[k + 1].inertia - 2 * traj.monitors[k].inertia + traj.monitors[k - 1].inertia) / (dt * dt);
        traj.monitors[k].virial_residual = ddi - 4.0 * traj.monitors[k].energy;
    }
    return traj;
}

/// Point and velocity in C^{n-1}, realified.
struct GeodesicState {
    RVec x;
    RVec v;
};

struct GeodesicTrajectory {
    std::vector<double> times;
    std::vector<GeodesicState> states;
    std::vector<double> jm_speed;              ///< U_L |v|^2
    std::vector<double> horizontal_residual;   ///< max(|<v,x>|, |<v,ix>|) / (|v||x|)
    bool truncated = false;
};

/// Geodesic acceleration of e^{2u} delta with u = log(U_L)/2:
/// a = -2 (du . v) v + |v|^2 grad u.
inline RVec geodesic_acceleration(const GeodesicState& s, const ComEmbedding& emb) {
    const Configuration c = emb.embed(s.x);
    const double ul = potential(c);
    const RVec grad_u = emb.pullback(potential_gradient(c)) / (2.0 * ul);
    return -2.0 * grad_u.dot(s.v) * s.v + s.v.squaredNorm() * grad_u;
}

inline GeodesicTrajectory integrate_jm_geodesic(const RVec& x0, const RVec& v0, double t_end,
                                                double dt = kDefaultStep) {
    if (x0.size() != v0.size() || x0.size() < 4 || x0.size() % 2 != 0)
        throw std::invalid_argument("geodesic initial data has wrong dimension");
    if (v0.norm() == 0.0) throw std::invalid_argument("geodesic initial velocity is zero");
    const ComEmbedding emb(static_cast<std::size_t>(x0.size() / 2) + 1);
    require_collision_free(emb.embed(x0), kStopFactor);
    const std::size_t steps = detail::step_count(t_end, dt);

    auto record = [&](GeodesicTrajectory& tr, GeodesicState s, double t) {
        const double ul = restricted_potential(s.x, emb);
        const double scale = s.v.norm() * s.x.norm();
        tr.jm_speed.push_back(ul * s.v.squaredNorm());
        tr.horizontal_residual.push_back(
            std::max(std::abs(s.v.dot(s.x)), std::abs(s.v.dot(times_i(s.x)))) / scale);
        tr.times.push_back(t);
        tr.states.push_back(std::move(s));
    };

    GeodesicTrajectory traj;
    record(traj, GeodesicState{x0, v0}, 0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        const GeodesicState& s = traj.states.back();
        try {
            const RVec a1 = geodesic_acceleration(s, emb);
            const GeodesicState s2{s.x + dt / 2 * s.v, s.v + dt / 2 * a1};
            const RVec a2 = geodesic_acceleration(s2, emb);
            const GeodesicState s3{s.x + dt / 2 * s2.v, s.v + dt / 2 * a2};
            const RVec a3 = geodesic_acceleration(s3, emb);
            const GeodesicState s4{s.x + dt * s3.v, s.v + dt * a3};
            const RVec a4 = geodesic_acceleration(s4, emb);
            GeodesicState next{s.x + dt / 6 * (s.v + 2 * s2.v + 2 * s3.v + s4.v),
                               s.v + dt / 6 * (a1 + 2 * a2 + 2 * a3 + a4)};
            if (detail::near_collision(emb.embed(s.x), emb.embed(next.x))) {
                traj.truncated = true;
                break;
            }
            record(traj, std::move(next), static_cast<double>(k + 1) * dt);
        } catch (const CollisionError&) {
            traj.truncated = true;
            break;
        }
    }
    return traj;
}

/// Zero-energy, zero-momentum Newton data over a shape: q = L p and
/// qdot = sqrt(2 U_L(p)) L v for a horizontal unit v, so that T = U.
inline PhaseState matched_newton_state(const ReducedPoint& p, const RVec& v) {
    const ComEmbedding emb(p.bodies());
    const RVec dir = horizontal_project(p, v).normalized();
    const double speed = std::sqrt(2.0 * restricted_potential(p, emb));
    return PhaseState{emb.embed(p), complexify(emb.apply(speed * dir))};
}

/// Embeds the shape of x into the Hermitian projector x x* / |x|^2, flattened to reals.
/// Two representatives of the same shape map to the same point.
inline RVec shape_signature(const RVec& x) {
    const std::vector<Complex> z = complexify(x);
    const double nn = x.squaredNorm();
    const auto m = static_cast<Eigen::Index>(z.size());
    RVec out(2 * m * m);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) {
            const Complex v = z[a] * std::conj(z[b]) / nn;
            out[2 * (a * m + b)] = v.real();
            out[2 * (a * m + b) + 1] = v.imag();
        }
    return out;
}

namespace detail {

inline double point_segment_distance(const RVec& x, const RVec& a, const RVec& b) {
    const RVec ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0.0 ? (x - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (x - a - t * ab).norm();
}

/// max over vertices of a of the distance to polyline b, with early exit once a
/// vertex is known not to raise the running maximum.
inline double directed_hausdorff(const std::vector<RVec>& a, const std::vector<RVec>& b) {
    double cmax = 0.0;
    std::size_t hint = 0;
    const std::size_t segments = b.size() > 1 ? b.size() - 1 : 1;
    for (const RVec& x : a) {
        double cmin = std::numeric_limits<double>::infinity();
        std::size_t best = hint;
        // Scan outward from the previous best segment.
        for (std::size_t off = 0; off < segments; ++off) {
            bool any = false;
            for (int sgn : {1, -1}) {
                if (off == 0 && sgn < 0) continue;
                const long idx = static_cast<long>(hint) + sgn * static_cast<long>(off);
                if (idx < 0 || idx >= static_cast<long>(segments)) continue;
                any = true;
                const auto s = static_cast<std::size_t>(idx);
                const double d = b.size() > 1 ? point_segment_distance(x, b[s], b[s + 1]) : (x - b[0]).norm();
                if (d < cmin) {
                    cmin = d;
                    best = s;
                }
            }
            if (!any || cmin < cmax) break;
        }
        hint = best;
        cmax = std::max(cmax, cmin);
    }
    return cmax;
}

} // namespace detail

/// Symmetric Hausdorff distance between two polylines.
inline double hausdorff_distance(const std::vector<RVec>& a, const std::vector<RVec>& b) {
    return std::max(detail::directed_hausdorff(a, b), detail::directed_hausdorff(b, a));
}

inline std::vector<RVec> shape_trace(const NewtonTrajectory& traj) {
    const ComEmbedding emb(traj.states.front().config.size());
    std::vector<RVec> out;
    out.reserve(traj.states.size());
    for (const PhaseState& s : traj.states) {
        const Complex cm = center_of_mass(s.config);
        std::vector<Complex> q = s.config.positions();
        for (Complex& z : q) z -= cm;
        out.push_back(shape_signature(emb.pullback(realify(q))));
    }
    return out;
}

inline std::vector<RVec> shape_trace(const GeodesicTrajectory& traj) {
    std::vector<RVec> out;
    out.reserve(traj.states.size());
    for (const GeodesicState& s : traj.states) out.push_back(shape_signature(s.x));
    return out;
}

/// JM length sum sqrt(U * sum m |qdot|^2) dt by the trapezoid rule.
inline double jm_length(const NewtonTrajectory& traj, double dt) {
    std::vector<double> speed;
    speed.reserve(traj.states.size());
    for (const PhaseState& s : traj.states) speed.push_back(std::sqrt(potential(s.config) * 2.0 * kinetic_energy(s)));
    double len = 0.0;
    for (std::size_t k = 1; k < speed.size(); ++k) len += 0.5 * (speed[k - 1] + speed[k]) * dt;
    return len;
}

struct TraceComparison {
    NewtonTrajectory newton;
    GeodesicTrajectory geodesic;
    double hausdorff = 0.0;
};

/// Integrates Newton from `initial`, then the JM geodesic from the same point of
/// C^{n-1} and direction for the same JM length with the same number of steps,
/// and compares the two shape traces. Requires unit masses.
inline TraceComparison compare_newton_and_geodesic(const PhaseState& initial, double t_end,
                                                   double dt = kDefaultStep) {
    if (!initial.config.unit_masses())
        throw std::invalid_argument("geodesic comparison needs unit masses");
    TraceComparison out;
    out.newton = integrate_newton(initial, t_end, dt);

    const ComEmbedding emb(initial.config.size());
    const Complex qc = center_of_mass(initial.config);
    Complex vc{0.0, 0.0};
    for (const Complex& v : initial.velocities) vc += v;
    vc /= static_cast<double>(initial.velocities.size());
    std::vector<Complex> q = initial.config.positions(), v = initial.velocities;
    for (Complex& z : q) z -= qc;
    for (Complex& z : v) z -= vc;
    const RVec x0 = emb.pullback(realify(q));
    const RVec v0 = emb.pullback(realify(v));

    const double length = jm_length(out.newton, dt);
    const double speed = std::sqrt(restricted_potential(x0, emb)) * v0.norm();
    const std::size_t steps = out.newton.states.size() - 1;
    if (steps == 0 || speed == 0.0) throw std::invalid_argument("trajectory too short to compare");
    const double t_geo = length / speed;
    out.geodesic = integrate_jm_geodesic(x0, v0, t_geo, t_geo / static_cast<double>(steps));
    out.hausdorff = hausdorff_distance(shape_trace(out.newton), shape_trace(out.geodesic));
    return out;
}

} // namespace jmcurv::dynamics
