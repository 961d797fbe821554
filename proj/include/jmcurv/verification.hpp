#pragma once

// Seeded verification checks. Each check reports the worst measured value over
// its samples against a fixed bound.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "jmcurv/curvature.hpp"
#include "jmcurv/dynamics.hpp"
#include "jmcurv/fd_oracle.hpp"
#include "jmcurv/nbody.hpp"
#include "jmcurv/sampling.hpp"
#include "jmcurv/scan.hpp"
#include "jmcurv/shape_space.hpp"

namespace jmcurv::verify {

enum class Relation { less, less_equal, greater, greater_equal };

struct Check {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    Relation relation = Relation::less;
    bool passed = false;
};

inline Check make_check(std::string name, double measured, Relation rel, double bound) {
    bool ok = false;
    switch (rel) {
    case Relation::less: ok = measured < bound; break;
    case Relation::less_equal: ok = measured <= bound; break;
    case Relation::greater: ok = measured > bound; break;
    case Relation::greater_equal: ok = measured >= bound; break;
    }
    return Check{std::move(name), measured, bound, rel, ok};
}

inline const char* symbol(Relation r) {
    switch (r) {
    case Relation::less: return "<";
    case Relation::less_equal: return "<=";
    case Relation::greater: return ">";
    case Relation::greater_equal: return ">=";
    }
    return "?";
}

inline void print(std::ostream& os, const Check& c) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << "  measured=" << format_number(c.measured) << ' '
       << symbol(c.relation) << ' ' << format_number(c.bound) << '\n';
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline constexpr std::uint64_t kSeed = 20240611;

// ---------------------------------------------------------------- derivatives

inline Check potential_anchors() {
    const Configuration square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const RVec p = collinear_coords({M_PI / 8, M_PI / 2});
    const double err = std::max(rel_err(potential(square), 5.0),
                                rel_err(restricted_potential(p, four_body_embedding()), 20.0));
    return make_check("potential_anchor_values", err, Relation::less, 1e-12);
}

inline Check potential_symmetries(std::uint64_t seed = kSeed, int samples = 100) {
    Sampler s(seed);
    double worst = 0.0;
    for (int t = 0; t < samples; ++t) {
        const Configuration c = random_configuration(s, 3 + static_cast<std::size_t>(t % 4));
        const double u = potential(c);
        const Complex shift{s.uniform(-2, 2), s.uniform(-2, 2)};
        const Complex rot = std::polar(1.0, s.uniform(0, 2 * M_PI));
        std::vector<Complex> moved = c.positions(), turned = c.positions();
        for (Complex& z : moved) z += shift;
        for (Complex& z : turned) z *= rot;
        worst = std::max({worst, rel_err(potential(Configuration(moved)), u),
                          rel_err(potential(Configuration(turned)), u)});
        for (double lambda : {0.5, 2.0, 10.0}) {
            std::vector<Complex> scaled = c.positions();
            for (Complex& z : scaled) z *= lambda;
            worst = std::max(worst, rel_err(potential(Configuration(scaled)) * lambda * lambda, u));
        }
    }
    return make_check("potential_translation_rotation_homogeneity", worst, Relation::less, 1e-12);
}

inline Check gradient_vs_fd(std::uint64_t seed = kSeed, int samples = 100) {
    Sampler s(seed + 1);
    double worst = 0.0;
    for (int t = 0; t < samples; ++t) {
        const Configuration c = random_configuration(s, 3 + static_cast<std::size_t>(t % 4));
        const RVec g = potential_derivatives(c).gradient;
        worst = std::max(worst, (fd::fd_gradient(c) - g).lpNorm<Eigen::Infinity>() / g.lpNorm<Eigen::Infinity>());
    }
    return make_check("gradient_matches_fd", worst, Relation::less, 1e-6);
}

inline Check hessian_vs_fd(std::uint64_t seed = kSeed, int samples = 100) {
    Sampler s(seed + 2);
    double worst = 0.0;
    for (int t = 0; t < samples; ++t) {
        const Configuration c = random_configuration(s, 3 + static_cast<std::size_t>(t % 4));
        const RMat h = potential_derivatives(c).hessian;
        worst = std::max(worst, (fd::fd_hessian(c) - h).lpNorm<Eigen::Infinity>() / h.lpNorm<Eigen::Infinity>());
    }
    return make_check("hessian_matches_fd", worst, Relation::less, 1e-6);
}

inline Check gradient_translation_invariance(std::uint64_t seed = kSeed, int samples = 100) {
    Sampler s(seed + 3);
    double worst = 0.0;
    for (int t = 0; t < samples; ++t) {
        const Configuration c = random_configuration(s, 3 + static_cast<std::size_t>(t % 4));
        const RVec g = potential_derivatives(c).gradient;
        double sx = 0.0, sy = 0.0;
        for (Eigen::Index k = 0; k < g.size(); k += 2) {
            sx += g[k];
            sy += g[k + 1];
        }
        worst = std::max(worst, std::hypot(sx, sy) / g.norm());
    }
    return make_check("gradient_components_sum_to_zero", worst, Relation::less, 1e-12);
}

inline Check euler_identity(std::uint64_t seed = kSeed, int samples = 100) {
    Sampler s(seed + 4);
    double worst = 0.0;
    for (int t = 0; t < samples; ++t) {
        const Configuration c = random_configuration(s, 3 + static_cast<std::size_t>(t % 4));
        const DerivativeBundle d = potential_derivatives(c);
        worst = std::max(worst, std::abs(d.gradient.dot(c.realified()) + 2 * d.value) / d.value);
    }
    return make_check("euler_identity_grad_dot_q_is_minus_2U", worst, Relation::less, 1e-12);
}

inline Check embedding_orthonormal() {
    double worst = 0.0;
    for (std::size_t n = 3; n <= 8; ++n) {
        const RMat b = ComEmbedding(n).basis();
        worst = std::max(worst, (b.transpose() * b - RMat::Identity(b.cols(), b.cols())).lpNorm<Eigen::Infinity>());
        worst = std::max(worst, b.colwise().sum().lpNorm<Eigen::Infinity>());
    }
    RMat l(4, 3);
    const double r = 1.0 / std::sqrt(2.0);
    l << 0.5, r, 0, 0.5, -r, 0, -0.5, 0, r, -0.5, 0, -r;
    worst = std::max(worst, (ComEmbedding(4).basis() - l).lpNorm<Eigen::Infinity>());
    return make_check("com_embedding_orthonormal_zero_sum", worst, Relation::less, 1e-12);
}

inline std::vector<Check> suite_derivatives() {
    return {potential_anchors(),     potential_symmetries(), gradient_vs_fd(), hessian_vs_fd(),
            gradient_translation_invariance(), euler_identity(), embedding_orthonormal()};
}

// ---------------------------------------------------------------- curvature

/// The five anchor quantities at phi = pi/8 on the collinear circle, normal plane.
inline std::vector<Check> anchor_values() {
    const CurvatureBreakdown b = sectional_curvature(normal_plane_frame({M_PI / 8, M_PI / 2}));
    const double cube = b.u_l * b.u_l * b.u_l;
    return {
        make_check("anchor_u_l_is_20", rel_err(b.u_l, 20.0), Relation::less, 1e-10),
        make_check("anchor_grad_norm_is_976", rel_err(-b.term_grad_norm, 976.0), Relation::less, 1e-10),
        make_check("anchor_u_sum_alpha_rho4_is_3920", rel_err(b.term_laplacian, 3920.0), Relation::less, 1e-10),
        make_check("anchor_u3k_is_2944", rel_err(cube * b.k, 2944.0), Relation::less, 1e-10),
        make_check("anchor_k_is_0.368", rel_err(b.k, 0.368), Relation::less, 1e-10),
    };
}

inline Check anchor_fd_confirmation() {
    const double k = fd::fd_sectional(normal_plane_frame({M_PI / 8, M_PI / 2}));
    return make_check("anchor_k_confirmed_by_fd_oracle", rel_err(k, 0.368), Relation::less, 1e-3);
}

inline ScanOptions theorem_scan_options(unsigned jobs = 1) {
    ScanOptions o;
    o.theta = M_PI / 2;
    o.phi_min = 0.01;
    o.phi_max = M_PI / 4 - 0.01;
    o.samples = 512;
    o.plane = PlaneKind::normal;
    o.jobs = jobs;
    return o;
}

inline std::vector<Check> theorem_scan() {
    const std::vector<ScanRecord> recs = scan_collinear(theorem_scan_options());
    double min_k = std::numeric_limits<double>::infinity();
    double min_gap = std::numeric_limits<double>::infinity();
    double collisions = 0;
    for (const ScanRecord& r : recs) {
        if (r.collision || !r.lhs || !r.rhs) {
            ++collisions;
            continue;
        }
        min_k = std::min(min_k, r.curvature.k);
        min_gap = std::min(min_gap, *r.rhs - *r.lhs);
    }
    return {make_check("theorem_scan_missing_records", collisions, Relation::less_equal, 0.0),
            make_check("theorem_scan_min_k_positive", min_k, Relation::greater, 0.0),
            make_check("theorem_scan_min_rhs_minus_lhs_positive", min_gap, Relation::greater, 0.0)};
}

struct OracleSample {
    TangentPair pair;
    double k = 0.0;
};

inline std::vector<OracleSample> oracle_samples(std::size_t n, int count, std::uint64_t seed) {
    Sampler s(seed);
    std::vector<OracleSample> out;
    const ComEmbedding emb(n);
    for (int t = 0; t < count; ++t) {
        const ReducedPoint p = random_reduced_point(s, n);
        TangentPair pair = random_horizontal_pair(s, p);
        const double k = sectional_curvature(pair, emb).k;
        out.push_back({std::move(pair), k});
    }
    return out;
}

inline Check oracle_equivalence(std::size_t n, int count, std::uint64_t seed = kSeed) {
    double worst = 0.0;
    for (const OracleSample& o : oracle_samples(n, count, seed + 10 + n))
        worst = std::max(worst, std::abs(fd::fd_sectional(o.pair) - o.k) / std::max(1.0, std::abs(o.k)));
    return make_check("oracle_equivalence_n" + std::to_string(n), worst, Relation::less, 1e-3);
}

/// Smallest ratio err(h)/err(h/2) at five reference planes.
inline Check step_halving() {
    std::vector<TangentPair> refs{normal_plane_frame({M_PI / 8, M_PI / 2})};
    for (const OracleSample& o : oracle_samples(4, 2, kSeed + 20)) refs.push_back(o.pair);
    for (const OracleSample& o : oracle_samples(3, 2, kSeed + 21)) refs.push_back(o.pair);
    double worst = std::numeric_limits<double>::infinity();
    for (const TangentPair& pair : refs) {
        const double k = sectional_curvature(pair).k;
        const double e1 = std::abs(fd::fd_sectional(pair, fd::kMetricStep) - k);
        const double e2 = std::abs(fd::fd_sectional(pair, fd::kMetricStep / 2) - k);
        worst = std::min(worst, e1 / e2);
    }
    return make_check("fd_step_halving_ratio", worst, Relation::greater_equal, 3.0);
}

inline std::vector<double> sampled_circle_angles(int count, std::uint64_t seed) {
    Sampler s(seed);
    std::vector<double> out;
    while (static_cast<int>(out.size()) < count) {
        const double phi = s.uniform(0.01, M_PI / 4 - 0.01);
        out.push_back(phi);
    }
    return out;
}

inline Check collinear_specialization(std::uint64_t seed = kSeed) {
    double worst = 0.0;
    for (double phi : sampled_circle_angles(50, seed + 30)) {
        const double generic = sectional_curvature(normal_plane_frame({phi, M_PI / 2})).k;
        worst = std::max(worst, rel_err(collinear_normal_curvature(phi).k, generic));
    }
    return make_check("collinear_path_matches_generic_path", worst, Relation::less, 1e-10);
}

inline Check inequality_bridge(std::uint64_t seed = kSeed) {
    double worst = 0.0;
    for (double phi : sampled_circle_angles(50, seed + 31)) {
        const CurvatureBreakdown b = sectional_curvature(normal_plane_frame({phi, M_PI / 2}));
        const InequalitySides s = inequality_sides(phi);
        const double lhs3 = b.u_l * b.u_l * b.u_l * b.k;
        double e = rel_err(lhs3, s.rhs - s.lhs);
        if ((b.k > 0) != (s.rhs > s.lhs)) e = std::numeric_limits<double>::infinity();
        worst = std::max(worst, e);
    }
    return make_check("u3k_equals_rhs_minus_lhs", worst, Relation::less, 1e-9);
}

inline Check inequality_rearrangements(std::uint64_t seed = kSeed) {
    double worst = 0.0;
    for (double phi : sampled_circle_angles(50, seed + 32)) {
        const InequalitySides s = inequality_sides(phi);
        worst = std::max({worst, rel_err(s.lhs_paired, s.lhs), rel_err(s.lhs_expanded, s.lhs),
                          rel_err(s.rhs_expanded, s.rhs)});
    }
    return make_check("inequality_rearranged_forms_agree", worst, Relation::less, 1e-9);
}

inline Check rho_alpha_relations(std::uint64_t seed = kSeed) {
    double worst = 0.0;
    for (double phi : sampled_circle_angles(50, seed + 33)) {
        const RhoAlphaTable t = collinear_rho_alpha(phi);
        const double c = std::cos(phi), sn = std::sin(phi), r2 = std::sqrt(2.0);
        worst = std::max({worst, rel_err(t.r(1, 2), 1 / (r2 * c)), rel_err(t.r(3, 4), 1 / (r2 * sn)),
                          rel_err(t.r(1, 3), r2 / (c - sn)), rel_err(t.r(1, 4), r2 / (c + sn)),
                          rel_err(t.r(2, 4), -t.r(1, 3)), rel_err(t.r(2, 3), -t.r(1, 4)),
                          std::abs(t.a(1, 2) * t.r(3, 4) * t.r(3, 4) - 1), std::abs(t.a(3, 4) * t.r(1, 2) * t.r(1, 2) - 1),
                          rel_err(t.a(1, 3), 1 / (t.r(1, 4) * t.r(1, 4)) + 1), rel_err(t.a(2, 4), t.a(1, 3)),
                          rel_err(t.a(1, 4), 1 / (t.r(1, 3) * t.r(1, 3)) + 1), rel_err(t.a(2, 3), t.a(1, 4))});
    }
    return make_check("rho_alpha_relations", worst, Relation::less, 1e-12);
}

inline Check plane_rotation_invariance(std::uint64_t seed = kSeed) {
    double worst = 0.0;
    for (std::size_t n : {3u, 4u, 5u})
        for (const OracleSample& o : oracle_samples(n, 10, seed + 40 + n))
            for (double a : {M_PI / 7, M_PI / 3, 1.0}) {
                TangentPair r{o.pair.base, std::cos(a) * o.pair.v1 + std::sin(a) * o.pair.v2,
                              -std::sin(a) * o.pair.v1 + std::cos(a) * o.pair.v2};
                worst = std::max(worst, std::abs(sectional_curvature(r).k - o.k) / std::max(1.0, std::abs(o.k)));
            }
    return make_check("k_depends_only_on_plane", worst, Relation::less, 1e-10);
}

inline Check isometry_invariance(std::uint64_t seed = kSeed) {
    double worst = 0.0;
    for (std::size_t n : {3u, 4u})
        for (const OracleSample& o : oracle_samples(n, 10, seed + 50 + n))
            for (double lambda : {0.5, 3.0})
                for (double th : {M_PI / 5, 2.0}) {
                    const Complex rot = std::polar(1.0, th);
                    TangentPair moved{ReducedPoint(times(lambda * rot, o.pair.base.coords())), times(rot, o.pair.v1),
                                      times(rot, o.pair.v2)};
                    worst = std::max(worst, std::abs(sectional_curvature(moved).k - o.k) / std::max(1.0, std::abs(o.k)));
                }
    return make_check("k_invariant_under_rotation_and_scaling", worst, Relation::less, 1e-10);
}

/// Relabels bodies: permuted positions q'_i = q_{perm[i]} and the matching tangent vectors.
inline Check permutation_equivariance(std::uint64_t seed = kSeed) {
    Sampler s(seed + 60);
    const ComEmbedding emb(4);
    const RMat& l = emb.realified();
    double worst = 0.0;
    for (const OracleSample& o : oracle_samples(4, 5, seed + 61)) {
        std::array<int, 4> perm{0, 1, 2, 3};
        for (int i = 3; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[s.next() % static_cast<std::uint64_t>(i + 1)]);
        auto permute = [&](const RVec& x) {
            const RVec q = l * x;
            RVec out(q.size());
            for (int i = 0; i < 4; ++i) out.segment<2>(2 * i) = q.segment<2>(2 * perm[static_cast<std::size_t>(i)]);
            return RVec(l.transpose() * out);
        };
        TangentPair moved{ReducedPoint(permute(o.pair.base.coords())), permute(o.pair.v1), permute(o.pair.v2)};
        worst = std::max(worst, std::abs(sectional_curvature(moved).k - o.k) / std::max(1.0, std::abs(o.k)));
    }
    return make_check("k_equivariant_under_body_relabeling", worst, Relation::less, 1e-10);
}

inline std::vector<Check> suite_curvature() {
    std::vector<Check> out = anchor_values();
    out.push_back(anchor_fd_confirmation());
    for (Check& c : theorem_scan()) out.push_back(std::move(c));
    out.push_back(oracle_equivalence(4, 32));
    out.push_back(oracle_equivalence(3, 32));
    out.push_back(step_halving());
    out.push_back(collinear_specialization());
    out.push_back(inequality_bridge());
    out.push_back(inequality_rearrangements());
    out.push_back(rho_alpha_relations());
    out.push_back(plane_rotation_invariance());
    out.push_back(isometry_invariance());
    out.push_back(permutation_equivariance());
    return out;
}

// ---------------------------------------------------------------- pants

/// Reduced point of the equilateral triangle with vertices at the cube roots of unity.
inline ReducedPoint equilateral_point() {
    std::vector<Complex> q;
    for (int k = 0; k < 3; ++k) q.push_back(std::polar(1.0, 2 * M_PI * k / 3));
    return ReducedPoint(ComEmbedding(3).pullback(realify(q)));
}

inline std::vector<Check> suite_pants(std::uint64_t seed = kSeed) {
    Sampler s(seed + 70);
    double max_k = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < 500; ++t) {
        RVec p = s.normal_vector(4);
        const ComEmbedding emb(3);
        if (closest_pair(emb.embed(p)).distance < 1e-6 * p.norm()) {
            --t;
            continue;
        }
        max_k = std::max(max_k, pants_curvature(ReducedPoint(p)));
    }
    const ReducedPoint collinear(ComEmbedding(3).pullback(realify({{-1.0, 0}, {0.2, 0}, {0.8, 0}})));
    return {make_check("pants_max_k_over_500_shapes", max_k, Relation::less_equal, 1e-9),
            make_check("pants_equilateral_abs_k", std::abs(pants_curvature(equilateral_point())), Relation::less, 1e-6),
            make_check("pants_collinear_k_negative", pants_curvature(collinear), Relation::less, 0.0)};
}

// ---------------------------------------------------------------- appendix

inline Check gradient_norm_identity(std::uint64_t seed = kSeed) {
    Sampler s(seed + 80);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(t % 3);
        const ComEmbedding emb(n);
        const ReducedPoint p = random_reduced_point(s, n);
        const RestrictedDerivatives d = restricted_derivatives(p, emb);
        // random orthonormal basis of C^{n-1}
        const Eigen::Index dim = p.coords().size();
        RMat a(dim, dim);
        for (Eigen::Index c = 0; c < dim; ++c) a.col(c) = s.normal_vector(dim);
        const RMat basis = Eigen::HouseholderQR<RMat>(a).householderQ();
        double sum = 0.0;
        for (Eigen::Index c = 0; c < dim; ++c) sum += std::pow(d.first(basis.col(c)), 2);
        worst = std::max(worst, rel_err(sum, d.ambient_gradient.squaredNorm()));
    }
    return make_check("gradient_norm_equals_sum_of_directional_squares", worst, Relation::less, 1e-10);
}

inline std::vector<Check> bracket_checks(std::uint64_t seed = kSeed) {
    double max_dot_e = 0.0, twist_err = 0.0, closure_err = 0.0;
    std::vector<TangentPair> pairs;
    for (const OracleSample& o : oracle_samples(4, 14, seed + 90)) pairs.push_back(o.pair);
    for (const OracleSample& o : oracle_samples(3, 6, seed + 91)) pairs.push_back(o.pair);
    for (const TangentPair& pair : pairs) {
        const fd::BracketVertical b = fd::fd_bracket_vertical(pair);
        max_dot_e = std::max(max_dot_e, std::abs(b.dot_e));
        twist_err = std::max(twist_err, rel_err(b.dot_ie, 2 * b.field_twist));
        const CurvatureBreakdown c = sectional_curvature(pair);
        closure_err = std::max(closure_err, rel_err(0.75 * b.jm_norm_sq, c.term_oneill / std::pow(c.u_l, 3)));
    }
    return {make_check("bracket_vertical_dot_euler_is_zero", max_dot_e, Relation::less, 1e-6),
            make_check("bracket_dot_i_euler_is_twice_h1_dot_ih2", twist_err, Relation::less, 1e-5),
            make_check("bracket_vertical_norm_matches_oneill_term", closure_err, Relation::less, 1e-5)};
}

inline Check oneill_decomposition(std::uint64_t seed = kSeed) {
    double worst = 0.0;
    for (std::size_t n : {3u, 4u})
        for (const OracleSample& o : oracle_samples(n, 10, seed + 100 + n)) {
            const double u = restricted_potential(o.pair.base, ComEmbedding(n));
            const double recomposed = kn_block(o.pair) + oneill_term(o.pair) / (u * u * u);
            worst = std::max(worst, std::abs(recomposed - o.k) / std::max(1.0, std::abs(o.k)));
        }
    return make_check("k_equals_conformal_block_plus_oneill", worst, Relation::less, 1e-12);
}

inline Check ambient_conformal_oracle(std::uint64_t seed = kSeed) {
    double worst = 0.0;
    for (const OracleSample& o : oracle_samples(4, 10, seed + 110)) {
        const double kn = kn_block(o.pair);
        worst = std::max(worst, std::abs(fd::fd_ambient_sectional(o.pair) - kn) / std::max(1.0, std::abs(kn)));
    }
    return make_check("conformal_block_matches_ambient_fd", worst, Relation::less, 1e-3);
}

inline Check fubini_study_factorization(std::uint64_t seed = kSeed) {
    Sampler s(seed + 120);
    double worst = 0.0;
    for (std::size_t n : {3u, 4u})
        for (int t = 0; t < 3; ++t) {
            const fd::ChartMetricSampler sampler(random_reduced_point(s, n));
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) {
                    RVec u = RVec::Zero(sampler.dim());
                    u[0] = 0.015 * (i - 2);
                    u[1] = 0.015 * (j - 2);
                    for (int a = 2; a < sampler.dim(); ++a) u[a] = 0.005 * (i - j) / a;
                    const RMat g = sampler(u);
                    const RMat fs = fd::fs_chart_metric(sampler, u);
                    worst = std::max(worst, (g - fs).lpNorm<Eigen::Infinity>() / g.lpNorm<Eigen::Infinity>());
                }
        }
    return make_check("chart_metric_is_potential_times_fubini_study", worst, Relation::less, 1e-8);
}

/// Collinear charts off the collision set, over the whole (phi, theta) torus.
inline std::vector<CollinearChart> sampled_charts(int count, std::uint64_t seed) {
    Sampler s(seed);
    std::vector<CollinearChart> out;
    while (static_cast<int>(out.size()) < count) {
        const CollinearChart c{s.uniform(-M_PI / 2, M_PI / 2), s.uniform(0, 2 * M_PI)};
        if (closest_pair(four_body_embedding().embed(collinear_coords(c))).distance >= 0.05) out.push_back(c);
    }
    return out;
}

/// Vanishing first partials and twist, and the y-block Hessian entries, on collinear charts.
inline std::vector<Check> collinear_term_checks(std::uint64_t seed = kSeed) {
    const ComEmbedding& emb = four_body_embedding();
    double first = 0.0, twist = 0.0, hess = 0.0, second = 0.0;
    for (const CollinearChart& c : sampled_charts(50, seed + 130)) {
        const TangentPair pair = normal_plane_frame(c);
        const RestrictedDerivatives d = restricted_derivatives(pair.base, emb);
        first = std::max({first, std::abs(d.first(pair.v1)), std::abs(d.first(pair.v2))});
        twist = std::max(twist, std::abs(pair.v1.dot(times_i(pair.v2))));

        const Configuration q = emb.embed(pair.base);
        const RMat h = potential_derivatives(q).hessian;
        const auto& x = q.positions();
        for (int j = 0; j < 4; ++j) {
            double diag = 0.0;
            for (int k = 0; k < 4; ++k) {
                if (j == k) continue;
                const double rho4 = std::pow(1.0 / (x[j].real() - x[k].real()), 4);
                diag += rho4;
                hess = std::max(hess, rel_err(h(2 * j + 1, 2 * k + 1), 2 * rho4));
            }
            hess = std::max(hess, rel_err(h(2 * j + 1, 2 * j + 1), -2 * diag));
        }
        for (const RVec* v : {&pair.v1, &pair.v2}) {
            const RVec w = emb.apply(*v);
            double expected = 0.0;
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < j; ++k)
                    expected += -2 * std::pow(1.0 / (x[j].real() - x[k].real()), 4) * std::pow(w[2 * j + 1] - w[2 * k + 1], 2);
            second = std::max(second, rel_err(d.second(*v), expected));
        }
    }
    return {make_check("collinear_first_partials_vanish", first, Relation::less, 1e-12),
            make_check("collinear_normal_frame_twist_vanishes", twist, Relation::less, 1e-12),
            make_check("collinear_hessian_y_block_is_2rho4", hess, Relation::less, 1e-10),
            make_check("collinear_second_partials_formula", second, Relation::less, 1e-10)};
}

inline std::vector<Check> suite_appendix() {
    std::vector<Check> out{gradient_norm_identity()};
    for (Check& c : bracket_checks()) out.push_back(std::move(c));
    out.push_back(oneill_decomposition());
    out.push_back(ambient_conformal_oracle());
    out.push_back(fubini_study_factorization());
    for (Check& c : collinear_term_checks()) out.push_back(std::move(c));
    return out;
}

// ---------------------------------------------------------------- dynamics

/// Zero-energy, zero-momentum data over four equally spaced collinear bodies at |p| = 4.
inline dynamics::PhaseState reference_matched_state() {
    const ComEmbedding emb(4);
    RVec p = emb.pullback(realify({{-1.5, 0}, {-0.5, 0}, {0.5, 0}, {1.5, 0}}));
    p *= 4.0 / p.norm();
    RVec v(6);
    v << 0.3, 0.5, -0.2, 0.4, 0.1, -0.6;
    return dynamics::matched_newton_state(ReducedPoint(p), v);
}

/// Same shape with a boosted, rotating velocity field: H and J nonzero.
inline dynamics::PhaseState reference_generic_state() {
    dynamics::PhaseState s = reference_matched_state();
    for (std::size_t k = 0; k < s.velocities.size(); ++k)
        s.velocities[k] = 0.7 * s.velocities[k] + Complex{0.0, 0.05} * s.config.positions()[k];
    return s;
}

inline std::vector<Check> suite_dynamics(double t_end = 1.0, double dt = dynamics::kDefaultStep) {
    using namespace dynamics;
    const PhaseState init = reference_matched_state();
    const TraceComparison cmp = compare_newton_and_geodesic(init, t_end, dt);
    const Monitors& m0 = cmp.newton.monitors.front();
    double di = 0.0, dh = 0.0, dj = 0.0, vir = 0.0;
    for (std::size_t k = 0; k < cmp.newton.monitors.size(); ++k) {
        const Monitors& m = cmp.newton.monitors[k];
        di = std::max(di, std::abs(m.inertia - m0.inertia) / m0.inertia);
        dh = std::max(dh, std::abs(m.energy - m0.energy));
        dj = std::max(dj, std::abs(m.angular_momentum - m0.angular_momentum));
        if (!std::isnan(m.virial_residual))
            vir = std::max(vir, std::abs(m.virial_residual) / std::max(1.0, potential(cmp.newton.states[k].config)));
    }
    double speed = 0.0, horiz = 0.0;
    for (std::size_t k = 0; k < cmp.geodesic.jm_speed.size(); ++k) {
        speed = std::max(speed, rel_err(cmp.geodesic.jm_speed[k], cmp.geodesic.jm_speed.front()));
        horiz = std::max(horiz, cmp.geodesic.horizontal_residual[k]);
    }

    const PhaseState generic = reference_generic_state();
    const NewtonTrajectory g = integrate_newton(generic, t_end, dt);
    double gh = 0.0, gj = 0.0;
    for (const Monitors& m : g.monitors) {
        gh = std::max(gh, std::abs(m.energy - g.monitors.front().energy));
        gj = std::max(gj, std::abs(m.angular_momentum - g.monitors.front().angular_momentum));
    }

    // forward, flip velocities, forward again, flip back
    PhaseState back = g.states.back();
    for (Complex& v : back.velocities) v = -v;
    const NewtonTrajectory r = integrate_newton(back, t_end, dt);
    const RVec start = realify(generic.config.positions());
    const RVec end = realify(r.states.back().config.positions());
    RVec v_start = realify(generic.velocities), v_end = -realify(r.states.back().velocities);
    const double rev = std::max((end - start).norm() / start.norm(), (v_end - v_start).norm() / v_start.norm());

    const double trunc = (cmp.newton.truncated || cmp.geodesic.truncated || g.truncated || r.truncated) ? 1.0 : 0.0;
    return {make_check("dynamics_no_truncation", trunc, Relation::less_equal, 0.0),
            make_check("zero_energy_inertia_constant", di, Relation::less, 1e-6),
            make_check("zero_energy_energy_drift", dh, Relation::less, 1e-8),
            make_check("zero_energy_angular_momentum_drift", dj, Relation::less, 1e-8),
            make_check("virial_residual", vir, Relation::less, 1e-5),
            make_check("newton_vs_jm_shape_trace_hausdorff", cmp.hausdorff, Relation::less, 1e-4),
            make_check("jm_geodesic_speed_constant", speed, Relation::less, 1e-6),
            make_check("jm_geodesic_stays_horizontal", horiz, Relation::less, 1e-6),
            make_check("generic_energy_drift", gh, Relation::less, 1e-8),
            make_check("generic_angular_momentum_drift", gj, Relation::less, 1e-8),
            make_check("time_reversibility", rev, Relation::less, 1e-7)};
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"derivatives", "curvature", "appendix", "pants", "dynamics", "all"};
    return names;
}

/// Runs one named suite, or every suite for "all".
inline std::vector<Check> run_suite(const std::string& name) {
    if (name == "derivatives") return suite_derivatives();
    if (name == "curvature") return suite_curvature();
    if (name == "appendix") return suite_appendix();
    if (name == "pants") return suite_pants();
    if (name == "dynamics") return suite_dynamics();
    if (name == "all") {
        std::vector<Check> out;
        for (const std::string& s : {"derivatives", "curvature", "appendix", "pants", "dynamics"})
            for (Check& c : run_suite(s)) out.push_back(std::move(c));
        return out;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

} // namespace jmcurv::verify
