#include <gtest/gtest.h>

#include "jmcurv/curvature.hpp"
#include "jmcurv/fd_oracle.hpp"
#include "jmcurv/sampling.hpp"
#include "jmcurv/verification.hpp"

using namespace jmcurv;

namespace {
const CollinearChart kAnchor{M_PI / 8, M_PI / 2};
}

TEST(SectionalCurvature, AnchorAtPiOverEight) {
    const CurvatureBreakdown b = sectional_curvature(normal_plane_frame(kAnchor));
    EXPECT_NEAR(b.u_l, 20.0, 20.0 * 1e-10);
    EXPECT_NEAR(-b.term_grad_norm, 976.0, 976.0 * 1e-10);
    EXPECT_NEAR(b.term_laplacian, 3920.0, 3920.0 * 1e-10);
    EXPECT_NEAR(b.terms_sum(), 2944.0, 2944.0 * 1e-10);
    EXPECT_NEAR(b.k, 0.368, 0.368 * 1e-10);
    EXPECT_LT(std::abs(b.term_first_partials), 1e-9);
    EXPECT_LT(std::abs(b.term_oneill), 1e-9);
}

TEST(SectionalCurvature, AnchorAgreesWithFiniteDifferences) {
    EXPECT_NEAR(fd::fd_sectional(normal_plane_frame(kAnchor)), 0.368, 0.368 * 1e-3);
}

TEST(SectionalCurvature, RotatedScaledRepresentative) {
    const TangentPair nf = normal_plane_frame(kAnchor);
    const Complex c = 2.0 * std::polar(1.0, M_PI / 3);
    const TangentPair moved{ReducedPoint(times(c, nf.base.coords())), times(c / std::abs(c), nf.v1),
                            times(c / std::abs(c), nf.v2)};
    EXPECT_NEAR(sectional_curvature(moved).k, 0.368, 1e-10);
}

TEST(SectionalCurvature, PositiveOnCollinearCircle) {
    for (double phi = 0.02; phi < M_PI / 4 - 0.01; phi += 0.01)
        EXPECT_GT(sectional_curvature(normal_plane_frame({phi, M_PI / 2})).k, 0.0) << "phi = " << phi;
}

TEST(SectionalCurvature, PlaneDependenceOnly) {
    Sampler s(31);
    const ReducedPoint p = random_reduced_point(s, 4);
    const TangentPair pair = random_horizontal_pair(s, p);
    const double k = sectional_curvature(pair).k;
    for (double a : {M_PI / 7, M_PI / 3, 1.0}) {
        const TangentPair rot{p, std::cos(a) * pair.v1 + std::sin(a) * pair.v2, -std::sin(a) * pair.v1 + std::cos(a) * pair.v2};
        EXPECT_NEAR(sectional_curvature(rot).k, k, 1e-10 * std::max(1.0, std::abs(k)));
    }
}

TEST(SectionalCurvature, RejectsBadFrames) {
    const ReducedPoint p = collinear_point(kAnchor);
    EXPECT_THROW(sectional_curvature(TangentPair{p, p.coords(), normal_plane_frame(kAnchor).v2}), FrameError);
    const ReducedPoint collided(RVec::Unit(6, 0));  // bodies 3 and 4 coincide
    const auto f = horizontal_frame(collided);
    EXPECT_THROW(sectional_curvature(TangentPair{collided, f[0], f[1]}), CollisionError);
}

TEST(KnBlock, EqualsKOnCollinearNormalPlane) {
    const TangentPair nf = normal_plane_frame(kAnchor);
    EXPECT_NEAR(kn_block(nf), 0.368, 1e-10);
    EXPECT_LT(std::abs(oneill_term(nf)), 1e-12);
}

TEST(KnBlock, DecompositionAndAmbientOracle) {
    Sampler s(37);
    for (int t = 0; t < 4; ++t) {
        const ReducedPoint p = random_reduced_point(s, 4);
        const TangentPair pair = random_horizontal_pair(s, p);
        const CurvatureBreakdown b = sectional_curvature(pair);
        EXPECT_NEAR(b.k, kn_block(pair) + oneill_term(pair) / std::pow(b.u_l, 3), 1e-12 * std::max(1.0, std::abs(b.k)));
        const double kn = kn_block(pair);
        EXPECT_NEAR(fd::fd_ambient_sectional(pair), kn, 1e-3 * std::max(1.0, std::abs(kn)));
    }
}

TEST(OneillTerm, ComplexLinePlane) {
    Sampler s(41);
    const ReducedPoint p = random_reduced_point(s, 4);
    RVec v1 = horizontal_project(p, s.normal_vector(6)).normalized();
    const TangentPair pair{p, v1, times_i(v1)};
    const double u = restricted_potential(p, ComEmbedding(4));
    EXPECT_NEAR(oneill_term(pair), 3 * u * u, 1e-10 * u * u);
    const CurvatureBreakdown b = sectional_curvature(pair);
    EXPECT_NEAR(b.term_oneill / std::pow(b.u_l, 3), 3.0 / u, 1e-12);
}

TEST(RhoAlpha, PiOverEightValues) {
    const RhoAlphaTable t = collinear_rho_alpha(M_PI / 8);
    const double r2 = std::sqrt(2.0);
    EXPECT_NEAR(std::pow(t.r(1, 2), 2), 2 - r2, 1e-13);
    EXPECT_NEAR(std::pow(t.r(3, 4), 2), 2 + r2, 1e-13);
    EXPECT_NEAR(std::pow(t.r(1, 3), 2), 4 + 2 * r2, 1e-12);
    EXPECT_NEAR(std::pow(t.r(1, 4), 2), 4 - 2 * r2, 1e-12);
    EXPECT_NEAR(t.pair_sum(2), 20.0, 1e-12);
    EXPECT_NEAR(t.pair_sum(6), 680.0, 1e-10);
    EXPECT_NEAR(t.weighted_quartic_sum(), 196.0, 1e-10);
}

TEST(RhoAlpha, ClosedFormsAndRelations) {
    for (const double phi : verify::sampled_circle_angles(50, 43)) {
        const RhoAlphaTable t = collinear_rho_alpha(phi);
        const double c = std::cos(phi), s = std::sin(phi);
        EXPECT_NEAR(t.r(1, 2), 1 / (std::sqrt(2.0) * c), 1e-12 * std::abs(t.r(1, 2)));
        EXPECT_NEAR(t.r(3, 4), 1 / (std::sqrt(2.0) * s), 1e-12 * std::abs(t.r(3, 4)));
        EXPECT_NEAR(t.r(1, 3), std::sqrt(2.0) / (c - s), 1e-11 * std::abs(t.r(1, 3)));
        EXPECT_NEAR(t.r(1, 3), -t.r(2, 4), 1e-11 * std::abs(t.r(1, 3)));
        EXPECT_NEAR(t.r(1, 4), std::sqrt(2.0) / (c + s), 1e-12 * std::abs(t.r(1, 4)));
        EXPECT_NEAR(t.r(1, 4), -t.r(2, 3), 1e-12 * std::abs(t.r(1, 4)));
        EXPECT_NEAR(t.a(1, 2) * std::pow(t.r(3, 4), 2), 1.0, 1e-12);
        EXPECT_NEAR(t.a(3, 4) * std::pow(t.r(1, 2), 2), 1.0, 1e-12);
        EXPECT_NEAR(t.a(1, 3), 1 / std::pow(t.r(1, 4), 2) + 1, 1e-12);
        EXPECT_NEAR(t.a(2, 4), t.a(1, 3), 1e-12);
        EXPECT_NEAR(t.a(1, 4), 1 / std::pow(t.r(1, 3), 2) + 1, 1e-12);
        EXPECT_NEAR(t.a(2, 3), t.a(1, 4), 1e-12);
        EXPECT_NEAR(t.pair_sum(2), potential(four_body_embedding().embed(collinear_point({phi, M_PI / 2}))),
                    1e-12 * t.pair_sum(2));
    }
    EXPECT_THROW(collinear_rho_alpha(M_PI / 4), CollisionError);
    EXPECT_THROW(collinear_rho_alpha(0.0), CollisionError);
}

TEST(Inequality, PiOverEightAndForms) {
    const InequalitySides s = inequality_sides(M_PI / 8);
    EXPECT_NEAR(s.lhs, 976.0, 1e-9);
    EXPECT_NEAR(s.rhs, 3920.0, 1e-9);
    EXPECT_NEAR(s.lhs_paired, 976.0, 1e-9);
    EXPECT_NEAR(s.lhs_expanded, 976.0, 1e-9);
    EXPECT_NEAR(s.rhs_expanded, 3920.0, 1e-9);
}

TEST(Inequality, ReflectionSymmetryAndStrictness) {
    for (const double phi : verify::sampled_circle_angles(40, 47)) {
        const InequalitySides a = inequality_sides(phi), b = inequality_sides(M_PI / 2 - phi);
        EXPECT_NEAR(a.lhs, b.lhs, 1e-9 * a.lhs);
        EXPECT_NEAR(a.rhs, b.rhs, 1e-9 * a.rhs);
        EXPECT_LT(a.lhs, a.rhs);
        EXPECT_NEAR(a.lhs_paired, a.lhs, 1e-9 * a.lhs);
        EXPECT_NEAR(a.lhs_expanded, a.lhs, 1e-9 * a.lhs);
        EXPECT_NEAR(a.rhs_expanded, a.rhs, 1e-9 * a.rhs);
    }
}

TEST(CollinearNormalCurvature, MatchesGenericPath) {
    const CurvatureBreakdown a = collinear_normal_curvature(M_PI / 8);
    EXPECT_NEAR(a.terms_sum(), 2944.0, 1e-9);
    EXPECT_NEAR(a.k, 0.368, 1e-12);
    for (const double phi : verify::sampled_circle_angles(50, 53)) {
        const CurvatureBreakdown c = collinear_normal_curvature(phi);
        EXPECT_EQ(c.term_first_partials, 0.0);
        EXPECT_EQ(c.term_oneill, 0.0);
        EXPECT_NEAR(c.k, sectional_curvature(normal_plane_frame({phi, M_PI / 2})).k, 1e-10 * c.k);
    }
}

TEST(Pants, EquilateralCollinearAndRandom) {
    EXPECT_LT(std::abs(pants_curvature(verify::equilateral_point())), 1e-6);
    const ReducedPoint collinear(ComEmbedding(3).pullback(realify({{-1.0, 0}, {0.2, 0}, {0.8, 0}})));
    EXPECT_LT(pants_curvature(collinear), 0.0);
    Sampler s(59);
    for (int t = 0; t < 100; ++t) EXPECT_LE(pants_curvature(random_reduced_point(s, 3, 0.05)), 1e-9);
    EXPECT_THROW(pants_curvature(collinear_point(kAnchor)), std::invalid_argument);
}

TEST(Pants, AgreesWithFiniteDifferences) {
    Sampler s(61);
    for (int t = 0; t < 3; ++t) {
        const ReducedPoint p = random_reduced_point(s, 3);
        const auto f = horizontal_frame(p);
        const double k = pants_curvature(p);
        EXPECT_NEAR(fd::fd_sectional(TangentPair{p, f[0], f[1]}), k, 1e-3 * std::max(1.0, std::abs(k)));
    }
}
