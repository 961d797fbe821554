#include <gtest/gtest.h>

#include <optional>

#include "jmcurv/sampling.hpp"
#include "jmcurv/shape_space.hpp"

using namespace jmcurv;

TEST(ReducedPoint, RejectsZeroAndOddSizes) {
    EXPECT_THROW(ReducedPoint(RVec::Zero(6)), ZeroPointError);
    EXPECT_THROW(ReducedPoint(RVec::Ones(5)), std::invalid_argument);
    EXPECT_THROW(ReducedPoint(RVec::Ones(2)), std::invalid_argument);
    EXPECT_EQ(ReducedPoint(RVec::Ones(6)).bodies(), 4u);
}

TEST(VerticalFrame, UnitBasisVector) {
    const ReducedPoint p(RVec::Unit(6, 0));
    const auto f = vertical_frame(p);
    EXPECT_EQ(f[0], RVec::Unit(6, 0));
    EXPECT_EQ(f[1], RVec::Unit(6, 1));
}

TEST(VerticalFrame, OrthonormalAndKilledByProjection) {
    Sampler s(3);
    for (int t = 0; t < 100; ++t) {
        const ReducedPoint p(s.normal_vector(6));
        const auto f = vertical_frame(p);
        EXPECT_NEAR(f[0].norm(), 1.0, 1e-14);
        EXPECT_NEAR(f[1].norm(), 1.0, 1e-14);
        EXPECT_LT(std::abs(f[0].dot(f[1])), 1e-14);
        EXPECT_LT(horizontal_project(p, f[0]).norm(), 1e-14);
        EXPECT_LT(horizontal_project(p, f[1]).norm(), 1e-14);
    }
}

TEST(HorizontalProject, IdempotentOrthogonalAndRecomposes) {
    Sampler s(5);
    for (int t = 0; t < 100; ++t) {
        const ReducedPoint p(s.normal_vector(6));
        const RVec w = s.normal_vector(6);
        const RVec h = horizontal_project(p, w);
        EXPECT_LT((horizontal_project(p, h) - h).norm(), 1e-13 * w.norm());
        EXPECT_LT(std::abs(h.dot(p.coords())), 1e-12 * w.norm() * p.norm());
        EXPECT_LT(std::abs(h.dot(times_i(p.coords()))), 1e-12 * w.norm() * p.norm());
        const auto f = vertical_frame(p);
        EXPECT_LT((h + f[0].dot(w) * f[0] + f[1].dot(w) * f[1] - w).norm(), 1e-12 * w.norm());
    }
}

TEST(HorizontalProject, LeavesNormalFrameUnchanged) {
    const TangentPair nf = normal_plane_frame({0.3, 1.1});
    EXPECT_LT((horizontal_project(nf.base, nf.v1) - nf.v1).norm(), 1e-14);
    EXPECT_LT((horizontal_project(nf.base, nf.v2) - nf.v2).norm(), 1e-14);
}

TEST(HorizontalFrame, DimensionOrthonormalityComplexClosure) {
    Sampler s(9);
    for (std::size_t n : {3u, 4u, 5u}) {
        const ReducedPoint p = random_reduced_point(s, n);
        const auto f = horizontal_frame(p);
        ASSERT_EQ(f.size(), 2 * n - 4);
        RMat m(p.coords().size(), static_cast<Eigen::Index>(f.size()));
        for (std::size_t a = 0; a < f.size(); ++a) {
            m.col(static_cast<Eigen::Index>(a)) = f[a];
            EXPECT_LT(std::abs(f[a].dot(p.coords())), 1e-10);
            EXPECT_LT(std::abs(f[a].dot(times_i(p.coords()))), 1e-10);
        }
        EXPECT_LT((m.transpose() * m - RMat::Identity(m.cols(), m.cols())).norm(), 1e-10);
        for (const RVec& v : f) {
            const RVec iv = times_i(v);
            EXPECT_LT((m * (m.transpose() * iv) - iv).norm(), 1e-10);
        }
    }
}

TEST(HorizontalFrame, SpansTheCollinearFrames) {
    const CollinearChart chart{0.4, 2.0};
    const auto f = horizontal_frame(collinear_point(chart));
    RMat m(6, 4);
    for (int a = 0; a < 4; ++a) m.col(a) = f[static_cast<std::size_t>(a)];
    for (const TangentPair& pair : {normal_plane_frame(chart), tangent_plane_frame(chart)})
        for (const RVec* v : {&pair.v1, &pair.v2}) EXPECT_LT((m * (m.transpose() * *v) - *v).norm(), 1e-10);
}

TEST(TangentPair, ValidationAndConstruction) {
    const ReducedPoint p(RVec::Unit(6, 0));
    EXPECT_THROW(validate(TangentPair{p, RVec::Unit(6, 2), RVec::Unit(6, 2)}), FrameError);
    EXPECT_THROW(validate(TangentPair{p, RVec::Unit(6, 0), RVec::Unit(6, 2)}), FrameError);
    EXPECT_THROW(validate(TangentPair{p, 2 * RVec::Unit(6, 2), RVec::Unit(6, 3)}), FrameError);
    EXPECT_NO_THROW(validate(TangentPair{p, RVec::Unit(6, 2), RVec::Unit(6, 4)}));

    const TangentPair made = make_tangent_pair(p, RVec::Unit(6, 2) * 3, RVec::Unit(6, 2) + RVec::Unit(6, 4));
    EXPECT_LT((made.v1 - RVec::Unit(6, 2)).norm(), 1e-14);
    EXPECT_LT((made.v2 - RVec::Unit(6, 4)).norm(), 1e-14);
    EXPECT_THROW(make_tangent_pair(p, RVec::Unit(6, 2), RVec::Unit(6, 2) * 2), FrameError);
    EXPECT_THROW(make_tangent_pair(p, RVec::Unit(6, 2) + RVec::Unit(6, 0), RVec::Unit(6, 4)), FrameError);
}

TEST(CollinearPoint, PiOverEight) {
    const ReducedPoint p = collinear_point({M_PI / 8, M_PI / 2});
    EXPECT_NEAR(p.coords()[0], 0.0, 1e-16);
    EXPECT_NEAR(p.coords()[2], std::cos(M_PI / 8), 1e-16);
    EXPECT_NEAR(p.coords()[4], std::sin(M_PI / 8), 1e-16);
    for (Eigen::Index k = 1; k < 6; k += 2) EXPECT_EQ(p.coords()[k], 0.0);

    const Configuration q = four_body_embedding().embed(p);
    const double c = std::cos(M_PI / 8) / std::sqrt(2.0), s = std::sin(M_PI / 8) / std::sqrt(2.0);
    const double expected[4] = {c, -c, s, -s};
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(q.positions()[k].real(), expected[k], 1e-15);
        EXPECT_NEAR(q.positions()[k].imag(), 0.0, 1e-15);
    }
    EXPECT_NEAR(1.0 / (q.positions()[0].real() - q.positions()[1].real()), 1.0 / (std::sqrt(2.0) * std::cos(M_PI / 8)), 1e-14);
}

TEST(CollinearPoint, CollisionAngles) {
    EXPECT_THROW(collinear_point({M_PI / 4, M_PI / 2}), CollisionError);
    EXPECT_THROW(collinear_point({0.0, M_PI / 2}), CollisionError);
    EXPECT_THROW(collinear_point({-M_PI / 4, M_PI / 2}), CollisionError);
    EXPECT_THROW(collinear_point({M_PI / 2, M_PI / 2}), CollisionError);
    EXPECT_THROW(normal_plane_frame({M_PI / 4, M_PI / 2}), CollisionError);
}

TEST(CollinearPoint, UnitNorm) {
    Sampler s(21);
    for (int t = 0; t < 100; ++t) {
        const CollinearChart c{s.uniform(0.05, 0.7), s.uniform(0, 2 * M_PI)};
        try {
            EXPECT_NEAR(collinear_point(c).norm(), 1.0, 1e-15);
        } catch (const CollisionError&) {
        }
    }
}

TEST(NormalFrame, OrthonormalUntwistedAndImaginary) {
    Sampler s(23);
    for (int t = 0; t < 50; ++t) {
        const CollinearChart c{s.uniform(0.05, 0.7), t < 25 ? M_PI / 2 : s.uniform(0, 2 * M_PI)};
        std::optional<TangentPair> nf;
        try {
            nf = normal_plane_frame(c);
        } catch (const CollisionError&) {
            continue;
        }
        EXPECT_NO_THROW(validate(*nf));
        EXPECT_LT(std::abs(nf->v1.dot(times_i(nf->v2))), 1e-15);
        if (t < 25) {
            const RVec w1 = four_body_embedding().apply(nf->v1), w2 = four_body_embedding().apply(nf->v2);
            for (Eigen::Index k = 0; k < 8; k += 2) {
                EXPECT_LT(std::abs(w1[k]), 1e-15);
                EXPECT_LT(std::abs(w2[k]), 1e-15);
            }
        }
    }
}

TEST(TangentFrame, IsTheRotatedNormalPlane) {
    Sampler s(29);
    for (int t = 0; t < 100; ++t) {
        const CollinearChart c{s.uniform(0.05, 0.7), s.uniform(0, 2 * M_PI)};
        std::optional<TangentPair> tf, nf;
        try {
            tf = tangent_plane_frame(c);
            nf = normal_plane_frame(c);
        } catch (const CollisionError&) {
            continue;
        }
        EXPECT_NO_THROW(validate(*tf));
        EXPECT_LT(std::abs(tf->v1.dot(times_i(tf->v2))), 1e-15);
        // i maps the tangent plane onto the normal plane
        RMat m(6, 2);
        m << nf->v1, nf->v2;
        for (const RVec* v : {&tf->v1, &tf->v2}) {
            const RVec iv = times_i(*v);
            EXPECT_LT((m * (m.transpose() * iv) - iv).norm(), 1e-12);
        }
    }
}
