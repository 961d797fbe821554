#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "jmcurv/scan.hpp"
#include "jmcurv/verification.hpp"

using namespace jmcurv;

TEST(ScanAngles, InclusiveGridAndSingleSample) {
    ScanOptions o;
    o.phi_min = 0.1;
    o.phi_max = 0.5;
    o.samples = 5;
    const auto phis = scan_angles(o);
    ASSERT_EQ(phis.size(), 5u);
    EXPECT_EQ(phis.front(), 0.1);
    EXPECT_EQ(phis.back(), 0.5);
    o.samples = 1;
    EXPECT_EQ(scan_angles(o), std::vector<double>{0.1});
}

TEST(Scan, TheoremGridAllPositive) {
    const auto recs = scan_collinear(verify::theorem_scan_options(2));
    ASSERT_EQ(recs.size(), 512u);
    for (const ScanRecord& r : recs) {
        ASSERT_FALSE(r.collision);
        EXPECT_GT(r.curvature.k, 0.0);
        ASSERT_TRUE(r.lhs && r.rhs);
        EXPECT_LT(*r.lhs, *r.rhs);
    }
}

TEST(Scan, SingleAnchorSample) {
    ScanOptions o;
    o.phi_min = o.phi_max = M_PI / 8;
    o.samples = 1;
    const auto recs = scan_collinear(o);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_NEAR(recs[0].curvature.k, 0.368, 1e-10);
    EXPECT_NEAR(*recs[0].lhs, 976.0, 1e-9);
    EXPECT_NEAR(*recs[0].rhs, 3920.0, 1e-9);
}

TEST(Scan, TangentPlaneHasNoInequalityColumns) {
    ScanOptions o;
    o.samples = 8;
    o.plane = PlaneKind::tangent;
    for (const ScanRecord& r : scan_collinear(o)) {
        EXPECT_FALSE(r.lhs.has_value());
        EXPECT_LT(r.curvature.k, 0.0);
    }
}

TEST(Scan, CollisionAnglesAreMarked) {
    ScanOptions o;
    o.phi_min = 0.0;
    o.phi_max = M_PI / 4;
    o.samples = 3;
    const auto recs = scan_collinear(o);
    EXPECT_TRUE(recs[0].collision);
    EXPECT_FALSE(recs[1].collision);
    EXPECT_TRUE(recs[2].collision);
}

TEST(Scan, RejectsBadOptions) {
    ScanOptions o;
    o.samples = 0;
    EXPECT_THROW(scan_collinear(o), std::invalid_argument);
    o.samples = 4;
    o.phi_min = 0.5;
    o.phi_max = 0.1;
    EXPECT_THROW(scan_collinear(o), std::invalid_argument);
}

TEST(Scan, ThreadCountDoesNotChangeOutput) {
    std::ostringstream a, b;
    write_csv(a, scan_collinear(verify::theorem_scan_options(1)));
    write_csv(b, scan_collinear(verify::theorem_scan_options(3)));
    EXPECT_EQ(a.str(), b.str());
}

TEST(Serialization, CsvAndJsonAgree) {
    ScanOptions o;
    o.phi_min = 0.0;
    o.samples = 6;
    const auto recs = scan_collinear(o);
    std::ostringstream csv, js;
    write_csv(csv, recs);
    write_json(js, recs);

    const auto doc = nlohmann::json::parse(js.str());
    ASSERT_EQ(doc.size(), recs.size());
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, kCsvHeader);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        std::getline(lines, line);
        const auto& j = doc[i];
        EXPECT_EQ(j["status"], recs[i].collision ? "collision" : "ok");
        EXPECT_EQ(j["phi"].get<double>(), *recs[i].phi);
        if (recs[i].collision) {
            EXPECT_TRUE(j["k"].is_null());
            EXPECT_EQ(line.rfind("collision,", 0), 0u);
        } else {
            // values round-trip exactly through %.17g
            EXPECT_EQ(j["k"].get<double>(), recs[i].curvature.k);
            EXPECT_EQ(j["rhs"].get<double>(), *recs[i].rhs);
            EXPECT_NE(line.find(format_number(recs[i].curvature.k)), std::string::npos);
        }
    }
}

TEST(Serialization, FormatNumberRoundTrips) {
    for (double v : {0.368, 1.0 / 3.0, -2944.0, 1e-300, M_PI})
        EXPECT_EQ(std::stod(format_number(v)), v);
}

TEST(Serialization, PlaneKindNames) {
    for (PlaneKind k : {PlaneKind::normal, PlaneKind::tangent, PlaneKind::custom}) EXPECT_EQ(parse_plane_kind(to_string(k)), k);
    EXPECT_THROW(parse_plane_kind("diagonal"), std::invalid_argument);
}
