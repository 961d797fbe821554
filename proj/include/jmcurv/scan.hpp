#pragma once

// Collinear-circle curvature scans and their CSV/JSON encodings.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "jmcurv/curvature.hpp"
#include "jmcurv/error.hpp"
#include "jmcurv/shape_space.hpp"

namespace jmcurv {

enum class PlaneKind { normal, tangent, custom };

inline const char* to_string(PlaneKind k) {
    switch (k) {
    case PlaneKind::normal: return "normal";
    case PlaneKind::tangent: return "tangent";
    case PlaneKind::custom: return "custom";
    }
    return "custom";
}

inline PlaneKind parse_plane_kind(const std::string& s) {
    if (s == "normal") return PlaneKind::normal;
    if (s == "tangent") return PlaneKind::tangent;
    if (s == "custom") return PlaneKind::custom;
    throw std::invalid_argument("unknown plane '" + s + "'");
}

struct ScanRecord {
    bool collision = false;
    std::optional<double> phi;    ///< absent for records at raw points
    std::optional<double> theta;
    PlaneKind plane = PlaneKind::normal;
    CurvatureBreakdown curvature;
    std::optional<double> lhs;
    std::optional<double> rhs;
};

/// Record at one chart point. Collision angles produce a record with collision = true.
inline ScanRecord curvature_record(const CollinearChart& chart, PlaneKind plane) {
    ScanRecord r;
    r.phi = chart.phi;
    r.theta = chart.theta;
    r.plane = plane;
    try {
        if (plane == PlaneKind::custom) throw std::invalid_argument("custom planes need explicit vectors");
        const TangentPair pair = plane == PlaneKind::normal ? normal_plane_frame(chart) : tangent_plane_frame(chart);
        r.curvature = sectional_curvature(pair, four_body_embedding());
        if (plane == PlaneKind::normal && std::abs(std::cos(chart.theta)) < 1e-15) {
            const InequalitySides s = inequality_sides(chart.phi);
            r.lhs = s.lhs;
            r.rhs = s.rhs;
        }
    } catch (const CollisionError&) {
        r.collision = true;
    }
    return r;
}

struct ScanOptions {
    double theta = M_PI / 2;
    double phi_min = 0.01;
    double phi_max = M_PI / 4 - 0.01;
    std::size_t samples = 512;
    PlaneKind plane = PlaneKind::normal;
    unsigned jobs = 0;  ///< 0 = hardware concurrency
};

/// Evenly spaced phi from phi_min to phi_max inclusive; a single sample sits at phi_min.
inline std::vector<double> scan_angles(const ScanOptions& o) {
    std::vector<double> phis(o.samples);
    for (std::size_t k = 0; k < o.samples; ++k)
        phis[k] = o.samples == 1 ? o.phi_min
                                 : o.phi_min + (o.phi_max - o.phi_min) * static_cast<double>(k) /
                                                   static_cast<double>(o.samples - 1);
    return phis;
}

/// Records in grid order; grid points are split across worker threads.
inline std::vector<ScanRecord> scan_collinear(const ScanOptions& o) {
    if (o.samples == 0) throw std::invalid_argument("scan needs at least one sample");
    if (!(o.phi_max >= o.phi_min)) throw std::invalid_argument("phi_max must not be below phi_min");
    const std::vector<double> phis = scan_angles(o);
    std::vector<ScanRecord> out(phis.size());
    unsigned jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, phis.size()));
    auto work = [&](unsigned w) {
        for (std::size_t k = w; k < phis.size(); k += jobs)
            out[k] = curvature_record(CollinearChart{phis[k], o.theta}, o.plane);
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();
    return out;
}

/// %.17g: round-trip exact for doubles.
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline const char* kCsvHeader =
    "status,phi,theta,plane,k,term_first_partials,term_grad_norm,term_laplacian,term_oneill,u_l,lhs,rhs";

inline void write_csv_row(std::ostream& os, const ScanRecord& r) {
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    os << (r.collision ? "collision" : "ok") << ',' << opt(r.phi) << ',' << opt(r.theta) << ',' << to_string(r.plane);
    if (r.collision) {
        os << ",,,,,,,,\n";
        return;
    }
    const CurvatureBreakdown& c = r.curvature;
    for (double v : {c.k, c.term_first_partials, c.term_grad_norm, c.term_laplacian, c.term_oneill, c.u_l})
        os << ',' << format_number(v);
    os << ',' << (r.lhs ? format_number(*r.lhs) : "") << ',' << (r.rhs ? format_number(*r.rhs) : "") << '\n';
}

inline void write_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
    os << kCsvHeader << '\n';
    for (const ScanRecord& r : records) write_csv_row(os, r);
}

inline void write_json(std::ostream& os, const std::vector<ScanRecord>& records) {
    auto num = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("null"); };
    os << "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ScanRecord& r = records[i];
        const CurvatureBreakdown& c = r.curvature;
        const bool ok = !r.collision;
        auto field = [&](double v) { return ok ? format_number(v) : std::string("null"); };
        os << "  {\"status\": \"" << (ok ? "ok" : "collision") << "\", \"phi\": " << num(r.phi)
           << ", \"theta\": " << num(r.theta) << ", \"plane\": \"" << to_string(r.plane)
           << "\", \"k\": " << field(c.k) << ", \"term_first_partials\": " << field(c.term_first_partials)
           << ", \"term_grad_norm\": " << field(c.term_grad_norm) << ", \"term_laplacian\": " << field(c.term_laplacian)
           << ", \"term_oneill\": " << field(c.term_oneill) << ", \"u_l\": " << field(c.u_l)
           << ", \"lhs\": " << num(ok ? r.lhs : std::nullopt) << ", \"rhs\": " << num(ok ? r.rhs : std::nullopt) << '}'
           << (i + 1 < records.size() ? "," : "") << '\n';
    }
    os << "]\n";
}

} // namespace jmcurv
