#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "jmcurv/curvature.hpp"
#include "jmcurv/dynamics.hpp"
#include "jmcurv/scan.hpp"
#include "jmcurv/verification.hpp"

namespace jmcurv::cli {

namespace {

void write_records(const std::vector<ScanRecord>& recs, const std::string& format, std::ostream& os) {
    if (format == "json")
        write_json(os, recs);
    else
        write_csv(os, recs);
}

RVec to_rvec(const std::vector<double>& v) {
    return Eigen::Map<const RVec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Opens `path` for writing, or returns nullopt and reports on err.
std::optional<std::ofstream> open_output(const std::string& path, std::ostream& err) {
    std::ofstream f(path);
    if (!f) {
        err << "error: cannot write " << path << '\n';
        return std::nullopt;
    }
    return f;
}

} // namespace

int cmd_scan(const ScanArgs& args, std::ostream& out, std::ostream& err) {
    if (args.n != 4) {
        err << "error: collinear scans are defined for n = 4 only\n";
        return kUsage;
    }
    if (args.format != "csv" && args.format != "json") {
        err << "error: unknown format '" << args.format << "'\n";
        return kUsage;
    }
    ScanOptions o;
    o.theta = args.theta;
    o.phi_min = args.phi_min;
    o.phi_max = args.phi_max;
    o.samples = args.samples;
    o.jobs = args.jobs;
    try {
        o.plane = parse_plane_kind(args.plane);
        if (o.plane == PlaneKind::custom) throw std::invalid_argument("scan planes are normal or tangent");
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    std::vector<ScanRecord> recs;
    try {
        recs = scan_collinear(o);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    if (args.out.empty()) {
        write_records(recs, args.format, out);
    } else {
        auto f = open_output(args.out, err);
        if (!f) return kUsage;
        write_records(recs, args.format, *f);
    }

    std::size_t collisions = 0;
    for (const ScanRecord& r : recs) collisions += r.collision ? 1 : 0;
    if (collisions == recs.size()) {
        err << "error: every sample is a collision angle\n";
        return kDomain;
    }
    return kOk;
}

int cmd_curvature_at(const CurvatureAtArgs& args, std::ostream& out, std::ostream& err) {
    if (args.chart.empty() == args.point.empty()) {
        err << "error: give exactly one of --chart or --point\n";
        return kUsage;
    }
    if (!args.chart.empty() && args.chart.size() != 2) {
        err << "error: --chart takes phi,theta\n";
        return kUsage;
    }
    const bool explicit_plane = !args.v1.empty() || !args.v2.empty();
    if (explicit_plane == !args.plane.empty()) {
        err << "error: give either --plane or both --v1 and --v2\n";
        return kUsage;
    }
    if (args.format != "csv" && args.format != "json") {
        err << "error: unknown format '" << args.format << "'\n";
        return kUsage;
    }

    ScanRecord rec;
    try {
        std::optional<ReducedPoint> base;
        if (!args.chart.empty()) {
            const CollinearChart chart{args.chart[0], args.chart[1]};
            rec.phi = chart.phi;
            rec.theta = chart.theta;
            base = collinear_point(chart);
        } else {
            if (args.point.size() < 4 || args.point.size() % 2 != 0) {
                err << "error: --point needs 2(n-1) reals with n >= 3\n";
                return kUsage;
            }
            base = ReducedPoint(to_rvec(args.point));
            require_collision_free(ComEmbedding(base->bodies()).embed(*base));
        }

        std::optional<TangentPair> pair;
        if (explicit_plane) {
            if (args.v1.size() != args.point.size() && args.v1.size() != 2 * (base->bodies() - 1)) {
                err << "error: --v1/--v2 must have " << 2 * (base->bodies() - 1) << " components\n";
                return kUsage;
            }
            rec.plane = PlaneKind::custom;
            pair = make_tangent_pair(*base, to_rvec(args.v1), to_rvec(args.v2));
        } else if (args.plane == "horizontal") {
            rec.plane = PlaneKind::custom;
            const std::vector<RVec> frame = horizontal_frame(*base);
            pair = TangentPair{*base, frame[0], frame[1]};
        } else {
            if (args.chart.empty()) {
                err << "error: --plane " << args.plane << " needs --chart\n";
                return kUsage;
            }
            rec.plane = parse_plane_kind(args.plane);
            const CollinearChart chart{args.chart[0], args.chart[1]};
            pair = rec.plane == PlaneKind::normal ? normal_plane_frame(chart) : tangent_plane_frame(chart);
        }

        rec.curvature = sectional_curvature(*pair);
        if (rec.plane == PlaneKind::normal && std::abs(std::cos(*rec.theta)) < 1e-15) {
            const InequalitySides s = inequality_sides(*rec.phi);
            rec.lhs = s.lhs;
            rec.rhs = s.rhs;
        }
    } catch (const CollisionError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const ZeroPointError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const FrameError& e) {
        err << "error: malformed plane: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    write_records({rec}, args.format, out);
    return kOk;
}

int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err) {
    std::vector<verify::Check> checks;
    try {
        checks = verify::run_suite(suite);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    std::size_t passed = 0;
    for (const verify::Check& c : checks) {
        verify::print(out, c);
        passed += c.passed ? 1 : 0;
    }
    out << "suite " << suite << ": " << passed << '/' << checks.size() << " passed\n";
    return passed == checks.size() ? kOk : kVerificationFailed;
}

namespace {

struct InitData {
    std::vector<double> masses;
    std::vector<Complex> positions;
    std::vector<Complex> velocities;
};

std::vector<Complex> parse_pairs(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing key '") + key + "'");
    const auto& arr = j.at(key);
    if (!arr.is_array()) throw std::invalid_argument(std::string("'") + key + "' must be an array");
    std::vector<Complex> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& e = arr[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw std::invalid_argument(std::string("'") + key + "[" + std::to_string(i) + "]' must be [re, im]");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

InitData parse_init(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("initial-condition document must be an object");
    InitData d;
    d.positions = parse_pairs(j, "positions");
    d.velocities = parse_pairs(j, "velocities");
    if (j.contains("masses")) {
        if (!j["masses"].is_array()) throw std::invalid_argument("'masses' must be an array");
        for (const auto& m : j["masses"]) {
            if (!m.is_number()) throw std::invalid_argument("'masses' entries must be numbers");
            d.masses.push_back(m.get<double>());
        }
    } else {
        d.masses.assign(d.positions.size(), 1.0);
    }
    if (d.positions.size() != d.velocities.size() || d.positions.size() != d.masses.size())
        throw std::invalid_argument("masses, positions and velocities differ in length");
    if (d.positions.size() < 3) throw std::invalid_argument("need at least 3 bodies");
    return d;
}

void write_newton_csv(std::ostream& os, const dynamics::NewtonTrajectory& traj) {
    const std::size_t n = traj.states.front().config.size();
    os << "status,t,energy,angular_momentum,inertia,inertia_rate,virial_residual,energy_drift,angular_momentum_drift";
    for (std::size_t k = 1; k <= n; ++k) os << ",x" << k << ",y" << k;
    os << '\n';
    const dynamics::Monitors& m0 = traj.monitors.front();
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const dynamics::Monitors& m = traj.monitors[i];
        const bool last = i + 1 == traj.states.size();
        os << (last && traj.truncated ? "truncated" : "ok") << ',' << format_number(m.t) << ','
           << format_number(m.energy) << ',' << format_number(m.angular_momentum) << ',' << format_number(m.inertia)
           << ',' << format_number(m.inertia_rate) << ','
           << (std::isnan(m.virial_residual) ? std::string() : format_number(m.virial_residual)) << ','
           << format_number(m.energy - m0.energy) << ',' << format_number(m.angular_momentum - m0.angular_momentum);
        for (const Complex& z : traj.states[i].config.positions())
            os << ',' << format_number(z.real()) << ',' << format_number(z.imag());
        os << '\n';
    }
}

void write_geodesic_csv(std::ostream& os, const dynamics::GeodesicTrajectory& traj) {
    const auto dim = traj.states.front().x.size();
    os << "status,t,jm_speed,horizontal_residual";
    for (Eigen::Index k = 0; k < dim / 2; ++k) os << ",p" << k + 1 << "_re,p" << k + 1 << "_im";
    os << '\n';
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const bool last = i + 1 == traj.states.size();
        os << (last && traj.truncated ? "truncated" : "ok") << ',' << format_number(traj.times[i]) << ','
           << format_number(traj.jm_speed[i]) << ',' << format_number(traj.horizontal_residual[i]);
        for (Eigen::Index k = 0; k < dim; ++k) os << ',' << format_number(traj.states[i].x[k]);
        os << '\n';
    }
}

/// Center-of-mass reduced position and velocity of the initial data.
std::pair<RVec, RVec> reduce(const dynamics::PhaseState& s) {
    const ComEmbedding emb(s.config.size());
    const Complex qc = center_of_mass(s.config);
    Complex vc{0.0, 0.0};
    for (const Complex& v : s.velocities) vc += v;
    vc /= static_cast<double>(s.velocities.size());
    std::vector<Complex> q = s.config.positions(), v = s.velocities;
    for (Complex& z : q) z -= qc;
    for (Complex& z : v) z -= vc;
    return {emb.pullback(realify(q)), emb.pullback(realify(v))};
}

} // namespace

int cmd_geodesic(const GeodesicArgs& args, std::ostream& out, std::ostream& err) {
    if (args.mode != "newton" && args.mode != "jm" && args.mode != "both") {
        err << "error: mode must be newton, jm or both\n";
        return kUsage;
    }
    if (args.out.empty()) {
        err << "error: --out is required\n";
        return kUsage;
    }
    std::ifstream in(args.init);
    if (!in) {
        err << "error: cannot read " << args.init << '\n';
        return kUsage;
    }
    InitData data;
    std::optional<dynamics::PhaseState> init;
    try {
        data = parse_init(in);
        init = dynamics::PhaseState{Configuration(data.positions, data.masses), data.velocities};
        if (args.mode != "newton" && !init->config.unit_masses())
            throw std::invalid_argument("jm and both modes need unit masses");
        if (!(args.dt > 0.0) || !(args.t_end >= 0.0)) throw std::invalid_argument("need dt > 0 and t-end >= 0");
    } catch (const std::invalid_argument& e) {
        err << "error: " << args.init << ": " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (args.mode == "newton") {
            const dynamics::NewtonTrajectory traj = dynamics::integrate_newton(*init, args.t_end, args.dt);
            auto f = open_output(args.out, err);
            if (!f) return kUsage;
            write_newton_csv(*f, traj);
            if (traj.truncated) {
                err << "error: trajectory truncated near collision at t = " << traj.monitors.back().t << '\n';
                return kDomain;
            }
            return kOk;
        }
        if (args.mode == "jm") {
            const auto [x0, v0] = reduce(*init);
            const dynamics::GeodesicTrajectory traj = dynamics::integrate_jm_geodesic(x0, v0, args.t_end, args.dt);
            auto f = open_output(args.out, err);
            if (!f) return kUsage;
            write_geodesic_csv(*f, traj);
            if (traj.truncated) {
                err << "error: geodesic truncated near collision at t = " << traj.times.back() << '\n';
                return kDomain;
            }
            return kOk;
        }
        const dynamics::TraceComparison cmp = dynamics::compare_newton_and_geodesic(*init, args.t_end, args.dt);
        auto f = open_output(args.out, err);
        if (!f) return kUsage;
        write_newton_csv(*f, cmp.newton);
        auto g = open_output(args.out + ".jm.csv", err);
        if (!g) return kUsage;
        write_geodesic_csv(*g, cmp.geodesic);
        out << "hausdorff_distance=" << format_number(cmp.hausdorff) << '\n';
        if (cmp.newton.truncated || cmp.geodesic.truncated) {
            err << "error: trajectory truncated near collision\n";
            return kDomain;
        }
        return kOk;
    } catch (const CollisionError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sectional curvature of the reduced Jacobi-Maupertuis metric of the 1/r^2 N-body problem"};
    app.require_subcommand(1);

    ScanArgs scan;
    auto* sc = app.add_subcommand("scan", "curvature along a phi sweep of the collinear chart");
    sc->add_option("--n", scan.n, "number of bodies (4)");
    sc->add_option("--theta", scan.theta, "chart angle theta");
    sc->add_option("--phi-min", scan.phi_min, "first phi");
    sc->add_option("--phi-max", scan.phi_max, "last phi");
    sc->add_option("--samples", scan.samples, "number of phi samples")->check(CLI::PositiveNumber);
    sc->add_option("--plane", scan.plane, "normal | tangent");
    sc->add_option("--format", scan.format, "csv | json");
    sc->add_option("--out", scan.out, "output path (default stdout)");
    sc->add_option("--jobs", scan.jobs, "worker threads (0 = all cores)");

    CurvatureAtArgs at;
    auto* ca = app.add_subcommand("curvature-at", "full curvature breakdown at one point and plane");
    ca->add_option("--chart", at.chart, "phi,theta")->delimiter(',');
    ca->add_option("--point", at.point, "2(n-1) reals, interleaved re,im")->delimiter(',');
    ca->add_option("--plane", at.plane, "normal | tangent (with --chart) or horizontal");
    ca->add_option("--v1", at.v1, "first spanning vector")->delimiter(',');
    ca->add_option("--v2", at.v2, "second spanning vector")->delimiter(',');
    ca->add_option("--format", at.format, "csv | json");

    std::string suite = "all";
    auto* ve = app.add_subcommand("verify", "run a seeded verification suite");
    ve->add_option("--suite", suite, "derivatives | curvature | appendix | pants | dynamics | all");

    GeodesicArgs geo;
    auto* ge = app.add_subcommand("geodesic", "integrate Newton and/or JM geodesic trajectories");
    ge->add_option("--init", geo.init, "initial-condition JSON document")->required();
    ge->add_option("--t-end", geo.t_end, "final time");
    ge->add_option("--dt", geo.dt, "RK4 step");
    ge->add_option("--mode", geo.mode, "newton | jm | both");
    ge->add_option("--out", geo.out, "trajectory CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    if (*sc) return cmd_scan(scan, out, err);
    if (*ca) return cmd_curvature_at(at, out, err);
    if (*ve) return cmd_verify(suite, out, err);
    return cmd_geodesic(geo, out, err);
}

} // namespace jmcurv::cli
