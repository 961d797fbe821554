// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "jmcurv/verification.hpp"

using namespace jmcurv;
using verify::Check;

namespace {

struct Criterion {
    int id;
    std::string title;
    double budget_s;  ///< 0: no runtime bound
    std::function<std::vector<Check>()> run;
};

template <class... Groups>
std::vector<Check> concat(Groups&&... groups) {
    std::vector<Check> out;
    (out.insert(out.end(), groups.begin(), groups.end()), ...);
    return out;
}

std::vector<Criterion> criteria() {
    return {
        {1, "collinear normal-plane curvature positive over 512 samples, lhs < rhs", 1.0, [] { return verify::theorem_scan(); }},
        {2, "exact anchor values at phi = pi/8", 0.0,
         [] { return concat(verify::anchor_values(), std::vector<Check>{verify::anchor_fd_confirmation()}); }},
        {3, "closed form matches finite-difference oracle", 30.0,
         [] {
             return std::vector<Check>{verify::oracle_equivalence(4, 32), verify::oracle_equivalence(3, 32),
                                       verify::step_halving()};
         }},
        {4, "three-body baseline curvature nonpositive", 5.0, [] { return verify::suite_pants(); }},
        {5, "gradient, bracket and conformal identities", 0.0,
         [] {
             return concat(std::vector<Check>{verify::gradient_norm_identity()}, verify::bracket_checks(),
                           std::vector<Check>{verify::oneill_decomposition(), verify::ambient_conformal_oracle()});
         }},
        {6, "collinear first partials, twist and Hessian block", 0.0, [] { return verify::collinear_term_checks(); }},
        {7, "zero-energy Newton flow matches JM geodesic", 30.0, [] { return verify::suite_dynamics(); }},
    };
}

std::string serialize(const std::vector<Check>& checks) {
    std::ostringstream os;
    for (const Check& c : checks) verify::print(os, c);
    return os.str();
}

std::string scan_text(unsigned jobs, const char* format) {
    std::ostringstream os;
    const auto recs = scan_collinear(verify::theorem_scan_options(jobs));
    if (std::string(format) == "json")
        write_json(os, recs);
    else
        write_csv(os, recs);
    return os.str();
}

std::string geodesic_text(const std::filesystem::path& dir, int run) {
    const auto init = dir / "init.json";
    {
        std::ofstream f(init);
        const dynamics::PhaseState s = verify::reference_matched_state();
        f << "{\"positions\": [";
        for (std::size_t k = 0; k < s.velocities.size(); ++k)
            f << (k ? ", " : "") << '[' << format_number(s.config.positions()[k].real()) << ", "
              << format_number(s.config.positions()[k].imag()) << ']';
        f << "], \"velocities\": [";
        for (std::size_t k = 0; k < s.velocities.size(); ++k)
            f << (k ? ", " : "") << '[' << format_number(s.velocities[k].real()) << ", "
              << format_number(s.velocities[k].imag()) << ']';
        f << "]}\n";
    }
    cli::GeodesicArgs a;
    a.init = init.string();
    a.t_end = 0.2;
    a.dt = 1e-3;
    a.mode = "both";
    a.out = (dir / ("traj" + std::to_string(run) + ".csv")).string();
    std::ostringstream out, err;
    if (cli::cmd_geodesic(a, out, err) != 0) return "geodesic failed: " + err.str();
    std::ifstream n(a.out), j(a.out + ".jm.csv");
    std::ostringstream text;
    text << out.str() << n.rdbuf() << j.rdbuf();
    return text.str();
}

} // namespace

int main() {
    using clock = std::chrono::steady_clock;
    int failures = 0;
    std::vector<std::string> first_pass;

    for (const Criterion& c : criteria()) {
        const auto t0 = clock::now();
        const std::vector<Check> checks = c.run();
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        bool ok = !checks.empty();
        std::string failed;
        for (const Check& k : checks)
            if (!k.passed) {
                ok = false;
                failed += (failed.empty() ? "" : ", ") + k.name;
            }
        const bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
        ok = ok && in_time;
        failures += ok ? 0 : 1;
        first_pass.push_back(serialize(checks));

        char timing[64];
        if (c.budget_s > 0.0)
            std::snprintf(timing, sizeof timing, "%.3fs, budget %.0fs", secs, c.budget_s);
        else
            std::snprintf(timing, sizeof timing, "%.3fs", secs);
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << checks.size()
                  << " checks, " << timing << ')';
        if (!failed.empty()) std::cout << " failed: " << failed;
        if (!in_time) std::cout << " over budget";
        std::cout << '\n';
        for (const Check& k : checks)
            std::cout << "    " << k.name << ": " << format_number(k.measured) << ' ' << verify::symbol(k.relation) << ' '
                      << format_number(k.bound) << (k.passed ? "" : "  <-- not met") << '\n';
    }

    // Determinism: rerun everything and compare the serialized output byte for byte.
    const auto t0 = clock::now();
    std::vector<std::string> mismatched;
    const auto all = criteria();
    for (std::size_t i = 0; i < all.size(); ++i)
        if (serialize(all[i].run()) != first_pass[i]) mismatched.push_back("criterion " + std::to_string(all[i].id));
    if (scan_text(1, "csv") != scan_text(4, "csv")) mismatched.push_back("scan csv jobs 1 vs 4");
    if (scan_text(1, "json") != scan_text(4, "json")) mismatched.push_back("scan json jobs 1 vs 4");
    const auto dir = std::filesystem::temp_directory_path() / "jmcurv_acceptance";
    std::filesystem::create_directories(dir);
    const std::string g1 = geodesic_text(dir, 1), g2 = geodesic_text(dir, 2);
    if (g1 != g2 || g1.rfind("geodesic failed", 0) == 0) mismatched.push_back("geodesic csv");
    std::filesystem::remove_all(dir);
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();

    const bool ok = mismatched.empty();
    failures += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion 8: repeated runs give byte-identical serialized output ("
              << secs << "s)";
    for (std::size_t i = 0; i < mismatched.size(); ++i) std::cout << (i ? ", " : " differs: ") << mismatched[i];
    std::cout << '\n';

    std::cout << (failures == 0 ? "all 8 criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures;
}
