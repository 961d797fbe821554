#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace jmcurv::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2, kVerificationFailed = 3 };

struct ScanArgs {
    int n = 4;
    double theta = 1.5707963267948966;
    double phi_min = 0.01;
    double phi_max = 0.7753981633974483;
    std::size_t samples = 512;
    std::string plane = "normal";
    std::string format = "csv";
    std::string out;  ///< empty: stdout
    unsigned jobs = 0;
};

struct CurvatureAtArgs {
    std::vector<double> chart;  ///< phi, theta
    std::vector<double> point;  ///< 2(n-1) reals
    std::string plane;          ///< normal | tangent | horizontal; empty when v1/v2 given
    std::vector<double> v1;
    std::vector<double> v2;
    std::string format = "csv";
};

struct GeodesicArgs {
    std::string init;
    double t_end = 1.0;
    double dt = 1e-4;
    std::string mode = "newton";
    std::string out;
};

int cmd_scan(const ScanArgs& args, std::ostream& out, std::ostream& err);
int cmd_curvature_at(const CurvatureAtArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err);
int cmd_geodesic(const GeodesicArgs& args, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace jmcurv::cli
