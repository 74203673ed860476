// commands.hpp: subcommand implementations behind the floqcool executable.
//
// Exit codes: 0 success (stable drive), 1 usage, configuration, I/O or
// numerical error, 2 unstable drive, 3 marginal drive.

#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "floqcool/mathieu.hpp"
#include "floqcool_cli/run_config.hpp"

namespace floqcool::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnstable = 2;
inline constexpr int kExitMarginal = 3;

struct ExponentArgs {
    double omega0 = 0.0;
    double omega1 = 0.0;
    double tolerance = kDefaultTolerance;
    double stability_margin = kDefaultStabilityMargin;
    int top = 8;  // number of Fourier weights listed
};

// Prints nu, the stability verdict, L and the largest Fourier weights.
int cmd_exponent(const ExponentArgs& args, std::ostream& out, std::ostream& err);

// Writes the sweep table to config.output.path.
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);

struct RelaxArgs {
    int n_init = 0;
    bool init_steady = false;
    double t_final = 10.0;
    // t_final in units of 1/g_down instead of 1/rate_scale.
    bool relative_time = false;
};

// Writes the population trajectory `t,p0,...,pN` for the density centered
// at config.density.center to config.output.path.
int cmd_relax(const RunConfig& config, const RelaxArgs& args, std::ostream& out,
              std::ostream& err);

struct ChartArgs {
    double omega0_min = 0.1;
    double omega0_max = 3.0;
    int omega0_points = 30;
    double omega1_min = 0.0;
    double omega1_max = 2.0;
    int omega1_points = 21;
    double tolerance = kDefaultTolerance;
    double stability_margin = kDefaultStabilityMargin;
    std::string path = "-";
};

// Table `omega0,omega1,trace,verdict` over a rectangular grid.
int cmd_stability_chart(const ChartArgs& args, std::ostream& out, std::ostream& err);

// Full command-line entry point; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace floqcool::cli
