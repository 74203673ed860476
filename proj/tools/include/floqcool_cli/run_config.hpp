// run_config.hpp: the structured run configuration read from JSON files and
// overridden by command-line flags.

#pragma once

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "floqcool/experiments.hpp"

namespace floqcool::cli {

// Schema violations; the message names the offending key path.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DensitySection {
    std::string kind = "gaussian";
    double amplitude = 1.0;
    double center = 8.0;  // used by relax; sweeps step it over the grid
    double width = 1.0;

    friend bool operator==(const DensitySection&, const DensitySection&) = default;
};

struct SweepSection {
    double start = 0.0;
    double stop = 10.0;
    double step = 0.01;
    std::vector<std::string> columns{std::begin(kSweepColumns), std::end(kSweepColumns)};

    friend bool operator==(const SweepSection&, const SweepSection&) = default;
};

struct MasterSection {
    int n_max = 0;  // 0: smallest n with r^n < 1e-12, clamped to [16, 512]
    double rate_scale = 1.0;
    int snapshots = 101;
    double tolerance = 1e-10;

    friend bool operator==(const MasterSection&, const MasterSection&) = default;
};

struct OutputSection {
    std::string path = "-";  // "-" is standard output
    std::string format = "csv";

    friend bool operator==(const OutputSection&, const OutputSection&) = default;
};

struct RunConfig {
    std::optional<std::string> figure;  // preset applied before explicit keys
    DriveParams drive{std::numbers::sqrt2, 1.0};
    ThermalBath bath{0.1};
    DensitySection density;
    SweepSection sweep;
    SolverOptions solver;
    MasterSection master;
    OutputSection output;
    unsigned threads = 1;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Loads the named preset into drive, bath, density width and sweep range.
void apply_figure(RunConfig& config, std::string_view name);

// Parses a JSON document on top of `base`. Unknown keys and wrongly typed
// values throw ConfigError.
RunConfig parse_run_config(std::string_view text, RunConfig base = {});
RunConfig load_run_config(const std::string& path, RunConfig base = {});

// Fully resolved configuration as pretty-printed JSON.
std::string dump_run_config(const RunConfig& config);

// Range and consistency checks beyond the schema; throws ConfigError.
void validate(const RunConfig& config);

SweepConfig to_sweep_config(const RunConfig& config);

}  // namespace floqcool::cli
