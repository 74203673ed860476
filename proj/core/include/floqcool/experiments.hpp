// experiments.hpp: sweeps of the bath density center and the figure presets.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "floqcool/bath.hpp"
#include "floqcool/mathieu.hpp"
#include "floqcool/rates.hpp"

namespace floqcool {

struct SolverOptions {
    double tolerance = kDefaultTolerance;
    double stability_margin = kDefaultStabilityMargin;
    int max_L = kDefaultMaxL;
    double tail_threshold = kDefaultTailThreshold;

    friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

// Canonical CSV columns, in output order.
inline constexpr std::string_view kSweepColumns[] = {
    "omega_c", "r", "tau_over_Tbath", "p0_over_P0", "ell1", "ell2", "r_plateau", "r_instab"};

struct SweepConfig {
    DriveParams drive;
    ThermalBath bath;
    double amplitude = 1.0;  // J0; cancels in every reported quantity
    double width = 0.0;      // Gaussian width
    double start = 0.0;      // density center range
    double stop = 10.0;
    double step = 0.01;
    int n_max = 0;           // 0 selects default_truncation(r)
    std::vector<std::string> columns{std::begin(kSweepColumns), std::end(kSweepColumns)};
    SolverOptions solver;
    unsigned threads = 1;

    void validate() const;

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct SweepRecord {
    double center = 0.0;
    double r = 0.0;
    std::optional<double> tau_ratio;       // absent when |r - 1| <= 1e-14
    std::optional<double> enhancement;     // absent when r >= 1
    std::optional<int> ell1;
    std::optional<int> ell2;
    std::optional<double> r_plateau;       // exp(-beta (nu + ell1))
    std::optional<double> r_instability;   // exp(-beta (nu + ell2))

    bool unstable() const noexcept { return r >= 1.0; }
};

struct SweepResult {
    double nu = 0.0;
    std::shared_ptr<const FloquetSolution> solution;
    std::vector<SweepRecord> records;  // ordered by center
};

// Density centers start + k * step for k = 0.. while <= stop (1e-9 slack).
std::vector<double> sweep_grid(double start, double stop, double step);

// Computes nu and v^(ell) once for the drive, then evaluates every grid
// point. Throws UnstableDrive before sweeping if the drive is not stable.
SweepResult sweep(const SweepConfig& config);

// Single grid point for an already-computed spectrum.
SweepRecord evaluate_center(const TransitionSpectrum& spectrum, const SweepConfig& config,
                            double center);

// "fig1", "fig2", "fig3"; throws InvalidArgument otherwise.
SweepConfig figure_preset(std::string_view name);

}  // namespace floqcool
