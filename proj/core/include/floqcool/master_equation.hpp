// master_equation.hpp: truncated birth-death generator over the Floquet
// ladder n = 0..n_max, its steady state and transient relaxation.

#pragma once

#include <span>
#include <vector>

#include "floqcool/bath.hpp"
#include "floqcool/rates.hpp"

namespace floqcool {

// Gamma_{n+1,n} = (n+1) g_up and Gamma_{n,n+1} = (n+1) g_down for
// n < n_max. The edge at n_max is reflecting: its outflow upward is deleted,
// so every column of the generator sums to zero.
class RateGenerator {
public:
    RateGenerator(double g_up, double g_down, int n_max);

    int n_max() const noexcept { return n_max_; }
    int dimension() const noexcept { return n_max_ + 1; }
    double g_up() const noexcept { return g_up_; }
    double g_down() const noexcept { return g_down_; }
    double ratio() const noexcept { return g_up_ / g_down_; }

    // Gamma_{n+1,n}; zero for n >= n_max.
    double up_rate(int n) const;
    // Gamma_{n,n+1}; zero for n >= n_max.
    double down_rate(int n) const;

    // Generator entry G(row, col) with dp/dt = G p.
    double entry(int row, int col) const;
    // out = G p
    void apply(std::span<const double> p, std::span<double> out) const;

private:
    double g_up_;
    double g_down_;
    int n_max_;
};

// Smallest n with r^n < 1e-12, clamped to [16, 512]; 512 for r >= 1.
int default_truncation(double r);

// Base rates from the transition spectrum, multiplied by rate_scale.
RateGenerator build_generator(const TransitionSpectrum& spectrum, const ThermalBath& bath,
                              const SpectralDensity& density, int n_max,
                              double rate_scale = 1.0);

struct NumericSteadyState {
    std::vector<double> populations;
    double residual = 0.0;             // max |G p| / max |G_nn|
    bool truncation_dominated = false; // r >= 1: population piles at n_max
};

// Null-space solve of G p = 0 with sum p = 1 by dense LU. Throws
// NumericalFailure if the balance residual is not below tol.
NumericSteadyState steady_state_numeric(const RateGenerator& generator, double tol = 1e-12);

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> populations;  // one row per time
};

// Integrates dp/dt = G p from p_init over [0, t_final] and records
// `snapshots` uniformly spaced rows (including both ends). Time is in units
// of 1/rate_scale.
Trajectory relax(const RateGenerator& generator, std::span<const double> p_init,
                 double t_final, double tol = 1e-10, int snapshots = 101);

double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace floqcool
