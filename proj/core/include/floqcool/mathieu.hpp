// mathieu.hpp: classical Mathieu dynamics of the parametrically driven
// oscillator: monodromy, stability, characteristic exponent and the Fourier
// content of the periodic part of the Floquet solution.
//
// Units: drive frequency, oscillator mass, hbar and k_B are all 1, so every
// frequency is measured in units of the drive frequency and the drive period
// is 2*pi. The equation of motion is
//
//     xi''(t) = -(omega0^2 - omega1^2 cos t) xi(t).

#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <string_view>
#include <vector>

namespace floqcool {

inline constexpr double kDrivePeriod = 2.0 * std::numbers::pi;

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kDefaultStabilityMargin = 1e-9;
inline constexpr int kDefaultMaxL = 64;
inline constexpr double kDefaultTailThreshold = 1e-24;

struct DriveParams {
    double omega0 = 0.0;  // undriven frequency / drive frequency
    double omega1 = 0.0;  // drive strength / drive frequency

    // Throws InvalidArgument unless omega0 > 0, omega1 >= 0, both finite.
    void validate() const;

    friend bool operator==(const DriveParams&, const DriveParams&) = default;
};

// One-period propagator of the real fundamental system. Column j holds
// (xi_j(T), xi_j'(T)) for the initial conditions e_j.
struct Monodromy {
    std::array<std::array<double, 2>, 2> m{};
    double integration_tolerance = 0.0;

    double trace() const noexcept { return m[0][0] + m[1][1]; }
    double determinant() const noexcept { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

Monodromy integrate_fundamental(const DriveParams& params, double tol = kDefaultTolerance);

enum class StabilityVerdict { Stable, Unstable, Marginal };

std::string_view to_string(StabilityVerdict verdict) noexcept;

struct Stability {
    StabilityVerdict verdict = StabilityVerdict::Marginal;
    double trace = 0.0;
};

// Pure trace test: |trace| < 2 - margin is stable, |trace| > 2 + margin
// unstable, anything in between marginal. margin must lie in (0, 1e-3].
Stability classify_stability(const Monodromy& monodromy,
                             double margin = kDefaultStabilityMargin);

struct BranchSample {
    double omega1;
    double nu;
};

// The continuation path behind characteristic_exponent(): accepted samples
// from omega1 = 0 (nu = omega0) to the target drive strength.
std::vector<BranchSample> exponent_branch(const DriveParams& params,
                                          double tol = kDefaultTolerance,
                                          double margin = kDefaultStabilityMargin);

// Characteristic exponent on the branch that connects continuously to
// omega0 as omega1 -> 0. Monodromy eigenvalues fix nu only modulo 1 and up
// to sign, so the branch is followed by continuation in omega1 with
// |delta nu| < 0.25 per accepted step. Throws BranchTrackingError if the
// path meets a non-stable point.
double characteristic_exponent(const DriveParams& params,
                               double tol = kDefaultTolerance,
                               double margin = kDefaultStabilityMargin);

struct FourierOptions {
    int max_L = kDefaultMaxL;
    double tail_threshold = kDefaultTailThreshold;
    double tol = kDefaultTolerance;
    double stability_margin = kDefaultStabilityMargin;
    // Sampling grid is oversample * (smallest power of two >= 4 * max_L).
    int oversample = 1;
};

// Normalization: xi scaled so that i(xi xi'* - xi* xi') = 2 nu, phase chosen
// so that v^(0) is real and non-negative.
inline constexpr std::string_view kWronskianNormalization = "wronskian=2nu,v0_real";

struct FloquetSolution {
    DriveParams params;
    double nu = 0.0;
    int truncation = 0;  // L: coefficients cover ell = -L..L
    bool tail_converged = true;
    std::string_view normalization = kWronskianNormalization;
    std::size_t samples = 0;
    // coefficients[ell + L] = v^(ell)
    std::vector<std::complex<double>> coefficients;

    std::complex<double> coefficient(int ell) const;
    double weight(int ell) const { return std::norm(coefficient(ell)); }

    // v(t) = sum_ell v^(ell) e^{i ell t}
    std::complex<double> periodic_part(double t) const;
    // xi(t) = v(t) e^{i nu t} and its time derivative.
    std::complex<double> solution(double t) const;
    std::complex<double> solution_derivative(double t) const;
    std::complex<double> solution_second_derivative(double t) const;
};

// Fourier coefficients of v(t) = xi(t) e^{-i nu t} from the monodromy
// eigenvector, sampled on a uniform grid over one period. Throws
// DegenerateEigenvector for marginal parameters and InvalidArgument if the
// parameters are unstable or nu does not match the monodromy.
FloquetSolution periodic_fourier(const DriveParams& params, double nu,
                                 const FourierOptions& options = {});

// Residual |xi'' + (omega0^2 - omega1^2 cos t) xi| / max|xi| over a uniform
// grid of `points` instants in one period.
double mathieu_residual(const FloquetSolution& solution, int points = 1000);

}  // namespace floqcool
