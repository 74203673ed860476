// rates.hpp: Floquet transition spectrum, up/down rate ratio, its plateau
// and instability approximations, quasitemperature and the geometric
// steady state.

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "floqcool/bath.hpp"
#include "floqcool/mathieu.hpp"

namespace floqcool {

struct TransitionEntry {
    int ell;
    double frequency;  // nu + ell
    double weight;     // |v^(ell)|^2
};

// Transition frequencies and Fourier weights for n -> n+1. The coupling
// constant, the (n+1) ladder factor and the golden-rule 2*pi are a common
// prefactor of every partial rate and are not included.
class TransitionSpectrum {
public:
    static TransitionSpectrum from_solution(std::shared_ptr<const FloquetSolution> solution);
    static TransitionSpectrum from_solution(const FloquetSolution& solution);

    // Raw construction: weights[k] belongs to ell = min_ell + k.
    static TransitionSpectrum from_weights(double nu, int min_ell, std::vector<double> weights);

    double nu() const noexcept { return nu_; }
    std::span<const TransitionEntry> entries() const noexcept { return entries_; }
    // Null when built from raw weights.
    const std::shared_ptr<const FloquetSolution>& source() const noexcept { return source_; }

private:
    TransitionSpectrum() = default;

    double nu_ = 0.0;
    std::vector<TransitionEntry> entries_;
    std::shared_ptr<const FloquetSolution> source_;
};

// Quasienergy nu (n + 1/2) reduced into [0, 1).
double quasienergy(int n, double nu);

// Up and down sums of |v^(ell)|^2 N(+-(nu+ell)) J(|nu+ell|), each summed in
// ascending order of magnitude.
struct RateSums {
    double up = 0.0;
    double down = 0.0;
};

RateSums rate_sums(const TransitionSpectrum& spectrum, const ThermalBath& bath,
                   const SpectralDensity& density);

// r = Gamma_{n+1,n} / Gamma_{n,n+1}. Throws DegenerateCoupling if the
// downward sum underflows and SingularityError if a transition frequency
// sits inside the zero-frequency guard.
double ratio_exact(const TransitionSpectrum& spectrum, const ThermalBath& bath,
                   const SpectralDensity& density);

// Single dominant upward sideband ell1 (nu + ell1 > 0): exp(-beta (nu + ell1)).
double ratio_plateau_approx(double nu, int ell1, const ThermalBath& bath);

// Single dominant downward sideband ell2 (nu + ell2 < 0): exp(-beta (nu + ell2)).
double ratio_instability_approx(double nu, int ell2, const ThermalBath& bath);

// tau / T_bath = -beta nu / ln r. Returns +infinity when |r - 1| <= 1e-14.
double quasitemperature_ratio(double r, double nu, const ThermalBath& bath);

struct Populations {
    std::vector<double> p;           // p_n for n = 0..n_max
    double truncation_remainder = 0.0;  // r^{n_max+1}
};

// p_n = (1 - r) r^n. Throws InstabilityError for r >= 1.
Populations steady_distribution(double r, int n_max);

// p0 / P0 with P0 = 1 - exp(-beta omega0). Throws InstabilityError for r >= 1.
double ground_enhancement(double r, const ThermalBath& bath, double omega0);

struct SteadyState {
    double ratio = 0.0;
    double quasitemperature_ratio = 0.0;
    std::optional<Populations> populations;  // present iff stable
    std::optional<double> enhancement;       // present iff stable
    bool stable = false;                     // r < 1
};

SteadyState steady_state(double r, double nu, const ThermalBath& bath, double omega0, int n_max);

struct DominantSidebands {
    std::optional<int> ell1;  // best positive-frequency sideband
    std::optional<int> ell2;  // best negative-frequency sideband
};

// Sidebands maximizing weight * J(|nu + ell|) on each side of zero frequency.
DominantSidebands dominant_ell(const TransitionSpectrum& spectrum, const SpectralDensity& density);

}  // namespace floqcool
