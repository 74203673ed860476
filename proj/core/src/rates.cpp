#include "floqcool/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "floqcool/error.hpp"

namespace floqcool {

namespace {

double sum_ascending(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end(),
              [](double a, double b) { return std::abs(a) < std::abs(b); });
    double s = 0.0;
    for (double x : terms) s += x;
    return s;
}

}  // namespace

TransitionSpectrum TransitionSpectrum::from_solution(std::shared_ptr<const FloquetSolution> solution) {
    if (!solution) throw InvalidArgument("transition spectrum needs a Floquet solution");
    TransitionSpectrum ts;
    ts.nu_ = solution->nu;
    const int L = solution->truncation;
    ts.entries_.reserve(static_cast<std::size_t>(2 * L + 1));
    for (int ell = -L; ell <= L; ++ell) {
        ts.entries_.push_back({ell, solution->nu + ell, solution->weight(ell)});
    }
    ts.source_ = std::move(solution);
    return ts;
}

TransitionSpectrum TransitionSpectrum::from_solution(const FloquetSolution& solution) {
    return from_solution(std::make_shared<const FloquetSolution>(solution));
}

TransitionSpectrum TransitionSpectrum::from_weights(double nu, int min_ell, std::vector<double> weights) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw InvalidArgument("transition spectrum requires nu > 0");
    }
    TransitionSpectrum ts;
    ts.nu_ = nu;
    ts.entries_.reserve(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (!(weights[k] >= 0.0) || !std::isfinite(weights[k])) {
            throw InvalidArgument("Fourier weights must be non-negative and finite");
        }
        const int ell = min_ell + static_cast<int>(k);
        ts.entries_.push_back({ell, nu + ell, weights[k]});
    }
    return ts;
}

double quasienergy(int n, double nu) {
    if (n < 0) throw InvalidArgument("quasienergy requires n >= 0");
    if (!(nu > 0.0)) throw InvalidArgument("quasienergy requires nu > 0");
    const double e = nu * (n + 0.5);
    double reduced = e - std::floor(e);
    if (reduced >= 1.0) reduced = 0.0;
    return reduced;
}

RateSums rate_sums(const TransitionSpectrum& spectrum, const ThermalBath& bath,
                   const SpectralDensity& density) {
    bath.validate();
    std::vector<double> up, down;
    up.reserve(spectrum.entries().size());
    down.reserve(spectrum.entries().size());
    for (const auto& e : spectrum.entries()) {
        if (e.weight == 0.0) continue;
        const double j = density_at(density, e.frequency);
        if (j == 0.0) continue;
        up.push_back(e.weight * occupation(bath, e.frequency) * j);
        down.push_back(e.weight * occupation(bath, -e.frequency) * j);
    }
    return {sum_ascending(up), sum_ascending(down)};
}

double ratio_exact(const TransitionSpectrum& spectrum, const ThermalBath& bath,
                   const SpectralDensity& density) {
    const RateSums s = rate_sums(spectrum, bath, density);
    if (!(s.down >= std::numeric_limits<double>::min())) {
        throw DegenerateCoupling("rate sums underflow: no sideband couples to the bath density");
    }
    return s.up / s.down;
}

double ratio_plateau_approx(double nu, int ell1, const ThermalBath& bath) {
    bath.validate();
    const double f = nu + ell1;
    if (!(f > 0.0)) {
        std::ostringstream os;
        os << "plateau approximation needs nu + ell1 > 0, got " << f;
        throw DomainError(os.str());
    }
    return std::exp(-bath.beta * f);
}

double ratio_instability_approx(double nu, int ell2, const ThermalBath& bath) {
    bath.validate();
    const double f = nu + ell2;
    if (!(f < 0.0)) {
        std::ostringstream os;
        os << "instability approximation needs nu + ell2 < 0, got " << f;
        throw DomainError(os.str());
    }
    return std::exp(-bath.beta * f);
}

double quasitemperature_ratio(double r, double nu, const ThermalBath& bath) {
    bath.validate();
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("quasitemperature requires r > 0");
    if (std::abs(r - 1.0) <= 1e-14) return std::numeric_limits<double>::infinity();
    return -bath.beta * nu / std::log(r);
}

Populations steady_distribution(double r, int n_max) {
    if (n_max < 1) throw InvalidArgument("steady distribution requires n_max >= 1");
    if (!(r >= 0.0)) throw InvalidArgument("steady distribution requires r >= 0");
    if (r >= 1.0) {
        throw InstabilityError("r >= 1: the ladder has no normalizable steady state", r);
    }
    Populations out;
    out.p.resize(static_cast<std::size_t>(n_max) + 1);
    double rn = 1.0;
    for (auto& p : out.p) {
        p = (1.0 - r) * rn;
        rn *= r;
    }
    out.truncation_remainder = rn;
    return out;
}

double ground_enhancement(double r, const ThermalBath& bath, double omega0) {
    bath.validate();
    if (!(omega0 > 0.0)) throw InvalidArgument("ground enhancement requires omega0 > 0");
    if (!(r >= 0.0)) throw InvalidArgument("ground enhancement requires r >= 0");
    if (r >= 1.0) {
        throw InstabilityError("r >= 1: ground-state population is not defined", r);
    }
    return (1.0 - r) / -std::expm1(-bath.beta * omega0);
}

SteadyState steady_state(double r, double nu, const ThermalBath& bath, double omega0, int n_max) {
    SteadyState s;
    s.ratio = r;
    s.quasitemperature_ratio = quasitemperature_ratio(r, nu, bath);
    s.stable = r < 1.0;
    if (s.stable) {
        s.populations = steady_distribution(r, n_max);
        s.enhancement = ground_enhancement(r, bath, omega0);
    }
    return s;
}

DominantSidebands dominant_ell(const TransitionSpectrum& spectrum, const SpectralDensity& density) {
    DominantSidebands out;
    double best_up = 0.0, best_down = 0.0;
    for (const auto& e : spectrum.entries()) {
        const double score = e.weight * density_at(density, e.frequency);
        if (!(score > 0.0)) continue;
        if (e.frequency > 0.0 && score > best_up) {
            best_up = score;
            out.ell1 = e.ell;
        } else if (e.frequency < 0.0 && score > best_down) {
            best_down = score;
            out.ell2 = e.ell;
        }
    }
    return out;
}

}  // namespace floqcool
