#include "floqcool/mathieu.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "floqcool/error.hpp"
#include "ode.hpp"

namespace floqcool {

namespace {

using State = std::array<double, 4>;  // (xi1, xi1', xi2, xi2')
using cplx = std::complex<double>;

constexpr double kTwoPi = kDrivePeriod;
constexpr double kContinuationStep = 0.05;
constexpr double kMaxBranchJump = 0.25;

struct MathieuSystem {
    double omega0_sq;
    double omega1_sq;

    void operator()(const State& x, State& dxdt, double t) const {
        const double k = omega0_sq - omega1_sq * std::cos(t);
        dxdt[0] = x[1];
        dxdt[1] = -k * x[0];
        dxdt[2] = x[3];
        dxdt[3] = -k * x[2];
    }
};

// `tol` bounds the error of the one-period map; local steps run tighter so
// that accumulated error over the period stays below it.
constexpr double kLocalToleranceFactor = 1e-2;

void check_tolerance(double tol) {
    if (!(tol > 0.0 && tol <= 1e-6)) {
        std::ostringstream os;
        os << "integration tolerance must lie in (0, 1e-6], got " << tol;
        throw InvalidArgument(os.str());
    }
}

void check_margin(double margin) {
    if (!(margin > 0.0 && margin <= 1e-3)) {
        std::ostringstream os;
        os << "stability margin must lie in (0, 1e-3], got " << margin;
        throw InvalidArgument(os.str());
    }
}

MathieuSystem system_for(const DriveParams& p) {
    return {p.omega0 * p.omega0, p.omega1 * p.omega1};
}

// Principal exponent in [0, 1/2] from the trace of a stable monodromy.
double principal_exponent(double trace) {
    const double c = std::clamp(0.5 * trace, -1.0, 1.0);
    return std::acos(c) / kTwoPi;
}

}  // namespace

void DriveParams::validate() const {
    if (!std::isfinite(omega0) || !std::isfinite(omega1) || !(omega0 > 0.0) ||
        !(omega1 >= 0.0)) {
        std::ostringstream os;
        os << "drive parameters require omega0 > 0 and omega1 >= 0 (finite), got omega0 = "
           << omega0 << ", omega1 = " << omega1;
        throw InvalidArgument(os.str());
    }
}

Monodromy integrate_fundamental(const DriveParams& params, double tol) {
    params.validate();
    check_tolerance(tol);

    State x{1.0, 0.0, 0.0, 1.0};
    double t = 0.0;
    detail::AdaptiveIntegrator<State> integrator(tol * kLocalToleranceFactor, 1e-2);
    integrator.advance(system_for(params), x, t, kTwoPi);

    Monodromy out;
    out.m = {{{x[0], x[2]}, {x[1], x[3]}}};
    out.integration_tolerance = tol;
    return out;
}

std::string_view to_string(StabilityVerdict verdict) noexcept {
    switch (verdict) {
        case StabilityVerdict::Stable: return "stable";
        case StabilityVerdict::Unstable: return "unstable";
        case StabilityVerdict::Marginal: return "marginal";
    }
    return "unknown";
}

Stability classify_stability(const Monodromy& monodromy, double margin) {
    check_margin(margin);
    const double tr = monodromy.trace();
    const double excess = std::abs(tr) - 2.0;
    StabilityVerdict v = StabilityVerdict::Marginal;
    if (excess < -margin) {
        v = StabilityVerdict::Stable;
    } else if (excess > margin) {
        v = StabilityVerdict::Unstable;
    }
    return {v, tr};
}

std::vector<BranchSample> exponent_branch(const DriveParams& params, double tol, double margin) {
    params.validate();
    check_tolerance(tol);
    check_margin(margin);

    std::vector<BranchSample> path{{0.0, params.omega0}};
    const double target = params.omega1;
    if (target == 0.0) return path;

    const int initial_steps = std::max(1, static_cast<int>(std::ceil(target / kContinuationStep)));
    const double max_step = target / initial_steps;
    double step = max_step;
    double w = 0.0;
    double nu = params.omega0;

    while (w < target) {
        const bool last = w + step >= target * (1.0 - 1e-14);
        const double w_next = last ? target : w + step;

        const Monodromy m = integrate_fundamental({params.omega0, w_next}, tol);
        const Stability s = classify_stability(m, margin);
        if (s.verdict != StabilityVerdict::Stable) {
            std::ostringstream os;
            os << "continuation left the stable region at omega1 = " << w_next << " ("
               << to_string(s.verdict) << ", trace = " << s.trace << ")";
            throw BranchTrackingError(os.str(), w_next);
        }

        // Candidates +-nu0 + k; take the one nearest the previous value.
        const double nu0 = principal_exponent(s.trace);
        const double plus = nu0 + std::round(nu - nu0);
        const double minus = -nu0 + std::round(nu + nu0);
        const double candidate = std::abs(plus - nu) <= std::abs(minus - nu) ? plus : minus;

        if (std::abs(candidate - nu) >= kMaxBranchJump) {
            step *= 0.5;
            if (step < 1e-9 * std::max(1.0, target)) {
                std::ostringstream os;
                os << "branch resolution failed near omega1 = " << w_next
                   << ": exponent jumps by more than " << kMaxBranchJump;
                throw BranchTrackingError(os.str(), w_next);
            }
            continue;
        }

        nu = candidate;
        w = w_next;
        path.push_back({w, nu});
        step = std::min(max_step, 2.0 * step);
    }

    if (!(nu > 0.0)) {
        throw BranchTrackingError("continuation produced a non-positive exponent", target);
    }
    return path;
}

double characteristic_exponent(const DriveParams& params, double tol, double margin) {
    return exponent_branch(params, tol, margin).back().nu;
}

cplx FloquetSolution::coefficient(int ell) const {
    if (ell < -truncation || ell > truncation) return {0.0, 0.0};
    return coefficients[static_cast<std::size_t>(ell + truncation)];
}

cplx FloquetSolution::periodic_part(double t) const {
    cplx sum{0.0, 0.0};
    for (int ell = -truncation; ell <= truncation; ++ell) {
        sum += coefficient(ell) * std::polar(1.0, ell * t);
    }
    return sum;
}

cplx FloquetSolution::solution(double t) const {
    cplx sum{0.0, 0.0};
    for (int ell = -truncation; ell <= truncation; ++ell) {
        sum += coefficient(ell) * std::polar(1.0, (nu + ell) * t);
    }
    return sum;
}

cplx FloquetSolution::solution_derivative(double t) const {
    cplx sum{0.0, 0.0};
    for (int ell = -truncation; ell <= truncation; ++ell) {
        const double f = nu + ell;
        sum += cplx(0.0, f) * coefficient(ell) * std::polar(1.0, f * t);
    }
    return sum;
}

cplx FloquetSolution::solution_second_derivative(double t) const {
    cplx sum{0.0, 0.0};
    for (int ell = -truncation; ell <= truncation; ++ell) {
        const double f = nu + ell;
        sum -= f * f * coefficient(ell) * std::polar(1.0, f * t);
    }
    return sum;
}

FloquetSolution periodic_fourier(const DriveParams& params, double nu,
                                 const FourierOptions& options) {
    params.validate();
    check_tolerance(options.tol);
    if (options.max_L < 8) {
        throw InvalidArgument("periodic_fourier requires max_L >= 8");
    }
    if (options.oversample < 1) {
        throw InvalidArgument("periodic_fourier requires oversample >= 1");
    }
    if (!(options.tail_threshold > 0.0 && options.tail_threshold < 1.0)) {
        throw InvalidArgument("tail threshold must lie in (0, 1)");
    }
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw InvalidArgument("characteristic exponent must be positive and finite");
    }

    std::size_t n = 1;
    while (n < static_cast<std::size_t>(4 * options.max_L)) n <<= 1;
    n *= static_cast<std::size_t>(options.oversample);

    // Fundamental system on the sampling grid, then at T for the monodromy.
    std::vector<State> grid(n);
    State x{1.0, 0.0, 0.0, 1.0};
    double t = 0.0;
    const MathieuSystem sys = system_for(params);
    detail::AdaptiveIntegrator<State> integrator(options.tol * kLocalToleranceFactor, 1e-2);
    for (std::size_t j = 0; j < n; ++j) {
        integrator.advance(sys, x, t, kTwoPi * static_cast<double>(j) / static_cast<double>(n));
        grid[j] = x;
    }
    integrator.advance(sys, x, t, kTwoPi);

    Monodromy mono;
    mono.m = {{{x[0], x[2]}, {x[1], x[3]}}};
    mono.integration_tolerance = options.tol;
    const Stability stab = classify_stability(mono, options.stability_margin);
    if (stab.verdict == StabilityVerdict::Marginal) {
        throw DegenerateEigenvector("marginal monodromy: Floquet eigenvectors coalesce");
    }
    if (stab.verdict == StabilityVerdict::Unstable) {
        throw InvalidArgument("periodic_fourier requires stable drive parameters");
    }

    // Eigenvalues of a 2x2 real matrix with complex-conjugate pair.
    const double a = mono.m[0][0], b = mono.m[0][1], c = mono.m[1][0], d = mono.m[1][1];
    const double half_tr = 0.5 * (a + d);
    const double im = std::sqrt(std::max(0.0, mono.determinant() - half_tr * half_tr));
    const cplx target = std::polar(1.0, kTwoPi * nu);
    const cplx lam_plus{half_tr, im};
    const cplx lam = std::abs(lam_plus - target) <= std::abs(std::conj(lam_plus) - target)
                         ? lam_plus
                         : std::conj(lam_plus);
    if (std::abs(lam - target) > 1e-5) {
        std::ostringstream os;
        os << "nu = " << nu << " is inconsistent with the monodromy (trace " << stab.trace << ")";
        throw InvalidArgument(os.str());
    }

    // Eigenvector (c1, c2) of M for lam; pick the better-conditioned form.
    cplx c1, c2;
    const cplx e1a{b, 0.0}, e1b = lam - a;
    const cplx e2a = lam - d, e2b{c, 0.0};
    if (std::norm(e1a) + std::norm(e1b) >= std::norm(e2a) + std::norm(e2b)) {
        c1 = e1a;
        c2 = e1b;
    } else {
        c1 = e2a;
        c2 = e2b;
    }

    // xi(0) = c1, xi'(0) = c2; Wronskian i(xi xi'* - xi* xi') = -2 Im(c1 c2*).
    const double wronskian = -2.0 * std::imag(c1 * std::conj(c2));
    if (!(wronskian > 0.0)) {
        throw InvalidArgument("selected Floquet solution has non-positive Wronskian");
    }
    const double scale = std::sqrt(2.0 * nu / wronskian);
    c1 *= scale;
    c2 *= scale;

    std::vector<cplx> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double tj = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        const cplx xi = c1 * grid[j][0] + c2 * grid[j][2];
        v[j] = xi * std::polar(1.0, -nu * tj);
    }

    // Direct DFT for |ell| <= max_L; n is at most a few thousand.
    const int max_L = options.max_L;
    std::vector<cplx> full(static_cast<std::size_t>(2 * max_L + 1));
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int ell = -max_L; ell <= max_L; ++ell) {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            // Exact index reduction keeps the twiddle argument small.
            const auto k = static_cast<long long>(ell) * static_cast<long long>(j);
            const long long r = ((k % static_cast<long long>(n)) + static_cast<long long>(n)) %
                                static_cast<long long>(n);
            acc += v[j] * std::polar(1.0, -kTwoPi * static_cast<double>(r) * inv_n);
        }
        full[static_cast<std::size_t>(ell + max_L)] = acc * inv_n;
    }

    if (params.omega1 == 0.0) {
        // Closed form: xi = sqrt(nu/omega0) e^{i omega0 t}, a single harmonic.
        const long long k = std::llround(params.omega0 - nu);
        const double amp = std::sqrt(nu / params.omega0);
        for (std::size_t j = 0; j < n; ++j) {
            const double tj = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
            v[j] = std::polar(amp, static_cast<double>(k) * tj);
        }
        std::fill(full.begin(), full.end(), cplx{0.0, 0.0});
        if (std::abs(k) <= max_L) full[static_cast<std::size_t>(k + max_L)] = amp;
    }

    const cplx v0 = full[static_cast<std::size_t>(max_L)];
    if (std::abs(v0) > 0.0) {
        const cplx phase = std::conj(v0) / std::abs(v0);
        for (auto& z : full) z *= phase;
    }

    double peak = 0.0;
    for (const auto& z : full) peak = std::max(peak, std::norm(z));

    int L = max_L;
    bool converged = false;
    for (int ell = 1; ell <= max_L; ++ell) {
        const double tail = std::max(std::norm(full[static_cast<std::size_t>(max_L + ell)]),
                                     std::norm(full[static_cast<std::size_t>(max_L - ell)]));
        if (tail < options.tail_threshold * peak) {
            L = ell;
            converged = true;
            break;
        }
    }

    FloquetSolution out;
    out.params = params;
    out.nu = nu;
    out.truncation = L;
    out.tail_converged = converged;
    out.samples = n;
    out.coefficients.assign(full.begin() + (max_L - L), full.begin() + (max_L + L + 1));
    return out;
}

double mathieu_residual(const FloquetSolution& solution, int points) {
    if (points < 1) throw InvalidArgument("mathieu_residual requires at least one point");
    const double w0 = solution.params.omega0 * solution.params.omega0;
    const double w1 = solution.params.omega1 * solution.params.omega1;
    double worst = 0.0;
    double scale = 0.0;
    for (int k = 0; k < points; ++k) {
        const double t = kTwoPi * k / points;
        const cplx xi = solution.solution(t);
        const cplx acc = solution.solution_second_derivative(t);
        worst = std::max(worst, std::abs(acc + (w0 - w1 * std::cos(t)) * xi));
        scale = std::max(scale, std::abs(xi));
    }
    return scale > 0.0 ? worst / scale : worst;
}

}  // namespace floqcool
