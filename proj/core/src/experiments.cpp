#include "floqcool/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "floqcool/error.hpp"

namespace floqcool {

void SweepConfig::validate() const {
    drive.validate();
    bath.validate();
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw InvalidArgument("density amplitude must be positive and finite");
    }
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw InvalidArgument("density width must be positive and finite");
    }
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
        throw InvalidArgument("sweep range requires start < stop");
    }
    if (!(start >= 0.0)) throw InvalidArgument("sweep range must start at a non-negative center");
    if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("sweep step must be positive");
    if (n_max != 0 && n_max < 2) throw InvalidArgument("n_max must be 0 (automatic) or >= 2");
    if (threads == 0) throw InvalidArgument("threads must be >= 1");
    if (columns.empty()) throw InvalidArgument("at least one output column is required");
    for (const auto& c : columns) {
        if (std::find(std::begin(kSweepColumns), std::end(kSweepColumns), c) == std::end(kSweepColumns)) {
            throw InvalidArgument("unknown output column '" + c + "'");
        }
    }
}

std::vector<double> sweep_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(start <= stop)) throw InvalidArgument("invalid sweep grid");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) grid[k] = start + static_cast<double>(k) * step;
    return grid;
}

SweepRecord evaluate_center(const TransitionSpectrum& spectrum, const SweepConfig& config,
                            double center) {
    const GaussianDensity density(config.amplitude, center, config.width);
    const double nu = spectrum.nu();

    SweepRecord rec;
    rec.center = center;
    rec.r = ratio_exact(spectrum, config.bath, density);
    const double tau = quasitemperature_ratio(rec.r, nu, config.bath);
    if (std::isfinite(tau)) rec.tau_ratio = tau;
    if (rec.r < 1.0) rec.enhancement = ground_enhancement(rec.r, config.bath, config.drive.omega0);

    const DominantSidebands dom = dominant_ell(spectrum, density);
    rec.ell1 = dom.ell1;
    rec.ell2 = dom.ell2;
    if (dom.ell1) rec.r_plateau = ratio_plateau_approx(nu, *dom.ell1, config.bath);
    if (dom.ell2) rec.r_instability = ratio_instability_approx(nu, *dom.ell2, config.bath);
    return rec;
}

SweepResult sweep(const SweepConfig& config) {
    config.validate();
    const SolverOptions& so = config.solver;

    const Stability s = classify_stability(integrate_fundamental(config.drive, so.tolerance),
                                           so.stability_margin);
    if (s.verdict != StabilityVerdict::Stable) {
        std::ostringstream os;
        os << "drive (omega0 = " << config.drive.omega0 << ", omega1 = " << config.drive.omega1
           << ") is " << to_string(s.verdict) << " (trace = " << s.trace << ")";
        throw UnstableDrive(os.str());
    }

    SweepResult out;
    out.nu = characteristic_exponent(config.drive, so.tolerance, so.stability_margin);
    FourierOptions fo;
    fo.max_L = so.max_L;
    fo.tail_threshold = so.tail_threshold;
    fo.tol = so.tolerance;
    fo.stability_margin = so.stability_margin;
    out.solution = std::make_shared<const FloquetSolution>(periodic_fourier(config.drive, out.nu, fo));
    const TransitionSpectrum spectrum = TransitionSpectrum::from_solution(out.solution);

    const std::vector<double> grid = sweep_grid(config.start, config.stop, config.step);
    out.records.resize(grid.size());

    const std::size_t workers = std::min<std::size_t>(config.threads, grid.size());
    if (workers <= 1) {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            out.records[k] = evaluate_center(spectrum, config, grid[k]);
        }
        return out;
    }

    // Strided partition; each record slot is written by exactly one worker.
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t k = w; k < grid.size(); k += workers) {
                        out.records[k] = evaluate_center(spectrum, config, grid[k]);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

SweepConfig figure_preset(std::string_view name) {
    SweepConfig c;
    c.drive = {std::numbers::sqrt2, 1.0};
    c.bath = {0.1};
    c.start = 0.0;
    c.stop = 10.0;
    c.step = 0.01;
    if (name == "fig1") {
        c.width = 1.0;
    } else if (name == "fig2") {
        c.width = 0.316;
    } else if (name == "fig3") {
        c.width = 0.1;
    } else {
        throw InvalidArgument("unknown figure preset '" + std::string(name) + "' (fig1, fig2, fig3)");
    }
    return c;
}

}  // namespace floqcool
