#include "floqcool_cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <vector>

#include "CLI11.hpp"
#include "floqcool/error.hpp"
#include "floqcool/master_equation.hpp"
#include "floqcool/table.hpp"

namespace floqcool::cli {

namespace {

constexpr const char* kProgram = "floqcool";

// Writes through `write` to standard output ("-") or to a file.
template <class Writer>
int emit(const std::string& path, std::ostream& out, std::ostream& err, Writer&& write) {
    if (path == "-") {
        write(out);
        out.flush();
        return out ? kExitOk : kExitError;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << kProgram << ": cannot open '" << path << "' for writing\n";
        return kExitError;
    }
    write(file);
    file.close();
    if (!file) {
        err << kProgram << ": write to '" << path << "' failed\n";
        return kExitError;
    }
    return kExitOk;
}

int verdict_exit_code(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::Stable: return kExitOk;
        case StabilityVerdict::Unstable: return kExitUnstable;
        case StabilityVerdict::Marginal: return kExitMarginal;
    }
    return kExitError;
}

struct Spectrum {
    double nu;
    std::shared_ptr<const FloquetSolution> solution;
};

// Throws UnstableDrive unless the drive is stable.
Spectrum solve_drive(const RunConfig& c) {
    const SolverOptions& so = c.solver;
    const Stability s =
        classify_stability(integrate_fundamental(c.drive, so.tolerance), so.stability_margin);
    if (s.verdict != StabilityVerdict::Stable) {
        throw UnstableDrive("drive is " + std::string(to_string(s.verdict)) +
                            " (trace = " + format_number(s.trace) + ")");
    }
    Spectrum out;
    out.nu = characteristic_exponent(c.drive, so.tolerance, so.stability_margin);
    FourierOptions fo;
    fo.max_L = so.max_L;
    fo.tail_threshold = so.tail_threshold;
    fo.tol = so.tolerance;
    fo.stability_margin = so.stability_margin;
    out.solution = std::make_shared<const FloquetSolution>(periodic_fourier(c.drive, out.nu, fo));
    return out;
}

}  // namespace

int cmd_exponent(const ExponentArgs& args, std::ostream& out, std::ostream& err) {
    try {
        const DriveParams p{args.omega0, args.omega1};
        const Stability s = classify_stability(integrate_fundamental(p, args.tolerance),
                                               args.stability_margin);
        out << "omega0: " << format_number(p.omega0) << '\n'
            << "omega1: " << format_number(p.omega1) << '\n'
            << "trace: " << format_number(s.trace) << '\n'
            << "verdict: " << to_string(s.verdict) << '\n';
        if (s.verdict != StabilityVerdict::Stable) return verdict_exit_code(s.verdict);

        const double nu = characteristic_exponent(p, args.tolerance, args.stability_margin);
        FourierOptions fo;
        fo.tol = args.tolerance;
        fo.stability_margin = args.stability_margin;
        const FloquetSolution sol = periodic_fourier(p, nu, fo);
        out << "nu: " << format_number(nu) << '\n'
            << "L: " << sol.truncation << '\n'
            << "tail_converged: " << (sol.tail_converged ? "true" : "false") << '\n'
            << "normalization: " << sol.normalization << '\n';

        std::vector<int> ells;
        for (int ell = -sol.truncation; ell <= sol.truncation; ++ell) ells.push_back(ell);
        std::stable_sort(ells.begin(), ells.end(),
                         [&](int a, int b) { return sol.weight(a) > sol.weight(b); });
        ells.resize(std::min<std::size_t>(ells.size(), static_cast<std::size_t>(std::max(0, args.top))));
        out << "weights:\n";
        for (int ell : ells) out << "  " << ell << ' ' << format_number(sol.weight(ell)) << '\n';
        return kExitOk;
    } catch (const Error& e) {
        err << kProgram << ": " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        const SweepConfig sc = to_sweep_config(config);
        const SweepResult res = sweep(sc);
        return emit(config.output.path, out, err,
                    [&](std::ostream& os) { write_sweep_csv(os, res.records, sc.columns); });
    } catch (const ConfigError& e) {
        err << kProgram << ": config error: " << e.what() << '\n';
        return kExitError;
    } catch (const UnstableDrive& e) {
        err << kProgram << ": " << e.what() << '\n';
        return kExitUnstable;
    } catch (const Error& e) {
        err << kProgram << ": " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_relax(const RunConfig& config, const RelaxArgs& args, std::ostream& out,
              std::ostream& err) {
    try {
        validate(config);
        if (!(args.t_final > 0.0)) throw ConfigError("t_final: must be positive");
        const Spectrum sp = solve_drive(config);
        const auto ts = TransitionSpectrum::from_solution(sp.solution);
        const GaussianDensity density(config.density.amplitude, config.density.center,
                                      config.density.width);
        const double r = ratio_exact(ts, config.bath, density);
        const int n_max = config.master.n_max != 0 ? config.master.n_max : default_truncation(r);
        const RateGenerator gen =
            build_generator(ts, config.bath, density, n_max, config.master.rate_scale);
        if (r >= 1.0) {
            err << kProgram << ": warning: r = " << format_number(r)
                << " >= 1; no normalizable steady state, population accumulates at n_max = "
                << n_max << '\n';
        }

        std::vector<double> p0;
        if (args.init_steady) {
            p0 = steady_state_numeric(gen).populations;
        } else {
            if (args.n_init < 0 || args.n_init > n_max) {
                throw ConfigError("n_init: must lie in [0, " + std::to_string(n_max) + "]");
            }
            p0.assign(static_cast<std::size_t>(gen.dimension()), 0.0);
            p0[static_cast<std::size_t>(args.n_init)] = 1.0;
        }
        const double t_final = args.relative_time ? args.t_final / gen.g_down() : args.t_final;
        const Trajectory traj =
            relax(gen, p0, t_final, config.master.tolerance, config.master.snapshots);
        return emit(config.output.path, out, err,
                    [&](std::ostream& os) { write_trajectory_csv(os, traj); });
    } catch (const ConfigError& e) {
        err << kProgram << ": config error: " << e.what() << '\n';
        return kExitError;
    } catch (const UnstableDrive& e) {
        err << kProgram << ": " << e.what() << '\n';
        return kExitUnstable;
    } catch (const Error& e) {
        err << kProgram << ": " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_stability_chart(const ChartArgs& args, std::ostream& out, std::ostream& err) {
    try {
        if (args.omega0_points < 1 || args.omega1_points < 1) {
            throw InvalidArgument("grid needs at least one point per axis");
        }
        auto axis = [](double lo, double hi, int n) {
            std::vector<double> v(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
            return v;
        };
        struct Row {
            double w0, w1;
            Stability s;
        };
        std::vector<Row> rows;
        for (double w0 : axis(args.omega0_min, args.omega0_max, args.omega0_points)) {
            for (double w1 : axis(args.omega1_min, args.omega1_max, args.omega1_points)) {
                const DriveParams p{w0, w1};
                rows.push_back({w0, w1,
                                classify_stability(integrate_fundamental(p, args.tolerance),
                                                   args.stability_margin)});
            }
        }
        return emit(args.path, out, err, [&](std::ostream& os) {
            os << "omega0,omega1,trace,verdict\n";
            for (const Row& row : rows) {
                os << format_number(row.w0) << ',' << format_number(row.w1) << ','
                   << format_number(row.s.trace) << ',' << to_string(row.s.verdict) << '\n';
            }
        });
    } catch (const Error& e) {
        err << kProgram << ": " << e.what() << '\n';
        return kExitError;
    }
}

namespace {

struct RunOverrides {
    std::optional<std::string> config_path;
    std::optional<std::string> figure;
    std::optional<std::string> out;
    std::optional<double> omega0, omega1, beta, width, amplitude, center, start, stop, step, tol;
    std::optional<double> rate_scale;
    std::optional<int> n_max;
    std::optional<unsigned> threads;
    std::vector<std::string> columns;
    bool dump = false;
};

void add_run_options(CLI::App& sub, RunOverrides& o) {
    sub.add_option("--config", o.config_path, "JSON run configuration");
    sub.add_option("--figure", o.figure, "figure preset")->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    sub.add_option("--out", o.out, "output path, '-' for standard output");
    sub.add_option("--omega0", o.omega0, "bare frequency Omega0 (units of the drive frequency)");
    sub.add_option("--omega1", o.omega1, "drive amplitude Omega1");
    sub.add_option("--beta", o.beta, "inverse bath temperature");
    sub.add_option("--width", o.width, "Gaussian density width");
    sub.add_option("--amplitude", o.amplitude, "Gaussian density amplitude");
    sub.add_option("--start", o.start, "first density center");
    sub.add_option("--stop", o.stop, "last density center");
    sub.add_option("--step", o.step, "density center step");
    sub.add_option("--tol", o.tol, "integration tolerance");
    sub.add_option("--n-max", o.n_max, "ladder truncation (0: automatic)");
    sub.add_option("--rate-scale", o.rate_scale, "global rate prefactor");
    sub.add_option("--threads", o.threads, "worker threads");
    sub.add_option("--columns", o.columns, "output columns")->delimiter(',');
    sub.add_flag("--dump-config", o.dump, "print the resolved configuration and exit");
}

RunConfig resolve(const RunOverrides& o) {
    RunConfig c = o.config_path ? load_run_config(*o.config_path) : RunConfig{};
    if (o.figure) apply_figure(c, *o.figure);
    if (o.out) c.output.path = *o.out;
    if (o.omega0) c.drive.omega0 = *o.omega0;
    if (o.omega1) c.drive.omega1 = *o.omega1;
    if (o.beta) c.bath.beta = *o.beta;
    if (o.width) c.density.width = *o.width;
    if (o.amplitude) c.density.amplitude = *o.amplitude;
    if (o.start) c.sweep.start = *o.start;
    if (o.stop) c.sweep.stop = *o.stop;
    if (o.step) c.sweep.step = *o.step;
    if (o.tol) c.solver.tolerance = *o.tol;
    if (o.n_max) c.master.n_max = *o.n_max;
    if (o.rate_scale) c.master.rate_scale = *o.rate_scale;
    if (o.threads) c.threads = *o.threads;
    if (!o.columns.empty()) c.sweep.columns = o.columns;
    validate(c);
    return c;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Floquet-state cooling of a parametrically driven oscillator", kProgram};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kProgram) + " 0.1.0");

    ExponentArgs ea;
    auto* exponent = app.add_subcommand("exponent", "characteristic exponent and Fourier weights");
    exponent->add_option("--omega0", ea.omega0, "bare frequency Omega0")->required();
    exponent->add_option("--omega1", ea.omega1, "drive amplitude Omega1")->required();
    exponent->add_option("--tol", ea.tolerance, "integration tolerance")->capture_default_str();
    exponent->add_option("--margin", ea.stability_margin, "stability margin")->capture_default_str();
    exponent->add_option("--top", ea.top, "Fourier weights to list")->capture_default_str();

    RunOverrides so;
    auto* sweep_cmd = app.add_subcommand("sweep", "sweep the density center and write the table");
    add_run_options(*sweep_cmd, so);

    RunOverrides ro;
    RelaxArgs ra;
    std::optional<double> relax_center;
    auto* relax_cmd = app.add_subcommand("relax", "population relaxation for one density center");
    add_run_options(*relax_cmd, ro);
    relax_cmd->add_option("--center", relax_center, "density center");
    relax_cmd->add_option("--n-init", ra.n_init, "initial Floquet level")->capture_default_str();
    relax_cmd->add_flag("--init-steady", ra.init_steady, "start from the numeric steady state");
    relax_cmd->add_option("--t-final", ra.t_final, "final time (units of 1/rate_scale)")
        ->capture_default_str();
    relax_cmd->add_flag("--relative-time", ra.relative_time, "t-final in units of 1/g_down");

    ChartArgs ca;
    auto* chart = app.add_subcommand("stability-chart", "stability verdicts over an (Omega0, Omega1) grid");
    chart->add_option("--omega0-min", ca.omega0_min)->capture_default_str();
    chart->add_option("--omega0-max", ca.omega0_max)->capture_default_str();
    chart->add_option("--omega0-points", ca.omega0_points)->capture_default_str();
    chart->add_option("--omega1-min", ca.omega1_min)->capture_default_str();
    chart->add_option("--omega1-max", ca.omega1_max)->capture_default_str();
    chart->add_option("--omega1-points", ca.omega1_points)->capture_default_str();
    chart->add_option("--tol", ca.tolerance)->capture_default_str();
    chart->add_option("--margin", ca.stability_margin)->capture_default_str();
    chart->add_option("--out", ca.path, "output path, '-' for standard output")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
    }

    if (exponent->parsed()) return cmd_exponent(ea, out, err);
    if (chart->parsed()) return cmd_stability_chart(ca, out, err);

    const bool is_sweep = sweep_cmd->parsed();
    const RunOverrides& ov = is_sweep ? so : ro;
    RunConfig config;
    try {
        config = resolve(ov);
        if (!is_sweep && relax_center) {
            config.density.center = *relax_center;
            validate(config);
        }
    } catch (const ConfigError& e) {
        err << kProgram << ": config error: " << e.what() << '\n';
        return kExitError;
    }
    if (ov.dump) {
        out << dump_run_config(config);
        return kExitOk;
    }
    return is_sweep ? cmd_sweep(config, out, err) : cmd_relax(config, ra, out, err);
}

}  // namespace floqcool::cli
