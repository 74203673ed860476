#include "floqcool/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "floqcool/error.hpp"
#include "ode.hpp"

namespace floqcool {

RateGenerator::RateGenerator(double g_up, double g_down, int n_max)
    : g_up_(g_up), g_down_(g_down), n_max_(n_max) {
    if (n_max < 2) throw InvalidArgument("rate generator requires n_max >= 2");
    if (!(g_up >= 0.0) || !std::isfinite(g_up) || !(g_down > 0.0) || !std::isfinite(g_down)) {
        throw InvalidArgument("rate generator requires g_up >= 0 and g_down > 0 (finite)");
    }
}

double RateGenerator::up_rate(int n) const {
    if (n < 0 || n >= n_max_) return 0.0;
    return (n + 1) * g_up_;
}

double RateGenerator::down_rate(int n) const {
    if (n < 0 || n >= n_max_) return 0.0;
    return (n + 1) * g_down_;
}

double RateGenerator::entry(int row, int col) const {
    if (row == col) {
        // Outflow from `col`: up to col+1 and down to col-1.
        return -(up_rate(col) + down_rate(col - 1));
    }
    if (row == col + 1) return up_rate(col);
    if (row == col - 1) return down_rate(row);
    return 0.0;
}

void RateGenerator::apply(std::span<const double> p, std::span<double> out) const {
    const auto dim = static_cast<std::size_t>(dimension());
    if (p.size() != dim || out.size() != dim) {
        throw InvalidArgument("population vector has the wrong dimension");
    }
    for (int n = 0; n <= n_max_; ++n) {
        double gain = 0.0;
        if (n > 0) gain += up_rate(n - 1) * p[static_cast<std::size_t>(n - 1)];
        if (n < n_max_) gain += down_rate(n) * p[static_cast<std::size_t>(n + 1)];
        const double loss = (up_rate(n) + down_rate(n - 1)) * p[static_cast<std::size_t>(n)];
        out[static_cast<std::size_t>(n)] = gain - loss;
    }
}

int default_truncation(double r) {
    constexpr int lo = 16, hi = 512;
    if (!(r > 0.0)) return lo;
    if (r >= 1.0) return hi;
    const double n = std::ceil(std::log(1e-12) / std::log(r));
    int out = static_cast<int>(std::min(n, static_cast<double>(hi)));
    // ceil can land on the boundary where r^n == 1e-12 exactly.
    while (out < hi && std::pow(r, out) >= 1e-12) ++out;
    return std::clamp(out, lo, hi);
}

RateGenerator build_generator(const TransitionSpectrum& spectrum, const ThermalBath& bath,
                              const SpectralDensity& density, int n_max, double rate_scale) {
    if (!(rate_scale > 0.0) || !std::isfinite(rate_scale)) {
        throw InvalidArgument("rate_scale must be positive and finite");
    }
    // Same preconditions as the ratio itself.
    (void)ratio_exact(spectrum, bath, density);
    const RateSums s = rate_sums(spectrum, bath, density);
    return RateGenerator(rate_scale * s.up, rate_scale * s.down, n_max);
}

NumericSteadyState steady_state_numeric(const RateGenerator& generator, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("steady-state tolerance must be positive");
    const int dim = generator.dimension();

    double diag_scale = 0.0;
    for (int n = 0; n < dim; ++n) diag_scale = std::max(diag_scale, -generator.entry(n, n));

    // Rows are rescaled so entries are O(1) regardless of the absolute rates;
    // the last balance equation is redundant and replaced by sum p = 1.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (int row = 0; row < dim - 1; ++row) {
        for (int col = std::max(0, row - 1); col <= std::min(dim - 1, row + 1); ++col) {
            a(row, col) = generator.entry(row, col) / diag_scale;
        }
    }
    a.row(dim - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    rhs(dim - 1) = 1.0;
    const Eigen::VectorXd p = a.partialPivLu().solve(rhs);

    NumericSteadyState out;
    out.populations.assign(p.data(), p.data() + dim);

    std::vector<double> gp(static_cast<std::size_t>(dim));
    generator.apply(out.populations, gp);
    double worst = 0.0;
    for (double x : gp) worst = std::max(worst, std::abs(x));
    out.residual = worst / diag_scale;
    out.truncation_dominated = generator.ratio() >= 1.0;

    if (!(out.residual < tol)) {
        std::ostringstream os;
        os << "steady-state balance residual " << out.residual << " exceeds tolerance " << tol;
        throw NumericalFailure(os.str(), 0.0);
    }
    return out;
}

Trajectory relax(const RateGenerator& generator, std::span<const double> p_init, double t_final,
                 double tol, int snapshots) {
    const auto dim = static_cast<std::size_t>(generator.dimension());
    if (p_init.size() != dim) throw InvalidArgument("initial populations have the wrong dimension");
    if (!(t_final > 0.0) || !std::isfinite(t_final)) throw InvalidArgument("t_final must be positive");
    if (!(tol > 0.0 && tol <= 1e-4)) throw InvalidArgument("relax tolerance must lie in (0, 1e-4]");
    if (snapshots < 2) throw InvalidArgument("relax needs at least two snapshots");
    for (double x : p_init) {
        if (!(x >= 0.0)) throw InvalidArgument("initial populations must be non-negative");
    }
    const double norm0 = std::accumulate(p_init.begin(), p_init.end(), 0.0);
    if (std::abs(norm0 - 1.0) > tol) throw InvalidArgument("initial populations must sum to 1");

    using State = std::vector<double>;
    auto rhs = [&generator](const State& x, State& dxdt, double) { generator.apply(x, dxdt); };

    // Fastest generator timescale bounds the first trial step.
    double fastest = 0.0;
    for (int n = 0; n <= generator.n_max(); ++n) fastest = std::max(fastest, -generator.entry(n, n));
    const double dt0 = std::min(t_final / snapshots, 0.1 / fastest);

    Trajectory traj;
    traj.times.reserve(static_cast<std::size_t>(snapshots));
    traj.populations.reserve(static_cast<std::size_t>(snapshots));

    State x(p_init.begin(), p_init.end());
    double t = 0.0;
    detail::AdaptiveIntegrator<State> integrator(tol, dt0);
    for (int k = 0; k < snapshots; ++k) {
        const double target = t_final * k / (snapshots - 1);
        integrator.advance(rhs, x, t, target);
        const double norm = std::accumulate(x.begin(), x.end(), 0.0);
        if (std::abs(norm - 1.0) > tol) {
            std::ostringstream os;
            os << "probability drifted to " << norm << " at t = " << t;
            throw NumericalFailure(os.str(), t);
        }
        traj.times.push_back(target);
        traj.populations.push_back(x);
    }
    return traj;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw InvalidArgument("total variation needs equal dimensions");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

}  // namespace floqcool
