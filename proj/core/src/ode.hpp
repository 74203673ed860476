// ode.hpp: adaptive embedded Runge-Kutta stepping shared by mathieu and
// master_equation. Backed by boost::numeric::odeint (Fehlberg 7(8) pair).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "floqcool/error.hpp"

namespace floqcool::detail {

template <class State>
class AdaptiveIntegrator {
public:
    using Stepper = boost::numeric::odeint::runge_kutta_fehlberg78<State>;
    using Controlled = boost::numeric::odeint::controlled_runge_kutta<Stepper>;

    // `tol` is used both as relative and absolute error bound per step.
    AdaptiveIntegrator(double tol, double initial_step, std::size_t max_steps = 50'000'000)
        : stepper_(boost::numeric::odeint::make_controlled<Stepper>(tol, tol)),
          dt_(initial_step),
          max_steps_(max_steps) {}

    // Advance `x` from `t` to exactly `t_target`; `t` is updated in place.
    template <class System>
    void advance(System&& system, State& x, double& t, double t_target) {
        using boost::numeric::odeint::controlled_step_result;
        const double span = std::max(std::abs(t_target), std::abs(t_target - t));
        const double min_step = 64.0 * std::numeric_limits<double>::epsilon() * span;

        while (t < t_target) {
            const double remaining = t_target - t;
            const bool lands = dt_ >= remaining;
            double dt = lands ? remaining : dt_;
            const double t_before = t;

            if (stepper_.try_step(system, x, t, dt) == controlled_step_result::success) {
                ++steps_;
                if (lands) {
                    t = t_target;
                    // Keep the unclipped proposal when the landing step was short.
                    dt_ = std::max(dt_, dt);
                } else {
                    dt_ = dt;
                }
            } else {
                t = t_before;
                dt_ = dt;
                if (dt_ < min_step) {
                    std::ostringstream os;
                    os << "step size underflow at t = " << t;
                    throw NumericalFailure(os.str(), t);
                }
            }
            if (steps_ > max_steps_) {
                std::ostringstream os;
                os << "step budget of " << max_steps_ << " exhausted at t = " << t;
                throw NumericalFailure(os.str(), t);
            }
        }
    }

    std::size_t steps() const noexcept { return steps_; }

private:
    Controlled stepper_;
    double dt_;
    std::size_t max_steps_;
    std::size_t steps_ = 0;
};

}  // namespace floqcool::detail
