#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "floqcool/error.hpp"
#include "ode.hpp"

using floqcool::NumericalFailure;
using floqcool::detail::AdaptiveIntegrator;

TEST_CASE("adaptive integrator: exponential decay to tolerance") {
    using State = std::array<double, 1>;
    State x{1.0};
    double t = 0.0;
    AdaptiveIntegrator<State> integ(1e-12, 1e-3);
    integ.advance([](const State& y, State& dy, double) { dy[0] = -y[0]; }, x, t, 3.0);
    CHECK(t == 3.0);
    CHECK(x[0] == doctest::Approx(std::exp(-3.0)).epsilon(1e-11));
    CHECK(integ.steps() > 0);
}

TEST_CASE("adaptive integrator: lands exactly on intermediate targets") {
    using State = std::vector<double>;
    State x{0.0, 1.0};
    double t = 0.0;
    AdaptiveIntegrator<State> integ(1e-12, 0.5);
    auto osc = [](const State& y, State& dy, double) {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    for (int k = 1; k <= 7; ++k) {
        integ.advance(osc, x, t, 0.3 * k);
        CHECK(t == 0.3 * k);
        CHECK(x[0] == doctest::Approx(std::sin(0.3 * k)).epsilon(1e-10));
    }
}

TEST_CASE("adaptive integrator: finite-time blow-up is a numerical failure") {
    using State = std::array<double, 1>;
    State x{1.0};
    double t = 0.0;
    AdaptiveIntegrator<State> integ(1e-10, 1e-2);
    try {
        integ.advance([](const State& y, State& dy, double) { dy[0] = y[0] * y[0]; }, x, t, 2.0);
        FAIL("expected NumericalFailure");
    } catch (const NumericalFailure& e) {
        // y = 1/(1 - t) blows up at t = 1.
        CHECK(e.time_reached() == doctest::Approx(1.0).epsilon(1e-3));
    }
}
