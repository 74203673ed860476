#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "floqcool/error.hpp"
#include "floqcool/mathieu.hpp"
#include "oracles/oracles.hpp"

using namespace floqcool;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Frozen from oracle::magnus_trace(sqrt2, 1.0, 8000) (Richardson-extrapolated
// fourth-order Magnus, independent of the odeint path).
constexpr double kTraceSqrt2Drive1 = -1.5162049961012807;
// Frozen from oracle::hill_exponent on the l = 0 closure condition.
constexpr double kNuSqrt2Drive1 = 1.3869366740609519;
constexpr double kNuSqrt2Drive01 = 1.4142110369640331;
// Frozen from oracle::hill_weight_ratio(sqrt2, 1, nu, -1).
constexpr double kWeightRatioMinus1 = 0.083529584566102252;

}  // namespace

TEST_CASE("integrate_fundamental: undriven propagator is a rotation") {
    const Monodromy m = integrate_fundamental({kSqrt2, 0.0});
    const double phase = kSqrt2 * kTwoPi;
    CHECK(m.m[0][0] == doctest::Approx(std::cos(phase)).epsilon(1e-9));
    CHECK(m.m[0][1] == doctest::Approx(std::sin(phase) / kSqrt2).epsilon(1e-9));
    CHECK(m.m[1][0] == doctest::Approx(-kSqrt2 * std::sin(phase)).epsilon(1e-9));
    CHECK(m.m[1][1] == doctest::Approx(std::cos(phase)).epsilon(1e-9));
    CHECK(std::abs(m.determinant() - 1.0) < 1e-10);
    CHECK(m.integration_tolerance == 1e-10);
}

TEST_CASE("integrate_fundamental: driven case is unimodular") {
    const Monodromy m = integrate_fundamental({kSqrt2, 1.0});
    CHECK(std::abs(m.determinant() - 1.0) < 1e-10);
}

TEST_CASE("integrate_fundamental: trace agrees with the Magnus oracle") {
    CHECK(std::abs(oracle::magnus_trace(kSqrt2, 1.0) - kTraceSqrt2Drive1) < 1e-12);
    const Monodromy m = integrate_fundamental({kSqrt2, 1.0});
    CHECK(std::abs(m.trace() - kTraceSqrt2Drive1) < 1e-9);
    const Monodromy tight = integrate_fundamental({kSqrt2, 1.0}, 1e-12);
    CHECK(std::abs(tight.trace() - kTraceSqrt2Drive1) < 1e-11);
}

TEST_CASE("integrate_fundamental: rejects bad input") {
    CHECK_THROWS_AS(integrate_fundamental({0.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(integrate_fundamental({1.0, -0.1}), InvalidArgument);
    CHECK_THROWS_AS(integrate_fundamental({NAN, 0.1}), InvalidArgument);
    CHECK_THROWS_AS(integrate_fundamental({1.0, 0.1}, 1e-5), InvalidArgument);
    CHECK_THROWS_AS(integrate_fundamental({1.0, 0.1}, 0.0), InvalidArgument);
}

TEST_CASE("classify_stability: verdicts") {
    SUBCASE("reference drive is stable") {
        const Stability s = classify_stability(integrate_fundamental({kSqrt2, 1.0}));
        CHECK(s.verdict == StabilityVerdict::Stable);
    }
    SUBCASE("undriven trace") {
        const Stability s = classify_stability(integrate_fundamental({kSqrt2, 0.0}));
        CHECK(s.verdict == StabilityVerdict::Stable);
        CHECK(s.trace == doctest::Approx(2.0 * std::cos(kTwoPi * kSqrt2)).epsilon(1e-9));
    }
    SUBCASE("first resonance tongue") {
        CHECK(oracle::magnus_trace(0.5, 0.3) < -2.0);
        const Stability s = classify_stability(integrate_fundamental({0.5, 0.3}));
        CHECK(s.verdict == StabilityVerdict::Unstable);
    }
    SUBCASE("marginal is reported") {
        Monodromy m;
        m.m = {{{1.0, 0.0}, {0.0, 1.0}}};
        CHECK(classify_stability(m).verdict == StabilityVerdict::Marginal);
        m.m = {{{-1.0 - 1e-12, 0.0}, {0.0, -1.0}}};
        CHECK(classify_stability(m).verdict == StabilityVerdict::Marginal);
    }
    SUBCASE("margin bounds") {
        const Monodromy m = integrate_fundamental({kSqrt2, 1.0});
        CHECK_THROWS_AS(classify_stability(m, 0.0), InvalidArgument);
        CHECK_THROWS_AS(classify_stability(m, 2e-3), InvalidArgument);
    }
}

TEST_CASE("classify_stability: first tongue on omega0 = 1/2") {
    for (int k = 0; k <= 45; ++k) {
        const double w1 = 0.05 + 0.01 * k;
        CAPTURE(w1);
        CHECK(classify_stability(integrate_fundamental({0.5, w1})).verdict ==
              StabilityVerdict::Unstable);
    }
}

TEST_CASE("characteristic_exponent: undriven limit is exact") {
    CHECK(characteristic_exponent({kSqrt2, 0.0}) == kSqrt2);
}

TEST_CASE("characteristic_exponent: reference drive sqrt2, 1") {
    const double nu = characteristic_exponent({kSqrt2, 1.0});
    CHECK(std::abs(nu - 1.387) < 1e-3);
    CHECK(std::abs(nu - kNuSqrt2Drive1) < 1e-9);
}

TEST_CASE("characteristic_exponent: weak drive shifts slightly down") {
    const double nu = characteristic_exponent({kSqrt2, 0.1});
    CHECK(nu < kSqrt2);
    CHECK(std::abs(nu - kNuSqrt2Drive01) < 1e-9);
}

TEST_CASE("characteristic_exponent: instability along the path") {
    try {
        (void)characteristic_exponent({0.5, 0.3});
        FAIL("expected BranchTrackingError");
    } catch (const BranchTrackingError& e) {
        CHECK(e.omega1() > 0.0);
        CHECK(e.omega1() <= 0.3);
    }
}

TEST_CASE("exponent_branch: consecutive samples differ by less than 0.25") {
    std::mt19937_64 rng(20191027);
    std::uniform_real_distribution<double> w0(0.7, 3.0);
    int checked = 0;
    for (int draw = 0; draw < 40; ++draw) {
        const DriveParams p{w0(rng), 1.0};
        std::vector<BranchSample> path;
        try {
            path = exponent_branch(p);
        } catch (const BranchTrackingError&) {
            continue;
        }
        ++checked;
        CHECK(path.front().omega1 == 0.0);
        CHECK(path.front().nu == p.omega0);
        CHECK(path.back().omega1 == p.omega1);
        for (std::size_t k = 1; k < path.size(); ++k) {
            CHECK(std::abs(path[k].nu - path[k - 1].nu) < 0.25);
            CHECK(path[k].omega1 > path[k - 1].omega1);
        }
    }
    CHECK(checked > 10);
}

TEST_CASE("property: monodromy is unimodular for random drives") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> w0(0.1, 3.0), w1(0.0, 2.0);
    for (int draw = 0; draw < 100; ++draw) {
        const DriveParams p{w0(rng), w1(rng)};
        const Monodromy m = integrate_fundamental(p);
        CAPTURE(p.omega0);
        CAPTURE(p.omega1);
        CHECK(std::abs(m.determinant() - 1.0) < 100.0 * m.integration_tolerance);
    }
}

TEST_CASE("property: undriven exactness for omega0 in (0, 5]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> w0(0.05, 5.0);
    for (int draw = 0; draw < 50; ++draw) {
        const double omega0 = w0(rng);
        CAPTURE(omega0);
        CHECK(characteristic_exponent({omega0, 0.0}) == omega0);
        const Monodromy m = integrate_fundamental({omega0, 0.0});
        const double ph = omega0 * kTwoPi;
        CHECK(std::abs(m.m[0][0] - std::cos(ph)) < 1e-10);
        CHECK(std::abs(m.m[0][1] - std::sin(ph) / omega0) < 1e-10);
        CHECK(std::abs(m.m[1][0] + omega0 * std::sin(ph)) < 1e-10);
        CHECK(std::abs(m.m[1][1] - std::cos(ph)) < 1e-10);
    }
}

TEST_CASE("periodic_fourier: undriven solution is a single harmonic") {
    const FloquetSolution s = periodic_fourier({kSqrt2, 0.0}, kSqrt2);
    CHECK(s.coefficient(0).real() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(s.coefficient(0).imag()) < 1e-15);
    for (int ell = -s.truncation; ell <= s.truncation; ++ell) {
        if (ell != 0) CHECK(std::abs(s.coefficient(ell)) < 1e-9);
    }
    CHECK(s.normalization == kWronskianNormalization);
}

TEST_CASE("periodic_fourier: reference drive against the Hill recurrence") {
    const double nu = characteristic_exponent({kSqrt2, 1.0});
    const FloquetSolution s = periodic_fourier({kSqrt2, 1.0}, nu);
    CHECK(s.tail_converged);
    CHECK(s.truncation >= 9);
    CHECK(s.truncation <= 12);
    const double ratio = s.weight(-1) / s.weight(0);
    CHECK(ratio == doctest::Approx(kWeightRatioMinus1).epsilon(1e-8));
    // Every weight above 1e-20 of the peak matches the recurrence.
    for (int ell = -8; ell <= 6; ++ell) {
        CAPTURE(ell);
        const double want = oracle::hill_weight_ratio(kSqrt2, 1.0, kNuSqrt2Drive1, ell);
        CHECK(s.weight(ell) / s.weight(0) == doctest::Approx(want).epsilon(1e-3));
    }
}

TEST_CASE("periodic_fourier: doubled sampling agrees") {
    const DriveParams p{kSqrt2, 1.0};
    const double nu = characteristic_exponent(p);
    FourierOptions base;
    FourierOptions doubled;
    doubled.oversample = 2;
    const FloquetSolution a = periodic_fourier(p, nu, base);
    const FloquetSolution b = periodic_fourier(p, nu, doubled);
    CHECK(b.samples == 2 * a.samples);
    double peak = 0.0;
    for (int ell = -a.truncation; ell <= a.truncation; ++ell) peak = std::max(peak, std::abs(a.coefficient(ell)));
    for (int ell = -a.truncation; ell <= a.truncation; ++ell) {
        CAPTURE(ell);
        CHECK(std::abs(a.coefficient(ell) - b.coefficient(ell)) < 1e-10 * peak);
    }
}

TEST_CASE("periodic_fourier: reconstruction satisfies the Mathieu equation") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> w0(0.8, 2.5), w1(0.0, 1.2);
    int checked = 0;
    for (int draw = 0; draw < 20; ++draw) {
        const DriveParams p{w0(rng), w1(rng)};
        double nu = 0.0;
        try {
            nu = characteristic_exponent(p);
        } catch (const BranchTrackingError&) {
            continue;
        }
        ++checked;
        const FloquetSolution s = periodic_fourier(p, nu);
        CAPTURE(p.omega0);
        CAPTURE(p.omega1);
        CHECK(mathieu_residual(s, 1000) < 1e-8);
        // Wronskian normalization survives the round trip through the series.
        const auto xi = s.solution(0.0);
        const auto dxi = s.solution_derivative(0.0);
        const double w = -2.0 * std::imag(xi * std::conj(dxi));
        CHECK(w == doctest::Approx(2.0 * nu).epsilon(1e-8));
        double peak = 0.0;
        for (int ell = -s.truncation; ell <= s.truncation; ++ell) peak = std::max(peak, s.weight(ell));
        CHECK(std::max(s.weight(-s.truncation), s.weight(s.truncation)) < kDefaultTailThreshold * peak);
    }
    CHECK(checked > 5);
}

TEST_CASE("periodic_fourier: error paths") {
    const double nu = characteristic_exponent({kSqrt2, 1.0});
    FourierOptions small;
    small.max_L = 4;
    CHECK_THROWS_AS(periodic_fourier({kSqrt2, 1.0}, nu, small), InvalidArgument);
    CHECK_THROWS_AS(periodic_fourier({kSqrt2, 1.0}, 1.2), InvalidArgument);
    CHECK_THROWS_AS(periodic_fourier({0.5, 0.3}, 0.5), InvalidArgument);
    // omega0 = 1/2 undriven: trace = -2, eigenvectors coalesce.
    CHECK_THROWS_AS(periodic_fourier({0.5, 0.0}, 0.5), DegenerateEigenvector);
}

TEST_CASE("periodic_fourier: unconverged tail is flagged") {
    const double nu = characteristic_exponent({kSqrt2, 1.0});
    FourierOptions o;
    o.max_L = 8;
    o.tail_threshold = 1e-30;
    const FloquetSolution s = periodic_fourier({kSqrt2, 1.0}, nu, o);
    CHECK_FALSE(s.tail_converged);
    CHECK(s.truncation == 8);
}
