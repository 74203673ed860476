#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "floqcool/error.hpp"
#include "floqcool/experiments.hpp"
#include "floqcool/table.hpp"

using namespace floqcool;

TEST_CASE("figure_preset: caption parameters") {
    for (const auto& [name, width] :
         {std::pair{"fig1", 1.0}, std::pair{"fig2", 0.316}, std::pair{"fig3", 0.1}}) {
        CAPTURE(name);
        const SweepConfig c = figure_preset(name);
        CHECK(c.drive.omega0 == std::numbers::sqrt2);
        CHECK(c.drive.omega1 == 1.0);
        CHECK(c.bath.beta == 0.1);
        CHECK(c.width == width);
        CHECK(c.start == 0.0);
        CHECK(c.stop == 10.0);
        CHECK(c.step == 0.01);
        CHECK_NOTHROW(c.validate());
    }
    CHECK_THROWS_AS(figure_preset("fig4"), InvalidArgument);
}

TEST_CASE("sweep_grid") {
    const auto g = sweep_grid(0.0, 10.0, 0.01);
    REQUIRE(g.size() == 1001);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(g[700] == 7.0);
    CHECK(sweep_grid(1.0, 1.25, 0.1).size() == 3);
    CHECK_THROWS_AS(sweep_grid(0.0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("sweep config validation") {
    SweepConfig c = figure_preset("fig2");
    c.stop = c.start;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = figure_preset("fig2");
    c.step = -0.1;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = figure_preset("fig2");
    c.columns = {"r", "bogus"};
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = figure_preset("fig2");
    c.threads = 0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = figure_preset("fig2");
    c.width = 0.0;
    CHECK_THROWS_AS(sweep(c), InvalidArgument);
}

TEST_CASE("sweep: records are ordered and internally consistent") {
    SweepConfig c = figure_preset("fig3");
    c.start = 6.5;
    c.stop = 8.0;
    const SweepResult res = sweep(c);
    CHECK(std::abs(res.nu - 1.387) < 1e-3);
    REQUIRE(res.records.size() == 151);
    for (std::size_t k = 0; k < res.records.size(); ++k) {
        const SweepRecord& rec = res.records[k];
        if (k > 0) CHECK(rec.center > res.records[k - 1].center);
        CHECK(rec.enhancement.has_value() != rec.unstable());
        CHECK(rec.r > 0.0);
        if (rec.tau_ratio) CHECK((*rec.tau_ratio > 0.0) == (rec.r < 1.0));
    }
    const SweepRecord& mid = res.records[70];  // center 7.2
    CHECK(mid.center == doctest::Approx(7.2));
    CHECK(mid.ell1 == 6);
    CHECK(mid.ell2 == -9);
}

TEST_CASE("sweep: deterministic and thread-count independent") {
    SweepConfig c = figure_preset("fig2");
    c.stop = 4.0;
    auto render = [](const SweepConfig& cfg) {
        std::ostringstream os;
        write_sweep_csv(os, sweep(cfg).records, cfg.columns);
        return os.str();
    };
    const std::string a = render(c);
    CHECK(render(c) == a);
    c.threads = 4;
    CHECK(render(c) == a);
}

TEST_CASE("sweep: unstable drive is rejected before sweeping") {
    SweepConfig c = figure_preset("fig1");
    c.drive = {0.5, 0.3};
    CHECK_THROWS_AS(sweep(c), UnstableDrive);
}
