#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "floqcool/error.hpp"
#include "floqcool/table.hpp"

using namespace floqcool;

TEST_CASE("format_number: shortest round trip") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(7.0) == "7");
    CHECK(format_number(-2.5e-22) == "-2.5e-22");
    CHECK(format_number(INFINITY) == "inf");
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> mant(-1.0, 1.0), ex(-300.0, 300.0);
    for (int draw = 0; draw < 1000; ++draw) {
        const double x = mant(rng) * std::pow(10.0, ex(rng));
        CHECK(std::stod(format_number(x)) == x);
    }
}

TEST_CASE("write_sweep_csv: header, order and empty fields") {
    SweepRecord a;
    a.center = 7.2;
    a.r = 0.5;
    a.tau_ratio = 0.25;
    a.enhancement = 3.5;
    a.ell1 = 6;
    a.ell2 = -9;
    a.r_plateau = 0.48;
    a.r_instability = 2.14;
    SweepRecord b;
    b.center = 7.3;
    b.r = 1.2;
    b.ell1 = 6;
    const std::vector<SweepRecord> recs{a, b};
    const std::vector<std::string> all(std::begin(kSweepColumns), std::end(kSweepColumns));

    std::ostringstream os;
    write_sweep_csv(os, recs, all);
    CHECK(os.str() ==
          "omega_c,r,tau_over_Tbath,p0_over_P0,ell1,ell2,r_plateau,r_instab\n"
          "7.2,0.5,0.25,3.5,6,-9,0.48,2.14\n"
          "7.3,1.2,,,6,,,\n");

    std::ostringstream sub;
    write_sweep_csv(sub, recs, std::vector<std::string>{"r", "omega_c"});
    CHECK(sub.str() == "omega_c,r\n7.2,0.5\n7.3,1.2\n");

    std::ostringstream bad;
    CHECK_THROWS_AS(write_sweep_csv(bad, recs, std::vector<std::string>{"r", "r"}), InvalidArgument);
    CHECK_THROWS_AS(write_sweep_csv(bad, recs, std::vector<std::string>{"x"}), InvalidArgument);
}

TEST_CASE("write_trajectory_csv") {
    Trajectory t;
    t.times = {0.0, 0.5};
    t.populations = {{1.0, 0.0, 0.0}, {0.75, 0.125, 0.125}};
    std::ostringstream os;
    write_trajectory_csv(os, t);
    CHECK(os.str() == "t,p0,p1,p2\n0,1,0,0\n0.5,0.75,0.125,0.125\n");
}
