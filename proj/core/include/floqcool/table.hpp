// table.hpp: CSV output for sweep tables and population trajectories.
//
// Numbers use the shortest decimal form that round-trips to the same double;
// absent values are empty fields.

#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "floqcool/experiments.hpp"
#include "floqcool/master_equation.hpp"

namespace floqcool {

std::string format_number(double x);

// Header `omega_c,r,tau_over_Tbath,p0_over_P0,ell1,ell2,r_plateau,r_instab`
// restricted to `columns` (canonical order is kept).
void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records,
                     std::span<const std::string> columns);

// Header `t,p0,p1,...,pN`.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

}  // namespace floqcool
