#include "floqcool/table.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "floqcool/error.hpp"

namespace floqcool {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

namespace {

std::string field(const SweepRecord& rec, std::string_view column) {
    auto opt = [](const auto& v) -> std::string {
        if (!v) return {};
        if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, int>) {
            return std::to_string(*v);
        } else {
            return format_number(*v);
        }
    };
    if (column == "omega_c") return format_number(rec.center);
    if (column == "r") return format_number(rec.r);
    if (column == "tau_over_Tbath") return opt(rec.tau_ratio);
    if (column == "p0_over_P0") return opt(rec.enhancement);
    if (column == "ell1") return opt(rec.ell1);
    if (column == "ell2") return opt(rec.ell2);
    if (column == "r_plateau") return opt(rec.r_plateau);
    if (column == "r_instab") return opt(rec.r_instability);
    throw InvalidArgument("unknown output column '" + std::string(column) + "'");
}

}  // namespace

void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records,
                     std::span<const std::string> columns) {
    std::vector<std::string_view> selected;
    for (std::string_view c : kSweepColumns) {
        if (std::find(columns.begin(), columns.end(), c) != columns.end()) selected.push_back(c);
    }
    if (selected.size() != columns.size()) {
        throw InvalidArgument("output columns contain unknown or duplicate names");
    }
    for (std::size_t i = 0; i < selected.size(); ++i) os << (i ? "," : "") << selected[i];
    os << '\n';
    for (const auto& rec : records) {
        for (std::size_t i = 0; i < selected.size(); ++i) {
            os << (i ? "," : "") << field(rec, selected[i]);
        }
        os << '\n';
    }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
    const std::size_t dim = trajectory.populations.empty() ? 0 : trajectory.populations.front().size();
    os << 't';
    for (std::size_t n = 0; n < dim; ++n) os << ",p" << n;
    os << '\n';
    for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
        os << format_number(trajectory.times[k]);
        for (double p : trajectory.populations[k]) os << ',' << format_number(p);
        os << '\n';
    }
}

}  // namespace floqcool
