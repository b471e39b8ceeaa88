#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "evenfill/greedy.hpp"
#include "evenfill/metrics.hpp"
#include "evenfill/point_set.hpp"

namespace evenfill {

// Shortest round-trip-exact decimal form (17 significant digits).
std::string format_double(double x);

// Point file format: one point per line, decimal value, optional second
// column "num/den" with the exact rational; '#' starts a comment line.
// Values are not range-checked here (real-line sets share the format).
std::vector<UnitPoint> read_points(std::istream& in);
std::vector<UnitPoint> read_point_file(const std::string& path);

void write_points(std::ostream& out, std::span<const UnitPoint> points);
void write_values(std::ostream& out, std::span<const double> values);
void write_point_set(std::ostream& out, const SortedPointSet& ps);

// Energy trace CSV: header "n,chosen,energy", one row per step.
void write_trace_csv(std::ostream& out, const EnergyTrace& trace);
EnergyTrace read_trace_csv(std::istream& in);
EnergyTrace read_trace_file(const std::string& path);

// Discrepancy report CSV: n,star,extreme,l1_star,periodic_l2,scaled_star,
// scaled_extreme (scaled fields empty when absent).
void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const DiscrepancyReport& report);

std::string read_text_file(const std::string& path);

}  // namespace evenfill
