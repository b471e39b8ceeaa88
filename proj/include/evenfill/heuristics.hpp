#pragma once

#include <cstddef>
#include <vector>

#include "evenfill/point_set.hpp"

namespace evenfill {

// One breakpoint of the piecewise-linear discrepancy function
// Delta(x) = #{x_i <= x}/n - x (slope -1 between points, jump 1/n at each
// point, multiplicity counted).
struct DeltaBreakpoint {
  double x = 0.0;
  double left = 0.0;   // limit from below
  double right = 0.0;  // value at x (jump included)
};

// Delta(x) with <=-comparison, O(log n). x must lie in [0,1].
double delta_at(const SortedPointSet& ps, double x);

// Breakpoints of Delta at the distinct point values.
std::vector<DeltaBreakpoint> discrepancy_breakpoints(const SortedPointSet& ps);

// The sawtooth family h_x(y) = y for y <= x, y - 1 for y > x.
inline double sawtooth(double x, double y) { return y <= x ? y : y - 1.0; }

// Maximal intervals on which sign(Delta) is constant, covering (0,1).
// Boundaries are the point values and the exact zeros of the linear pieces;
// sign is +1 or -1 on each interval (Delta has slope -1, so it never
// vanishes on a set of positive measure).
struct SignSegment {
  double lo = 0.0;
  double hi = 0.0;
  int sign = 0;
};
std::vector<SignSegment> sign_partition(const SortedPointSet& ps);

// First-order predictor of the next greedy point: the exact argmax over x of
// integral_0^1 sign[Delta(y)] h_x(y) dy. Since h_x(y) = y - 1{y > x}, the
// objective is a constant plus the running integral R(x) = int_0^x
// sign[Delta], a +-1-slope piecewise-linear function maximized at a segment
// boundary; ties break toward the smaller x. Diagnostic only; never feeds
// back into greedy generation.
UnitPoint predict_next(const SortedPointSet& ps, bool* degenerate = nullptr);

}  // namespace evenfill
