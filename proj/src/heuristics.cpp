#include "evenfill/heuristics.hpp"

#include <algorithm>
#include <cmath>

#include "evenfill/errors.hpp"

namespace evenfill {

double delta_at(const SortedPointSet& ps, double x) {
  if (ps.empty()) throw ArgumentError("delta_at: empty point set");
  if (!(x >= 0.0 && x <= 1.0)) throw ArgumentError("delta_at: x outside [0,1]");
  return static_cast<double>(ps.count_leq(x)) / static_cast<double>(ps.size()) - x;
}

std::vector<DeltaBreakpoint> discrepancy_breakpoints(const SortedPointSet& ps) {
  if (ps.empty()) throw ArgumentError("discrepancy_breakpoints: empty point set");
  const double nn = static_cast<double>(ps.size());
  std::vector<DeltaBreakpoint> bps;
  std::size_t i = 0;
  while (i < ps.size()) {
    const double v = ps.value(i);
    std::size_t j = i;
    while (j < ps.size() && ps.value(j) == v) ++j;
    DeltaBreakpoint bp;
    bp.x = v;
    bp.left = static_cast<double>(i) / nn - v;
    bp.right = static_cast<double>(j) / nn - v;
    bps.push_back(bp);
    i = j;
  }
  return bps;
}

std::vector<SignSegment> sign_partition(const SortedPointSet& ps) {
  if (ps.empty()) throw ArgumentError("sign_partition: empty point set");
  const std::vector<DeltaBreakpoint> bps = discrepancy_breakpoints(ps);
  std::vector<SignSegment> segs;
  auto emit = [&segs](double lo, double hi, int sign) {
    if (hi > lo) segs.push_back(SignSegment{lo, hi, sign});
  };

  double cursor = 0.0;
  // Value of Delta just right of the cursor; Delta(0) = #{x_i <= 0}/n.
  double delta_right = (!bps.empty() && bps.front().x == 0.0) ? bps.front().right : 0.0;
  std::size_t next_bp = (!bps.empty() && bps.front().x == 0.0) ? 1 : 0;

  while (cursor < 1.0) {
    const double stop = (next_bp < bps.size()) ? bps[next_bp].x : 1.0;
    // Delta(y) = delta_right - (y - cursor) on (cursor, stop); slope -1, so
    // it crosses zero at most once and only downward.
    if (delta_right > 0.0) {
      const double zero = cursor + delta_right;
      if (zero < stop) {
        emit(cursor, zero, +1);
        emit(zero, stop, -1);
      } else {
        emit(cursor, stop, +1);
      }
    } else {
      // delta_right == 0 decays immediately below zero.
      emit(cursor, stop, -1);
    }
    if (next_bp < bps.size()) {
      delta_right = bps[next_bp].right;
      cursor = stop;
      ++next_bp;
    } else {
      cursor = 1.0;
    }
  }
  return segs;
}

UnitPoint predict_next(const SortedPointSet& ps, bool* degenerate) {
  if (ps.empty()) throw ArgumentError("predict_next: empty point set");
  if (degenerate) *degenerate = false;
  const std::vector<SignSegment> segs = sign_partition(ps);
  if (segs.empty()) {
    // Unreachable for finite n (Delta has slope -1 and cannot vanish on an
    // interval); kept as a total-function fallback.
    if (degenerate) *degenerate = true;
    return UnitPoint{1.0, Rational{1, 1}};
  }

  // R(x) = int_0^x sign[Delta]; maximize over segment boundaries.
  double best_x = 0.0;
  double best_r = 0.0;  // R(0) = 0
  double r = 0.0;
  for (const SignSegment& s : segs) {
    r += static_cast<double>(s.sign) * (s.hi - s.lo);
    if (r > best_r) {
      best_r = r;
      best_x = s.hi;
    }
  }
  return UnitPoint{best_x, Rational{}};
}

}  // namespace evenfill
