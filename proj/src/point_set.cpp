#include "evenfill/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "evenfill/errors.hpp"
#include "evenfill/numeric.hpp"

namespace evenfill {

namespace {

// Tolerance tying a rational annotation to its floating value.
constexpr double kRationalSlack = 0x1.0p-50;

}  // namespace

void SortedPointSet::validate_point(const UnitPoint& p) {
  if (!(p.value >= 0.0 && p.value <= 1.0)) {
    throw ArgumentError("point value " + std::to_string(p.value) + " outside [0,1]");
  }
  if (p.rational.present()) {
    if (p.rational.num > p.rational.den) {
      throw ArgumentError("rational annotation has numerator > denominator");
    }
    if (std::abs(p.value - p.rational.as_double()) > kRationalSlack) {
      throw ArgumentError("rational annotation disagrees with floating value");
    }
  }
}

SortedPointSet SortedPointSet::from_values(std::vector<double> values) {
  SortedPointSet ps;
  for (double v : values) validate_point(UnitPoint{v, {}});
  std::sort(values.begin(), values.end());
  ps.rationals_.assign(values.size(), Rational{});
  ps.values_ = std::move(values);
  return ps;
}

SortedPointSet SortedPointSet::from_points(std::vector<UnitPoint> points) {
  for (const UnitPoint& p : points) validate_point(p);
  std::stable_sort(points.begin(), points.end(),
                   [](const UnitPoint& a, const UnitPoint& b) { return a.value < b.value; });
  SortedPointSet ps;
  ps.values_.reserve(points.size());
  ps.rationals_.reserve(points.size());
  for (const UnitPoint& p : points) {
    ps.values_.push_back(p.value);
    ps.rationals_.push_back(p.rational);
  }
  return ps;
}

std::size_t SortedPointSet::count_leq(double x) const {
  return static_cast<std::size_t>(
      std::upper_bound(values_.begin(), values_.end(), x) - values_.begin());
}

std::size_t SortedPointSet::count_less(double x) const {
  return static_cast<std::size_t>(
      std::lower_bound(values_.begin(), values_.end(), x) - values_.begin());
}

SortedPointSet SortedPointSet::insert(const UnitPoint& p) const {
  SortedPointSet out = *this;
  out.insert_in_place(p);
  return out;
}

void SortedPointSet::insert_at(std::size_t index, const UnitPoint& p) {
  validate_point(p);
  if (index > values_.size() || (index > 0 && values_[index - 1] > p.value) ||
      (index < values_.size() && values_[index] < p.value)) {
    throw ArgumentError("insert_at index would break ordering");
  }
  values_.insert(values_.begin() + static_cast<std::ptrdiff_t>(index), p.value);
  rationals_.insert(rationals_.begin() + static_cast<std::ptrdiff_t>(index), p.rational);
}

std::size_t SortedPointSet::insert_in_place(const UnitPoint& p) {
  validate_point(p);
  const std::size_t index = count_leq(p.value);
  values_.insert(values_.begin() + static_cast<std::ptrdiff_t>(index), p.value);
  rationals_.insert(rationals_.begin() + static_cast<std::ptrdiff_t>(index), p.rational);
  return index;
}

double energy(const SortedPointSet& ps, const TargetGrid& grid) {
  if (ps.empty()) throw ArgumentError("energy: empty point set");
  if (grid.n != ps.size()) {
    throw ArgumentError("energy: grid size " + std::to_string(grid.n) +
                        " does not match point count " + std::to_string(ps.size()));
  }
  NeumaierSum sum;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    sum.add(std::abs(ps.value(i) - grid.target(i + 1)));
  }
  return sum.value();
}

double energy_permutation_oracle(std::span<const double> points, const TargetGrid& grid) {
  if (points.empty()) throw ArgumentError("energy_permutation_oracle: empty input");
  if (points.size() > 8) {
    throw ArgumentError("energy_permutation_oracle: refused for more than 8 points");
  }
  if (grid.n != points.size()) {
    throw ArgumentError("energy_permutation_oracle: grid size mismatch");
  }
  std::vector<double> perm(points.begin(), points.end());
  std::sort(perm.begin(), perm.end());
  double best = std::numeric_limits<double>::infinity();
  // next_permutation from the sorted start enumerates every distinct
  // arrangement of the multiset.
  do {
    NeumaierSum sum;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      sum.add(std::abs(perm[i] - grid.target(i + 1)));
    }
    best = std::min(best, sum.value());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace evenfill
