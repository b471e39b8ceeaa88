#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace evenfill {

// Exact rational annotation for a point. den == 0 means "no annotation".
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 0;
  bool present() const { return den != 0; }
  double as_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// A point in [0,1]. The floating value is the source of truth for all
// comparisons; the rational, when present, records the exact value (greedy
// points are rationals with known denominator and must not drift over long
// runs).
struct UnitPoint {
  double value = 0.0;
  Rational rational{};
};

enum class GridKind { EndGrid, CenteredGrid };

// Slot targets, 1-indexed: EndGrid slot i -> i/n, CenteredGrid -> (2i-1)/(2n).
struct TargetGrid {
  GridKind kind = GridKind::EndGrid;
  std::size_t n = 0;

  double target(std::size_t i) const {
    if (kind == GridKind::EndGrid) {
      return static_cast<double>(i) / static_cast<double>(n);
    }
    return static_cast<double>(2 * i - 1) / static_cast<double>(2 * n);
  }
};

// Ordered multiset of points in [0,1]. Values and annotations are stored in
// parallel arrays so the hot loops touch a contiguous double array only.
// Immutable by convention after construction: mutating operations either
// return a new value or require exclusive ownership (insert_at).
class SortedPointSet {
public:
  SortedPointSet() = default;

  // Sorts the input; values must lie in [0,1].
  static SortedPointSet from_values(std::vector<double> values);
  // Sorts by value (stable); validates values and rational annotations.
  static SortedPointSet from_points(std::vector<UnitPoint> points);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double value(std::size_t i) const { return values_[i]; }
  const Rational& rational(std::size_t i) const { return rationals_[i]; }
  UnitPoint point(std::size_t i) const { return UnitPoint{values_[i], rationals_[i]}; }

  std::span<const double> values() const { return values_; }

  // Number of points with value <= x / < x.
  std::size_t count_leq(double x) const;
  std::size_t count_less(double x) const;

  // Returns a new set with p added; ties are inserted after existing equal
  // values. p.value must lie in [0,1].
  SortedPointSet insert(const UnitPoint& p) const;

  // In-place insertion at a caller-chosen index for exclusively owned
  // instances (the greedy engine inserts at the slot it swept). index must
  // keep the array sorted.
  void insert_at(std::size_t index, const UnitPoint& p);

  // In-place insertion at the upper-bound position; returns the index.
  std::size_t insert_in_place(const UnitPoint& p);

private:
  static void validate_point(const UnitPoint& p);

  std::vector<double> values_;
  std::vector<Rational> rationals_;
};

// E(ps) = sum_i |x_i - target(i)| with Neumaier compensation.
// Requires ps non-empty and grid.n == ps.size().
double energy(const SortedPointSet& ps, const TargetGrid& grid);

// min over all permutations pi of sum_i |x_pi(i) - target(i)|. Factorial
// reference path, refused for more than 8 points.
double energy_permutation_oracle(std::span<const double> points, const TargetGrid& grid);

}  // namespace evenfill
