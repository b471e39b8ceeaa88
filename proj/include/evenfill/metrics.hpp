#pragma once

#include <cstddef>
#include <optional>

#include "evenfill/point_set.hpp"

namespace evenfill {

// One-dimensional discrepancies of a point set. scaled_* are N*D/log(N)
// (natural log) and absent for n < 2.
struct DiscrepancyReport {
  std::size_t n = 0;
  double star = 0.0;
  double extreme = 0.0;
  double l1_star = 0.0;
  double periodic_l2 = 0.0;
  std::optional<double> scaled_star;
  std::optional<double> scaled_extreme;
};

// D_N^* via the order-statistic identity 1/(2N) + max_i |x_i - (2i-1)/(2N)|.
double star_discrepancy(const SortedPointSet& ps);

// D_N (sup over all subintervals) via the two-sided decomposition
// max_i (i/N - x_i)_+ + max_i (x_i - (i-1)/N)_+.
double extreme_discrepancy(const SortedPointSet& ps);

// Exact integral of |F(x) - x| over [0,1] (F the empirical CDF); equals the
// Wasserstein-1 distance to the uniform measure.
double l1_star_discrepancy(const SortedPointSet& ps);

// -1/3 + (1/n^2) sum_{i,j} (1/3 + p(x_i - x_j)) with p the 1-periodic second
// Bernoulli polynomial; evaluated via the sorted O(n) closed form.
double periodic_l2_discrepancy(const SortedPointSet& ps);

DiscrepancyReport discrepancy_report(const SortedPointSet& ps);

}  // namespace evenfill
