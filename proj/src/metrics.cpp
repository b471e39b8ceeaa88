#include "evenfill/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "evenfill/errors.hpp"
#include "evenfill/numeric.hpp"

namespace evenfill {

namespace {

void require_nonempty(const SortedPointSet& ps, const char* op) {
  if (ps.empty()) throw ArgumentError(std::string(op) + ": empty point set");
}

// Integral of |c - x| over [a, b], split at x = c when it falls inside.
double abs_linear_integral(double c, double a, double b) {
  if (c <= a) {
    return ((b - c) * (b - c) - (a - c) * (a - c)) / 2.0;
  }
  if (c >= b) {
    return ((c - a) * (c - a) - (c - b) * (c - b)) / 2.0;
  }
  return ((c - a) * (c - a) + (b - c) * (b - c)) / 2.0;
}

}  // namespace

double star_discrepancy(const SortedPointSet& ps) {
  require_nonempty(ps, "star_discrepancy");
  const std::size_t n = ps.size();
  const double nn = static_cast<double>(n);
  double worst = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double centered = static_cast<double>(2 * i - 1) / (2.0 * nn);
    worst = std::max(worst, std::abs(ps.value(i - 1) - centered));
  }
  return 1.0 / (2.0 * nn) + worst;
}

double extreme_discrepancy(const SortedPointSet& ps) {
  require_nonempty(ps, "extreme_discrepancy");
  const std::size_t n = ps.size();
  const double nn = static_cast<double>(n);
  double deficit = 0.0;  // max_i (i/N - x_i)_+
  double excess = 0.0;   // max_i (x_i - (i-1)/N)_+
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = ps.value(i - 1);
    deficit = std::max(deficit, static_cast<double>(i) / nn - x);
    excess = std::max(excess, x - static_cast<double>(i - 1) / nn);
  }
  return deficit + excess;
}

double l1_star_discrepancy(const SortedPointSet& ps) {
  require_nonempty(ps, "l1_star_discrepancy");
  const std::size_t n = ps.size();
  const double nn = static_cast<double>(n);
  NeumaierSum total;
  double left = 0.0;
  std::size_t i = 0;
  while (i < n) {
    // Run of equal values: F jumps by the multiplicity at ps.value(i).
    const double v = ps.value(i);
    if (v > left) {
      total.add(abs_linear_integral(static_cast<double>(i) / nn, left, v));
      left = v;
    }
    std::size_t j = i;
    while (j < n && ps.value(j) == v) ++j;
    i = j;
  }
  if (left < 1.0) {
    total.add(abs_linear_integral(1.0, left, 1.0));
  }
  return total.value();
}

double periodic_l2_discrepancy(const SortedPointSet& ps) {
  require_nonempty(ps, "periodic_l2_discrepancy");
  const std::size_t n = ps.size();
  const double nn = static_cast<double>(n);
  // p is even with p(d) = d^2 - |d| + 1/6 for |d| <= 1, so the double sum
  // collapses to moments of the sorted values:
  //   sum_{i,j} p(x_i - x_j) = 2n*S2 - 2*S1^2 - 2*sum_i (2i-n-1)x_i + n^2/6,
  // and the -1/3 cancels against the (1/n^2) sum of 1/3 terms exactly.
  NeumaierSum s1;
  NeumaierSum s2;
  NeumaierSum pairwise;  // sum_i (2i - n - 1) x_i, 1-indexed
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = ps.value(i - 1);
    s1.add(x);
    s2.add(x * x);
    pairwise.add((2.0 * static_cast<double>(i) - nn - 1.0) * x);
  }
  const double total = 2.0 * nn * s2.value() - 2.0 * s1.value() * s1.value() -
                       2.0 * pairwise.value() + nn * nn / 6.0;
  return total / (nn * nn);
}

DiscrepancyReport discrepancy_report(const SortedPointSet& ps) {
  require_nonempty(ps, "discrepancy_report");
  DiscrepancyReport r;
  r.n = ps.size();
  r.star = star_discrepancy(ps);
  r.extreme = extreme_discrepancy(ps);
  r.l1_star = l1_star_discrepancy(ps);
  r.periodic_l2 = periodic_l2_discrepancy(ps);
  if (r.n >= 2) {
    const double scale = static_cast<double>(r.n) / std::log(static_cast<double>(r.n));
    r.scaled_star = scale * r.star;
    r.scaled_extreme = scale * r.extreme;
  }
  return r;
}

}  // namespace evenfill
