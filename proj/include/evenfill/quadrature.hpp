#pragma once

#include <functional>
#include <span>

namespace evenfill {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 60;
};

// Adaptive Simpson on [a, b]. Throws NumericalError (reporting the achieved
// estimate) if the local error bound cannot be met within max_depth.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts = {});

// Adaptive Simpson with the interval pre-split at the given abscissae
// (kinks, fixed points); the tolerance is distributed over the pieces by
// length. Split points outside (a, b) are ignored.
double integrate_with_splits(const std::function<double(double)>& f, double a, double b,
                             std::span<const double> splits,
                             const QuadratureOptions& opts = {});

// Monotone inverse of f on [lo, hi] by bisection + Newton-free refinement to
// ~1e-14; f must be non-decreasing with f(lo) <= y <= f(hi).
double invert_monotone(const std::function<double(double)>& f, double y, double lo, double hi);

}  // namespace evenfill
