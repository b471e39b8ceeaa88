#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "evenfill/point_set.hpp"
#include "evenfill/targets.hpp"

namespace evenfill {

struct FixedPointInfo {
  double x = 0.0;
  // True when Phi - x touches zero without changing sign; such measures
  // technically violate the transversality the theory assumes, so they are
  // reported rather than silently mishandled.
  bool tangential = false;
};

// A probability density on [0,1], bounded and positive in the interior, with
// its CDF, inverse CDF and the fixed-point set of Phi precomputed.
struct MeanFieldMeasure {
  std::function<double(double)> phi;
  std::function<double(double)> Phi;
  std::function<double(double)> Phi_inv;
  double density_lower = 0.0;                // c: min of phi over interior nodes
  double density_upper = 0.0;                // C: max of phi over sampled nodes
  std::vector<FixedPointInfo> fixed_points;  // sorted, always contains 0 and 1
  std::vector<double> knots;                 // forced quadrature split points
  // Subintervals where Phi(x) = x identically (detected on the scan grid).
  // The energy integrals remain well defined, but anything resting on a
  // finite fixed-point set refuses such measures.
  std::vector<std::pair<double, double>> degenerate_intervals;

  bool finitely_many_fixed_points() const { return degenerate_intervals.empty(); }
};

// Builds the measure from a distribution with support exactly [0,1].
// Throws PreconditionError when the density vanishes on interior nodes.
// Diagonal subintervals (Phi = x on a set of positive measure, the uniform
// measure being the extreme case) are recorded, not rejected; the operations
// whose theory needs finitely many fixed points throw on them.
MeanFieldMeasure make_mean_field(const TargetDistribution& dist);

// E(mu) = integral of |x - Phi(x)| phi(x) dx, quadrature split at the fixed
// points (the integrand kinks there); absolute tolerance 1e-10.
double continuous_energy(const MeanFieldMeasure& m);

// The change-of-variables twin: integral of |Phi^{-1}(z) - z| dz.
double continuous_energy_inverse_form(const MeanFieldMeasure& m);

// dE/dx under mass injection at x:
//   int_0^x sign(Phi-t) Phi phi dt + int_x^1 sign(Phi-t) (Phi-1) phi dt
//   + |x - Phi(x)|.
double energy_derivative_at(const MeanFieldMeasure& m, double x);

struct DerivativeMinimum {
  double x_star = 0.0;
  double value = 0.0;
};

// Evaluates the derivative at every fixed point and returns the best; also
// scans a 1e4 grid and throws InvariantViolation if any grid value beats the
// fixed-point minimum by more than 10x the quadrature tolerance (the theory
// says the minimum must sit at a fixed point).
DerivativeMinimum minimize_derivative(const MeanFieldMeasure& m);

struct Theorem3Report {
  double min_value = 0.0;
  double longest_gap_bound = 0.0;        // -|J|^2/4 for the longest constant-sign gap
  double sparse_fixed_point_bound = 0.0; // -1/(4S), S = number of fixed points
  bool all_satisfied = false;
};

Theorem3Report theorem3_bounds_check(const MeanFieldMeasure& m);

// g: [0,1] -> {-1,+1} with finitely many sign changes, given by breakpoints
// 0 = b_0 < ... < b_S = 1 and one sign per interval (adjacent signs differ).
// Optional exact rational annotations per breakpoint enable the exact
// arithmetic path of lemma4_analysis.
struct StepSignFunction {
  std::vector<double> breakpoints;
  std::vector<int> signs;
  std::vector<Rational> breakpoint_rationals;  // empty, or one per breakpoint
};

struct Lemma4Report {
  double x_value = 0.0;    // X = -min h
  double h_min_arg = 0.0;  // breakpoint attaining the minimum of h
  bool longest_interval_ok = false;   // X >= max_k l_k^2 / 4
  bool sum_bound_ok = false;          // sum_{l_k > X} (l_k - X)^2 <= 2X
  bool sign_change_bound_ok = false;  // X >= 1/(4S), S = interval count
  bool exact_arithmetic = false;
};

// h(a) = G(a) - int_0^1 G with G the antiderivative of g; X = -min h over
// breakpoints (h is piecewise linear). Evaluated in exact rational
// arithmetic when every breakpoint carries a rational annotation (falling
// back to floating point with 1e-12 slack on overflow).
Lemma4Report lemma4_analysis(const StepSignFunction& g);

// Minimizes the Lemma-2 functional
//   g(a) = int_0^a sign(z - Phi^{-1}(z)) z dz + int_a^1 sign(...) (z-1) dz
// (a) over fixed points only and (b) over a 1e4 grid joined with the fixed
// points, and reports whether the two minima agree within 1e-6.
bool simplification_chain_check(const MeanFieldMeasure& m);

struct MeanFieldReport {
  double energy = 0.0;
  double min_derivative = 0.0;
  double argmin = 0.0;
  std::vector<FixedPointInfo> fixed_points;
  Theorem3Report bounds;
  bool lemma1_grid_ok = false;
  bool simplification_chain_ok = false;
};

MeanFieldReport build_mean_field_report(const MeanFieldMeasure& m);

}  // namespace evenfill
