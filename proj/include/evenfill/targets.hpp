#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evenfill/greedy.hpp"
#include "evenfill/point_set.hpp"

namespace evenfill {

// A probability measure on an interval of the extended real line, given by
// pdf / cdf / inverse cdf. Immutable and freely shareable.
struct TargetDistribution {
  std::string kind;
  double support_lo = 0.0;  // -inf allowed
  double support_hi = 1.0;  // +inf allowed
  std::function<double(double)> pdf;
  std::function<double(double)> cdf;
  std::function<double(double)> inv_cdf;
  // Abscissae where the density is allowed to kink (piecewise definitions);
  // consumers force quadrature splits here.
  std::vector<double> knots;
};

TargetDistribution make_uniform(double a, double b);
TargetDistribution make_gaussian(double mean, double stddev);
TargetDistribution make_truncated_gaussian(double mean, double stddev, double a, double b);
// knots: sorted (x, F) pairs with F running from 0 to 1; flat segments are
// inverted to their left endpoint.
TargetDistribution make_piecewise_linear_cdf(std::vector<std::pair<double, double>> knots);
// cdf x^theta on [0,1], theta > 0.
TargetDistribution make_power(double theta);

// Parses the JSON spec format, e.g. {"type":"gaussian","mean":0,"std":1} or
// {"type":"piecewise_linear_cdf","knots":[[0,0],[0.5,0.8],[1,1]]}.
TargetDistribution parse_distribution_spec(const std::string& json_text);

// Standard normal helpers (shared with mean-field tooling).
double standard_normal_cdf(double x);
double standard_normal_pdf(double x);
double standard_normal_inv_cdf(double p);

struct RetargetPlan {
  std::vector<double> original_points;
  SortedPointSet cdf_images;
  std::uint64_t points_needed_estimate = 0;  // lower bound only
  std::uint64_t clamped_count = 0;           // new points clamped off cdf values 0/1
};

struct RetargetResult {
  // Original points (unchanged, in input order) followed by the new points
  // in generation order, mapped back through inv_cdf.
  std::vector<double> combined_points;
  RetargetPlan plan;
  EnergyTrace trace;
};

// Maps the points through dist.cdf, extends in [0,1] with the EndGrid greedy
// rule, and maps only the new points back. Existing points are never moved
// or discarded.
RetargetResult retarget(std::span<const double> points, const TargetDistribution& dist,
                        std::size_t add_count);

// ceil(points_in_region / region_mass): minimum final set size for the
// region's empirical share to not exceed its target mass.
std::uint64_t imbalance_floor(std::uint64_t points_in_region, double region_mass);

}  // namespace evenfill
