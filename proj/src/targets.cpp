#include "evenfill/targets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include <json.hpp>

#include "evenfill/errors.hpp"

namespace evenfill {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Quantile clamp applied when inverse-mapping cdf values of exactly 0 or 1
// on an infinite support end.
constexpr double kEdgeQuantile = 1e-15;

double acklam_initial_guess(double p) {
  // Acklam's rational approximation to the standard normal quantile,
  // |relative error| < 1.15e-9; refined by Newton below.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double standard_normal_pdf(double x) {
  static const double inv_sqrt_2pi = 0.3989422804014326779399461;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double standard_normal_cdf(double x) {
  // erfc keeps full relative accuracy in the left tail.
  return 0.5 * std::erfc(-x * 0.7071067811865475244008444);
}

double standard_normal_inv_cdf(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("normal quantile: p outside [0,1]");
  if (p == 0.0) return -kInf;
  if (p == 1.0) return kInf;
  double x = acklam_initial_guess(p);
  // Newton against the pdf; three steps take the 1e-9 guess to ~1e-16.
  for (int it = 0; it < 3; ++it) {
    const double err = standard_normal_cdf(x) - p;
    x -= err / standard_normal_pdf(x);
  }
  return x;
}

TargetDistribution make_uniform(double a, double b) {
  if (!(a < b)) throw ConfigError("uniform: requires a < b");
  TargetDistribution d;
  d.kind = "uniform";
  d.support_lo = a;
  d.support_hi = b;
  const double width = b - a;
  d.pdf = [a, b, width](double x) { return (x >= a && x <= b) ? 1.0 / width : 0.0; };
  d.cdf = [a, b, width](double x) {
    if (x <= a) return 0.0;
    if (x >= b) return 1.0;
    return (x - a) / width;
  };
  d.inv_cdf = [a, width](double p) { return a + p * width; };
  return d;
}

TargetDistribution make_gaussian(double mean, double stddev) {
  if (!(stddev > 0.0)) throw ConfigError("gaussian: requires std > 0");
  TargetDistribution d;
  d.kind = "gaussian";
  d.support_lo = -kInf;
  d.support_hi = kInf;
  d.pdf = [mean, stddev](double x) { return standard_normal_pdf((x - mean) / stddev) / stddev; };
  d.cdf = [mean, stddev](double x) { return standard_normal_cdf((x - mean) / stddev); };
  d.inv_cdf = [mean, stddev](double p) { return mean + stddev * standard_normal_inv_cdf(p); };
  return d;
}

TargetDistribution make_truncated_gaussian(double mean, double stddev, double a, double b) {
  if (!(stddev > 0.0)) throw ConfigError("truncated_gaussian: requires std > 0");
  if (!(a < b)) throw ConfigError("truncated_gaussian: requires a < b");
  const double fa = standard_normal_cdf((a - mean) / stddev);
  const double fb = standard_normal_cdf((b - mean) / stddev);
  const double mass = fb - fa;
  if (!(mass > 0.0)) throw ConfigError("truncated_gaussian: window has no mass");
  TargetDistribution d;
  d.kind = "truncated_gaussian";
  d.support_lo = a;
  d.support_hi = b;
  d.pdf = [mean, stddev, a, b, mass](double x) {
    if (x < a || x > b) return 0.0;
    return standard_normal_pdf((x - mean) / stddev) / (stddev * mass);
  };
  d.cdf = [mean, stddev, a, b, fa, mass](double x) {
    if (x <= a) return 0.0;
    if (x >= b) return 1.0;
    return (standard_normal_cdf((x - mean) / stddev) - fa) / mass;
  };
  d.inv_cdf = [mean, stddev, a, b, fa, mass](double p) {
    if (p <= 0.0) return a;
    if (p >= 1.0) return b;
    return std::clamp(mean + stddev * standard_normal_inv_cdf(fa + p * mass), a, b);
  };
  return d;
}

TargetDistribution make_piecewise_linear_cdf(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw ConfigError("piecewise_linear_cdf: need at least 2 knots");
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (!(knots[i].first < knots[i + 1].first)) {
      throw ConfigError("piecewise_linear_cdf: knot abscissae must be strictly increasing");
    }
    if (knots[i].second > knots[i + 1].second) {
      throw ConfigError("piecewise_linear_cdf: knot cdf values must be non-decreasing");
    }
  }
  if (knots.front().second != 0.0 || knots.back().second != 1.0) {
    throw ConfigError("piecewise_linear_cdf: cdf must run from 0 to 1");
  }
  TargetDistribution d;
  d.kind = "piecewise_linear_cdf";
  d.support_lo = knots.front().first;
  d.support_hi = knots.back().first;
  for (const auto& k : knots) d.knots.push_back(k.first);

  struct Table {
    std::vector<double> xs;
    std::vector<double> fs;
    // index of the segment containing x
    std::size_t segment_at(double x) const {
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      const auto i = static_cast<std::size_t>(it - xs.begin());
      return std::min(std::max<std::size_t>(i, 1) - 1, xs.size() - 2);
    }
  };
  auto table = std::make_shared<Table>();
  for (const auto& k : knots) {
    table->xs.push_back(k.first);
    table->fs.push_back(k.second);
  }

  d.pdf = [table](double x) {
    if (x < table->xs.front() || x > table->xs.back()) return 0.0;
    const std::size_t i = table->segment_at(x);
    return (table->fs[i + 1] - table->fs[i]) / (table->xs[i + 1] - table->xs[i]);
  };
  d.cdf = [table](double x) {
    if (x <= table->xs.front()) return 0.0;
    if (x >= table->xs.back()) return 1.0;
    const std::size_t i = table->segment_at(x);
    const double t = (x - table->xs[i]) / (table->xs[i + 1] - table->xs[i]);
    return table->fs[i] + t * (table->fs[i + 1] - table->fs[i]);
  };
  d.inv_cdf = [table](double p) {
    if (p <= 0.0) return table->xs.front();
    if (p >= 1.0) return table->xs.back();
    // earliest segment whose right endpoint reaches p; a flat run at p then
    // resolves to its left endpoint
    const auto it = std::lower_bound(table->fs.begin() + 1, table->fs.end(), p);
    const auto i = static_cast<std::size_t>(it - table->fs.begin()) - 1;
    const double rise = table->fs[i + 1] - table->fs[i];
    if (rise == 0.0) return table->xs[i];
    const double t = (p - table->fs[i]) / rise;
    return table->xs[i] + t * (table->xs[i + 1] - table->xs[i]);
  };
  return d;
}

TargetDistribution make_power(double theta) {
  if (!(theta > 0.0)) throw ConfigError("power: requires theta > 0");
  TargetDistribution d;
  d.kind = "power";
  d.support_lo = 0.0;
  d.support_hi = 1.0;
  d.pdf = [theta](double x) {
    if (x < 0.0 || x > 1.0) return 0.0;
    return theta * std::pow(x, theta - 1.0);
  };
  d.cdf = [theta](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return std::pow(x, theta);
  };
  d.inv_cdf = [theta](double p) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    return std::pow(p, 1.0 / theta);
  };
  return d;
}

TargetDistribution parse_distribution_spec(const std::string& json_text) {
  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("distribution spec: invalid JSON: ") + e.what());
  }
  if (!spec.is_object() || !spec.contains("type")) {
    throw ConfigError("distribution spec: expected an object with a \"type\" field");
  }
  const std::string type = spec.at("type").get<std::string>();
  try {
    if (type == "uniform") {
      return make_uniform(spec.value("a", 0.0), spec.value("b", 1.0));
    }
    if (type == "gaussian") {
      return make_gaussian(spec.value("mean", 0.0), spec.value("std", 1.0));
    }
    if (type == "truncated_gaussian") {
      return make_truncated_gaussian(spec.value("mean", 0.0), spec.value("std", 1.0),
                                     spec.at("a").get<double>(), spec.at("b").get<double>());
    }
    if (type == "piecewise_linear_cdf") {
      std::vector<std::pair<double, double>> knots;
      for (const auto& k : spec.at("knots")) {
        knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
      }
      return make_piecewise_linear_cdf(std::move(knots));
    }
    if (type == "power") {
      return make_power(spec.at("theta").get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("distribution spec (" + type + "): " + e.what());
  }
  throw ConfigError("distribution spec: unknown type \"" + type + "\"");
}

RetargetResult retarget(std::span<const double> points, const TargetDistribution& dist,
                        std::size_t add_count) {
  for (double p : points) {
    if (!(p >= dist.support_lo && p <= dist.support_hi)) {
      throw ArgumentError("retarget: point " + std::to_string(p) + " outside support");
    }
  }

  std::vector<double> images;
  images.reserve(points.size());
  for (double p : points) {
    images.push_back(std::clamp(dist.cdf(p), 0.0, 1.0));
  }

  RetargetResult result;
  result.plan.original_points.assign(points.begin(), points.end());
  result.plan.cdf_images = SortedPointSet::from_values(images);

  if (!points.empty()) {
    const auto [lo_it, hi_it] = std::minmax_element(points.begin(), points.end());
    const double mass = dist.cdf(*hi_it) - dist.cdf(*lo_it);
    // A degenerate span (all points coincident) carries no usable estimate.
    result.plan.points_needed_estimate =
        mass > 0.0 ? imbalance_floor(points.size(), std::min(mass, 1.0))
                   : static_cast<std::uint64_t>(points.size());
  }

  auto [extended, trace] = extend(result.plan.cdf_images, add_count, GridKind::EndGrid);
  (void)extended;

  result.combined_points.assign(points.begin(), points.end());
  result.combined_points.reserve(points.size() + add_count);
  const bool open_lo = std::isinf(dist.support_lo);
  const bool open_hi = std::isinf(dist.support_hi);
  for (const TraceEntry& entry : trace.entries) {
    double u = entry.chosen;
    if (open_lo && u <= 0.0) {
      u = kEdgeQuantile;
      ++result.plan.clamped_count;
    } else if (open_hi && u >= 1.0) {
      u = 1.0 - kEdgeQuantile;
      ++result.plan.clamped_count;
    }
    result.combined_points.push_back(dist.inv_cdf(u));
  }
  result.trace = std::move(trace);
  return result;
}

std::uint64_t imbalance_floor(std::uint64_t points_in_region, double region_mass) {
  if (!(region_mass > 0.0 && region_mass <= 1.0)) {
    throw ArgumentError("imbalance_floor: region mass must lie in (0, 1]");
  }
  return static_cast<std::uint64_t>(
      std::ceil(static_cast<double>(points_in_region) / region_mass));
}

}  // namespace evenfill
