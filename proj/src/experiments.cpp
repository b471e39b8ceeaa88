#include "evenfill/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "evenfill/baselines.hpp"
#include "evenfill/errors.hpp"
#include "evenfill/io.hpp"
#include "evenfill/rng.hpp"

namespace evenfill {

SortedPointSet paper_seed() {
  return SortedPointSet::from_points(
      {UnitPoint{1.0 / 3.0, Rational{1, 3}}, UnitPoint{0.5, Rational{1, 2}}});
}

SortedPointSet random_uniform_set(std::size_t count, std::uint64_t rng_seed) {
  SplitMix64 rng(rng_seed);
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(rng.next_double());
  return SortedPointSet::from_values(std::move(values));
}

SortedPointSet proposition3_example(std::uint64_t m) {
  if (m == 0) throw ArgumentError("proposition3_example: m must be positive");
  const std::uint64_t n = 4 * m;
  std::vector<UnitPoint> points;
  points.reserve(n);
  for (std::uint64_t k = 1; k <= n; ++k) {
    if (k <= m) {
      points.push_back(UnitPoint{0.0, Rational{0, 1}});
    } else if (k <= 3 * m) {
      points.push_back(UnitPoint{static_cast<double>(k) / static_cast<double>(n), Rational{k, n}});
    } else {
      points.push_back(UnitPoint{1.0, Rational{1, 1}});
    }
  }
  return SortedPointSet::from_points(std::move(points));
}

DynamicsRecord energy_dynamics(const EnergyTrace& trace, std::size_t burn_in) {
  if (trace.entries.size() <= burn_in + 2) {
    throw ArgumentError("energy_dynamics: trace too short for the requested burn-in");
  }
  DynamicsRecord record;
  const std::size_t last = trace.entries.size() - 1;
  for (std::size_t i = burn_in; i + 1 <= last; ++i) {
    record.pairs.emplace_back(trace.entries[i].energy, trace.entries[i + 1].energy);
  }
  for (std::size_t i = burn_in; i + 2 <= last; ++i) {
    const double x = trace.entries[i].energy;
    const double y = trace.entries[i + 1].energy;
    const double z = trace.entries[i + 2].energy;
    record.triples.push_back({x, y, z});
    record.projection.push_back(0.2 * x - 0.35 * y + 0.2 * z);
  }
  return record;
}

std::vector<std::size_t> benchmark_schedule(std::size_t total, bool full_prefix) {
  std::vector<std::size_t> sizes;
  if (full_prefix || total <= 10000) {
    sizes.reserve(total);
    for (std::size_t n = 1; n <= total; ++n) sizes.push_back(n);
    return sizes;
  }
  for (int k = 0;; ++k) {
    const auto n = static_cast<std::size_t>(std::ceil(std::pow(10.0, k / 40.0)));
    if (n > total) break;
    if (sizes.empty() || n != sizes.back()) sizes.push_back(n);
  }
  if (sizes.empty() || sizes.back() != total) sizes.push_back(total);
  return sizes;
}

void benchmark(const RunConfig& config, std::ostream& out) {
  SortedPointSet seed = config.random_seed_points
                            ? random_uniform_set(config.random_seed_points->first,
                                                 config.random_seed_points->second)
                            : config.seed_points;
  if (config.total_points < seed.size()) {
    throw ArgumentError("benchmark: total_points must cover the seed");
  }
  const bool greedy_kind = config.generator == GeneratorKind::Energy ||
                           config.generator == GeneratorKind::Kritzinger ||
                           config.generator == GeneratorKind::PeriodicBernoulli;
  if (greedy_kind && seed.empty()) {
    throw ArgumentError("benchmark: this generator kind needs a non-empty seed");
  }

  const std::vector<std::size_t> schedule =
      benchmark_schedule(config.total_points, config.full_prefix);
  std::size_t schedule_pos = 0;

  write_report_header(out);
  auto emit_if_scheduled = [&](const SortedPointSet& cur) {
    if (schedule_pos >= schedule.size() || cur.size() != schedule[schedule_pos]) return;
    ++schedule_pos;
    DiscrepancyReport r;
    r.n = cur.size();
    if (config.metrics.star) r.star = star_discrepancy(cur);
    if (config.metrics.extreme) r.extreme = extreme_discrepancy(cur);
    if (config.metrics.l1_star) r.l1_star = l1_star_discrepancy(cur);
    if (config.metrics.periodic_l2) r.periodic_l2 = periodic_l2_discrepancy(cur);
    if (r.n >= 2) {
      const double scale = static_cast<double>(r.n) / std::log(static_cast<double>(r.n));
      if (config.metrics.star) r.scaled_star = scale * r.star;
      if (config.metrics.extreme) r.scaled_extreme = scale * r.extreme;
    }
    out << r.n << ',';
    if (config.metrics.star) out << format_double(r.star);
    out << ',';
    if (config.metrics.extreme) out << format_double(r.extreme);
    out << ',';
    if (config.metrics.l1_star) out << format_double(r.l1_star);
    out << ',';
    if (config.metrics.periodic_l2) out << format_double(r.periodic_l2);
    out << ',';
    if (r.scaled_star) out << format_double(*r.scaled_star);
    out << ',';
    if (r.scaled_extreme) out << format_double(*r.scaled_extreme);
    out << '\n';
  };

  // Feed the seed first (prefix metrics cover it too), then generate.
  SortedPointSet cur;
  for (std::size_t i = 0; i < seed.size(); ++i) {
    cur.insert_in_place(seed.point(i));
    emit_if_scheduled(cur);
  }

  std::uint64_t index = 0;  // van der Corput / Kronecker counter
  while (cur.size() < config.total_points) {
    switch (config.generator) {
      case GeneratorKind::Energy: {
        GreedyStepResult r = next_point(cur, config.grid);
        cur.insert_at(r.slot, r.chosen);
        break;
      }
      case GeneratorKind::VanDerCorput:
        cur.insert_in_place(van_der_corput(++index));
        break;
      case GeneratorKind::KroneckerGolden:
        cur.insert_in_place(kronecker_golden(++index));
        break;
      case GeneratorKind::Kritzinger:
        cur.insert_in_place(kritzinger_next(cur));
        break;
      case GeneratorKind::PeriodicBernoulli:
        cur.insert_in_place(periodic_bernoulli_next(cur));
        break;
    }
    emit_if_scheduled(cur);
  }
}

}  // namespace evenfill
