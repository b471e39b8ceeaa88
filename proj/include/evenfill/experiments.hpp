#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "evenfill/greedy.hpp"
#include "evenfill/metrics.hpp"
#include "evenfill/point_set.hpp"

namespace evenfill {

// The {1/3, 1/2} starting set used for reproduction runs.
SortedPointSet paper_seed();

// iid uniform points from a seeded splitmix64 stream, sorted.
SortedPointSet random_uniform_set(std::size_t count, std::uint64_t rng_seed);

// The explicit n = 4m configuration that forces the energy up for one step:
// m copies of 0, then k/n for m < k <= 3m, then m copies of 1.
SortedPointSet proposition3_example(std::uint64_t m);

struct DynamicsRecord {
  std::vector<std::pair<double, double>> pairs;              // (E_n, E_{n+1})
  std::vector<std::array<double, 3>> triples;                // (E_n, E_{n+1}, E_{n+2})
  std::vector<double> projection;                            // 0.2x - 0.35y + 0.2z
};

// Consecutive-energy views of a trace after discarding burn_in entries.
DynamicsRecord energy_dynamics(const EnergyTrace& trace, std::size_t burn_in);

enum class GeneratorKind {
  Energy,
  VanDerCorput,
  KroneckerGolden,
  Kritzinger,
  PeriodicBernoulli,
};

struct MetricSelection {
  bool star = true;
  bool extreme = true;
  bool l1_star = true;
  bool periodic_l2 = true;
};

struct RunConfig {
  SortedPointSet seed_points;  // used when random_seed_count is absent
  GeneratorKind generator = GeneratorKind::Energy;
  GridKind grid = GridKind::EndGrid;  // Energy only
  std::size_t total_points = 0;       // final size, seed included
  MetricSelection metrics;
  bool full_prefix = false;  // force per-prefix evaluation above 1e4 points
  // When set, the seed is `first` iid uniform points drawn with rng seed
  // `second`; an explicit seed is mandatory wherever randomness is used.
  std::optional<std::pair<std::size_t, std::uint64_t>> random_seed_points;
};

// Prefix sizes at which benchmark evaluates metrics: every size up to 1e4
// (or with full_prefix), the ceil(10^(k/40)) schedule above.
std::vector<std::size_t> benchmark_schedule(std::size_t total, bool full_prefix);

// Generates the configured sequence and streams one DiscrepancyReport CSV
// row per scheduled prefix size. Deterministic: identical configs produce
// byte-identical output.
void benchmark(const RunConfig& config, std::ostream& out);

}  // namespace evenfill
