#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "evenfill/point_set.hpp"

namespace evenfill {

// Outcome of one greedy step on an n-point set.
struct GreedyStepResult {
  UnitPoint chosen;      // the energy-minimizing new point
  std::size_t slot = 0;  // insertion index (existing points strictly before it)
  double new_energy = 0.0;
  // Per-slot augmented energies (slot 0..n); only filled on request, O(n) memory.
  std::optional<std::vector<double>> candidate_energies;
};

struct TraceEntry {
  std::size_t n = 0;     // size after the step
  double chosen = 0.0;   // the point added at this step
  double energy = 0.0;   // E_n of the augmented set
};

// Per-step energies of a greedy run; entries are strictly increasing in n.
struct EnergyTrace {
  std::size_t start_size = 0;
  std::vector<TraceEntry> entries;
};

// Global minimizer of E(x_1..x_n, x) over x in [0,1], computed by the O(n)
// slot sweep: start from the slot-0 sum, then per slot replace the one term
// that changes. For EndGrid the winning candidate (j+1)/(n+1) is always
// feasible in its slot; for CenteredGrid the per-slot candidate is clamped
// into [x_j, x_{j+1}] and its residual added. Empty input is allowed (the
// sole slot-0 candidate is 1 for EndGrid, 1/2 for CenteredGrid).
GreedyStepResult next_point(const SortedPointSet& ps, GridKind kind,
                            bool collect_candidates = false);

// Applies next_point `count` times, recording every step.
std::pair<SortedPointSet, EnergyTrace> extend(SortedPointSet ps, std::size_t count,
                                              GridKind kind);

// Checks (E(ps) + E(ps after one greedy step)) / 2 >= 1/8 - 1e-12 (EndGrid).
bool average_energy_lower_bound_check(const SortedPointSet& ps);

}  // namespace evenfill
