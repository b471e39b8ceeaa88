#include "evenfill/greedy.hpp"

#include <algorithm>
#include <cmath>

#include "evenfill/errors.hpp"
#include "evenfill/numeric.hpp"

namespace evenfill {

namespace {

// Fresh compensated evaluation of the augmented energy with `chosen` placed
// at insertion index `slot`. The sweep value is already accurate, but the
// recomputation pins new_energy to the same arithmetic an independent
// evaluation of the augmented set would produce.
double augmented_energy(const SortedPointSet& ps, const TargetGrid& grid, std::size_t slot,
                        double chosen) {
  NeumaierSum sum;
  for (std::size_t i = 0; i < slot; ++i) {
    sum.add(std::abs(ps.value(i) - grid.target(i + 1)));
  }
  sum.add(std::abs(chosen - grid.target(slot + 1)));
  for (std::size_t i = slot; i < ps.size(); ++i) {
    sum.add(std::abs(ps.value(i) - grid.target(i + 2)));
  }
  return sum.value();
}

}  // namespace

GreedyStepResult next_point(const SortedPointSet& ps, GridKind kind, bool collect_candidates) {
  const std::size_t n = ps.size();
  const TargetGrid grid{kind, n + 1};

  // Shared part of the slot-j energy: contributions of the existing points
  // when the new point occupies position j+1. Start at slot 0 (every
  // existing point i shifted to position i+1), then per slot replace the
  // single term that changes.
  NeumaierSum shared;
  for (std::size_t i = 0; i < n; ++i) {
    shared.add(std::abs(ps.value(i) - grid.target(i + 2)));
  }

  std::optional<std::vector<double>> candidates;
  if (collect_candidates) candidates.emplace();

  std::size_t best_slot = 0;
  double best_value = 0.0;
  UnitPoint best_point;

  for (std::size_t j = 0; j <= n; ++j) {
    if (j > 0) {
      // Point at array index j-1 moves from position j+1 to position j.
      shared.add(-std::abs(ps.value(j - 1) - grid.target(j + 1)));
      shared.add(std::abs(ps.value(j - 1) - grid.target(j)));
    }
    const double target = grid.target(j + 1);
    double slot_value = shared.value();
    UnitPoint point;
    if (kind == GridKind::EndGrid) {
      // Candidate sits exactly on its target; zero residual. The winning
      // slot's candidate is always feasible in [x_j, x_{j+1}].
      point.value = target;
      point.rational = Rational{j + 1, n + 1};
    } else {
      const double lo = (j == 0) ? 0.0 : ps.value(j - 1);
      const double hi = (j == n) ? 1.0 : ps.value(j);
      const double c = std::clamp(target, lo, hi);
      slot_value += std::abs(c - target);
      point.value = c;
      if (c == target) {
        point.rational = Rational{2 * j + 1, 2 * (n + 1)};
      } else if (j > 0 && c == ps.value(j - 1)) {
        point.rational = ps.rational(j - 1);
      } else if (j < n && c == ps.value(j)) {
        point.rational = ps.rational(j);
      }
    }
    if (candidates) candidates->push_back(slot_value);
    if (j == 0 || slot_value < best_value) {
      best_slot = j;
      best_value = slot_value;
      best_point = point;
    }
  }

  GreedyStepResult result;
  result.chosen = best_point;
  result.slot = best_slot;
  result.new_energy = augmented_energy(ps, grid, best_slot, best_point.value);
  result.candidate_energies = std::move(candidates);
  return result;
}

std::pair<SortedPointSet, EnergyTrace> extend(SortedPointSet ps, std::size_t count,
                                              GridKind kind) {
  EnergyTrace trace;
  trace.start_size = ps.size();
  trace.entries.reserve(count);
  for (std::size_t step = 0; step < count; ++step) {
    GreedyStepResult r = next_point(ps, kind);
    ps.insert_at(r.slot, r.chosen);
    trace.entries.push_back(TraceEntry{ps.size(), r.chosen.value, r.new_energy});
  }
  return {std::move(ps), std::move(trace)};
}

bool average_energy_lower_bound_check(const SortedPointSet& ps) {
  if (ps.empty()) throw ArgumentError("average_energy_lower_bound_check: empty point set");
  const double e_now = energy(ps, TargetGrid{GridKind::EndGrid, ps.size()});
  const double e_next = next_point(ps, GridKind::EndGrid).new_energy;
  return (e_now + e_next) / 2.0 >= 0.125 - 1e-12;
}

}  // namespace evenfill
