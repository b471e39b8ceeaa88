#include <doctest.h>

#include <cmath>
#include <vector>

#include "evenfill/errors.hpp"
#include "evenfill/experiments.hpp"
#include "evenfill/greedy.hpp"
#include "evenfill/metrics.hpp"
#include "evenfill/rng.hpp"
#include "support/oracles.hpp"

using namespace evenfill;

TEST_CASE("hand-checked greedy steps") {
  {
    const auto ps = SortedPointSet::from_values({0.5});
    const auto r = next_point(ps, GridKind::EndGrid);
    CHECK(r.chosen.value == 1.0);
    CHECK(r.chosen.rational.num == 2);
    CHECK(r.chosen.rational.den == 2);
    CHECK(r.new_energy == doctest::Approx(0.0).epsilon(1e-15));
  }
  {
    const auto ps = SortedPointSet::from_values({1.0 / 3.0, 0.5});
    const auto r = next_point(ps, GridKind::EndGrid, /*collect_candidates=*/true);
    CHECK(r.chosen.value == 1.0);
    CHECK(r.chosen.rational.num == 3);
    CHECK(r.chosen.rational.den == 3);
    CHECK(r.new_energy == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    REQUIRE(r.candidate_energies.has_value());
    REQUIRE(r.candidate_energies->size() == 3);
    // the slot-0 candidate 1/3 loses with energy 5/6
    CHECK((*r.candidate_energies)[0] == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  }
  {
    const auto ps = SortedPointSet::from_values({1.0});
    const auto r = next_point(ps, GridKind::EndGrid);
    CHECK(r.chosen.value == 0.5);
    CHECK(r.new_energy == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("diagnostics are off by default") {
  const auto r = next_point(SortedPointSet::from_values({0.3, 0.9}), GridKind::EndGrid);
  CHECK(!r.candidate_energies.has_value());
}

TEST_CASE("empty starting set") {
  const auto r = next_point(SortedPointSet{}, GridKind::EndGrid);
  CHECK(r.chosen.value == 1.0);
  CHECK(r.chosen.rational.num == 1);
  CHECK(r.chosen.rational.den == 1);
  CHECK(r.new_energy == 0.0);

  const auto rc = next_point(SortedPointSet{}, GridKind::CenteredGrid);
  CHECK(rc.chosen.value == 0.5);
  CHECK(rc.new_energy == 0.0);

  const auto [set, trace] = extend(SortedPointSet{}, 1, GridKind::EndGrid);
  REQUIRE(set.size() == 1);
  CHECK(set.value(0) == 1.0);
  CHECK(trace.entries.size() == 1);
}

TEST_CASE("greedy step matches the brute-force candidate oracle (end grid)") {
  SplitMix64 rng(31337);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + rng.next_below(200);
    const auto ps = testing::random_set(rng, n);
    const auto ours = next_point(ps, GridKind::EndGrid);
    const auto brute = testing::next_point_oracle_end(ps);
    CHECK(ours.chosen.value == brute.chosen);
    CHECK(std::abs(ours.new_energy - brute.energy) <= 1e-12);
  }
}

TEST_CASE("chosen point honors the structure theorem (end grid)") {
  SplitMix64 rng(424242);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.next_below(100);
    const auto ps = testing::random_set(rng, n);
    const auto r = next_point(ps, GridKind::EndGrid);
    const auto& rat = r.chosen.rational;
    REQUIRE(rat.present());
    CHECK(rat.den == n + 1);
    CHECK(rat.num >= 1);
    CHECK(rat.num <= n + 1);
    CHECK(r.chosen.value == static_cast<double>(rat.num) / static_cast<double>(n + 1));
    // interior slots separate their neighbors: x_k < (k+1)/(n+1) < x_{k+1}
    const std::size_t k = rat.num;  // chosen = k/(n+1)
    if (k >= 2 && k <= n) {
      CHECK(ps.value(k - 2) <= r.chosen.value);
      CHECK(r.chosen.value <= ps.value(k - 1));
    }
  }
}

TEST_CASE("centered grid step matches a dense insertion scan") {
  SplitMix64 rng(555);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 1 + rng.next_below(100);
    const auto ps = testing::random_set(rng, n);
    const auto r = next_point(ps, GridKind::CenteredGrid);
    const std::size_t cells = 10000;
    double grid_min = testing::insert_energy(ps, 0.0, GridKind::CenteredGrid);
    for (std::size_t i = 1; i <= cells; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(cells);
      grid_min = std::min(grid_min, testing::insert_energy(ps, x, GridKind::CenteredGrid));
    }
    // the augmented energy is 1-Lipschitz in the inserted value
    CHECK(r.new_energy <= grid_min + 1e-12);
    CHECK(r.new_energy >= grid_min - 0.5 / static_cast<double>(cells) - 1e-12);
  }
}

TEST_CASE("centered grid hand check: clamping keeps candidates feasible") {
  // all mass on the left: the slot-3 candidate 7/8 is free, and wins
  const auto ps = SortedPointSet::from_values({0.1, 0.15, 0.2});
  const auto r = next_point(ps, GridKind::CenteredGrid);
  CHECK(r.new_energy <= testing::insert_energy(ps, 0.875, GridKind::CenteredGrid) + 1e-15);
}

TEST_CASE("extend grows the set and records a strictly increasing trace") {
  const auto seed = paper_seed();
  const auto [set, trace] = extend(seed, 200, GridKind::EndGrid);
  REQUIRE(set.size() == 202);
  REQUIRE(trace.entries.size() == 200);
  CHECK(trace.start_size == 2);
  for (std::size_t i = 0; i < trace.entries.size(); ++i) {
    CHECK(trace.entries[i].n == 3 + i);
    CHECK(std::isfinite(trace.entries[i].energy));
    if (i > 0) CHECK(trace.entries[i].n > trace.entries[i - 1].n);
  }
  // every step's recorded energy matches a fresh evaluation of the prefix
  const double final_fresh = energy(set, TargetGrid{GridKind::EndGrid, set.size()});
  CHECK(std::abs(trace.entries.back().energy - final_fresh) <= 1e-12);
}

TEST_CASE("extending iid points lowers the star discrepancy") {
  const auto seed = random_uniform_set(50, 2024);
  const double before = star_discrepancy(seed);
  const auto [set, trace] = extend(seed, 60, GridKind::EndGrid);
  const double after = star_discrepancy(set);
  CHECK(after < before);
}

TEST_CASE("average energy lower bound") {
  for (std::size_t n : {100u}) {
    std::vector<double> grid;
    for (std::size_t i = 1; i <= n; ++i) {
      grid.push_back(static_cast<double>(i) / static_cast<double>(n));
    }
    CHECK(average_energy_lower_bound_check(SortedPointSet::from_values(grid)));
  }
  CHECK(average_energy_lower_bound_check(paper_seed()));

  SplitMix64 rng(808);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 1 + rng.next_below(500);
    CHECK(average_energy_lower_bound_check(testing::random_set(rng, n)));
  }
}

TEST_CASE("paper-seed energies stay inside the coarse envelope (short run)") {
  const auto [set, trace] = extend(paper_seed(), 10000, GridKind::EndGrid);
  (void)set;
  for (const auto& e : trace.entries) {
    CHECK(e.energy >= 0.3);
    CHECK(e.energy <= 1.7);
  }
}
