#pragma once

#include <cstdint>

#include "evenfill/point_set.hpp"

namespace evenfill {

// Radical inverse of i in base 2, i >= 1. Values are exact dyadic rationals.
UnitPoint van_der_corput(std::uint64_t i);

// Fractional part of i * golden ratio, i >= 1, accurate to well below 1e-12
// for i up to 1e6 (64-bit fixed-point multiplication, see the source).
UnitPoint kronecker_golden(std::uint64_t i);

// Next point of the greedy sequence minimizing the L2 star discrepancy of
// the augmented set. The objective is piecewise quadratic between existing
// points and is minimized per piece in closed form; ties break toward the
// smaller x.
UnitPoint kritzinger_next(const SortedPointSet& ps);

// Next point minimizing sum_k p(x - x_k) with p the 1-periodic second
// Bernoulli polynomial x^2 - x + 1/6. Each piece is strictly convex with
// quadratic coefficient n; ties break toward the smaller x.
UnitPoint periodic_bernoulli_next(const SortedPointSet& ps);

enum class BaselineKind { VanDerCorput, KroneckerGolden, Kritzinger, PeriodicBernoulli };

// Deterministic point stream: an index counter for the closed-form kinds, a
// growing point set for the greedy kinds. Same seed => identical output.
class SequenceGenerator {
public:
  // seed is required (non-empty) for the greedy kinds and ignored otherwise.
  explicit SequenceGenerator(BaselineKind kind, SortedPointSet seed = {});

  UnitPoint next();

  BaselineKind kind() const { return kind_; }
  const SortedPointSet& current() const { return state_; }
  std::uint64_t emitted() const { return emitted_; }

private:
  BaselineKind kind_;
  SortedPointSet state_;
  std::uint64_t emitted_ = 0;
};

}  // namespace evenfill
