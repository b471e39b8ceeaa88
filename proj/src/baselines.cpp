#include "evenfill/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "evenfill/errors.hpp"
#include "evenfill/numeric.hpp"

namespace evenfill {

namespace {

// round(frac(golden ratio) * 2^64). uint64 multiplication wraps exactly
// mod 2^64, so frac(i*phi) = (i * kPhiFrac64) * 2^-64 up to the rounding of
// the constant itself: |error| <= i * 2^-65, under 3e-14 at i = 1e6.
constexpr std::uint64_t kPhiFrac64 = 0x9e3779b97f4a7c16ULL;

}  // namespace

UnitPoint van_der_corput(std::uint64_t i) {
  if (i == 0) throw ArgumentError("van_der_corput: index starts at 1");
  std::uint64_t reversed = 0;
  std::uint64_t bits = 0;
  for (std::uint64_t v = i; v != 0; v >>= 1) {
    reversed = (reversed << 1) | (v & 1);
    ++bits;
  }
  const std::uint64_t den = std::uint64_t{1} << bits;
  UnitPoint p;
  p.value = static_cast<double>(reversed) / static_cast<double>(den);
  p.rational = Rational{reversed, den};
  return p;
}

UnitPoint kronecker_golden(std::uint64_t i) {
  if (i == 0) throw ArgumentError("kronecker_golden: index starts at 1");
  const std::uint64_t frac_bits = i * kPhiFrac64;
  UnitPoint p;
  p.value = static_cast<double>(frac_bits) * 0x1.0p-64;
  return p;
}

UnitPoint kritzinger_next(const SortedPointSet& ps) {
  if (ps.empty()) throw ArgumentError("kritzinger_next: empty point set");
  const std::size_t n = ps.size();
  const double a = static_cast<double>(n + 1);

  // Dropping y-independent terms from the augmented squared L2 star
  // discrepancy leaves G_j(y) = (n+1)y^2 - (2j+1)y - 2*sum_{k>j} x_k on the
  // segment [x_j, x_{j+1}] (sentinels 0 and 1). Vertex at (2j+1)/(2(n+1)).
  std::vector<double> suffix(n + 1, 0.0);
  {
    NeumaierSum s;
    for (std::size_t k = n; k-- > 0;) {
      s.add(ps.value(k));
      suffix[k] = s.value();
    }
  }

  bool have_best = false;
  double best_score = 0.0;
  UnitPoint best;
  for (std::size_t j = 0; j <= n; ++j) {
    const double lo = (j == 0) ? 0.0 : ps.value(j - 1);
    const double hi = (j == n) ? 1.0 : ps.value(j);
    const double vertex = static_cast<double>(2 * j + 1) / (2.0 * a);
    const double y = std::clamp(vertex, lo, hi);
    const double linear = -(1.0 + 2.0 * static_cast<double>(j));
    const double score = a * y * y + linear * y - 2.0 * suffix[j];
    if (!have_best || score < best_score) {
      have_best = true;
      best_score = score;
      best.value = y;
      if (y == vertex) {
        best.rational = Rational{2 * j + 1, 2 * (n + 1)};
      } else if (j > 0 && y == ps.value(j - 1)) {
        best.rational = ps.rational(j - 1);
      } else if (j < n && y == ps.value(j)) {
        best.rational = ps.rational(j);
      } else {
        best.rational = (y == 0.0) ? Rational{0, 1} : Rational{1, 1};
      }
    }
  }
  return best;
}

UnitPoint periodic_bernoulli_next(const SortedPointSet& ps) {
  if (ps.empty()) throw ArgumentError("periodic_bernoulli_next: empty point set");
  const std::size_t n = ps.size();
  const double nn = static_cast<double>(n);

  // On [x_j, x_{j+1}] the objective is
  //   f(y) = n y^2 - 2 S1 y + S2 + (n - 2j) y + 2 P_j - S1 + n/6
  // with P_j the prefix sum of the smallest j points; vertex at
  // mean + j/n - 1/2.
  std::vector<double> prefix(n + 1, 0.0);
  double s2;
  {
    NeumaierSum p;
    NeumaierSum q;
    for (std::size_t k = 0; k < n; ++k) {
      p.add(ps.value(k));
      prefix[k + 1] = p.value();
      q.add(ps.value(k) * ps.value(k));
    }
    s2 = q.value();
  }
  const double s1 = prefix[n];
  const double mean = s1 / nn;

  bool have_best = false;
  double best_score = 0.0;
  UnitPoint best;
  for (std::size_t j = 0; j <= n; ++j) {
    const double lo = (j == 0) ? 0.0 : ps.value(j - 1);
    const double hi = (j == n) ? 1.0 : ps.value(j);
    const double vertex = mean + static_cast<double>(j) / nn - 0.5;
    const double y = std::clamp(vertex, lo, hi);
    const double score = nn * y * y - 2.0 * s1 * y + s2 +
                         (nn - 2.0 * static_cast<double>(j)) * y + 2.0 * prefix[j] - s1 +
                         nn / 6.0;
    if (!have_best || score < best_score) {
      have_best = true;
      best_score = score;
      best.value = y;
      best.rational = Rational{};
      if (j > 0 && y == ps.value(j - 1)) {
        best.rational = ps.rational(j - 1);
      } else if (j < n && y == ps.value(j)) {
        best.rational = ps.rational(j);
      }
    }
  }
  return best;
}

SequenceGenerator::SequenceGenerator(BaselineKind kind, SortedPointSet seed)
    : kind_(kind), state_(std::move(seed)) {
  if ((kind_ == BaselineKind::Kritzinger || kind_ == BaselineKind::PeriodicBernoulli) &&
      state_.empty()) {
    throw ArgumentError("SequenceGenerator: greedy kinds need a non-empty seed");
  }
}

UnitPoint SequenceGenerator::next() {
  ++emitted_;
  switch (kind_) {
    case BaselineKind::VanDerCorput:
      return van_der_corput(emitted_);
    case BaselineKind::KroneckerGolden:
      return kronecker_golden(emitted_);
    case BaselineKind::Kritzinger: {
      UnitPoint p = kritzinger_next(state_);
      state_.insert_in_place(p);
      return p;
    }
    case BaselineKind::PeriodicBernoulli: {
      UnitPoint p = periodic_bernoulli_next(state_);
      state_.insert_in_place(p);
      return p;
    }
  }
  throw InvariantViolation("SequenceGenerator: unknown kind");
}

}  // namespace evenfill
