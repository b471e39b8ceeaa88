#include "evenfill/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "evenfill/errors.hpp"
#include "evenfill/numeric.hpp"

namespace evenfill {

namespace {

struct SimpsonPanel {
  double a, fa, m, fm, b, fb, s;
};

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double adaptive_step(const std::function<double(double)>& f, const SimpsonPanel& p, double tol,
                     int depth, bool& converged) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double sl = simpson(p.fa, flm, p.fm, p.m - p.a);
  const double sr = simpson(p.fm, frm, p.fb, p.b - p.m);
  const double s2 = sl + sr;
  if (depth <= 0) {
    converged = converged && std::abs(s2 - p.s) <= 15.0 * tol;
    return s2 + (s2 - p.s) / 15.0;
  }
  if (std::abs(s2 - p.s) <= 15.0 * tol) {
    return s2 + (s2 - p.s) / 15.0;
  }
  const SimpsonPanel left{p.a, p.fa, lm, flm, p.m, p.fm, sl};
  const SimpsonPanel right{p.m, p.fm, rm, frm, p.b, p.fb, sr};
  return adaptive_step(f, left, tol / 2.0, depth - 1, converged) +
         adaptive_step(f, right, tol / 2.0, depth - 1, converged);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  if (!(a < b)) throw ArgumentError("adaptive_simpson: requires a <= b");
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const SimpsonPanel root{a, fa, m, fm, b, fb, simpson(fa, fm, fb, b - a)};
  bool converged = true;
  const double result = adaptive_step(f, root, opts.abs_tol, opts.max_depth, converged);
  if (!converged) {
    throw NumericalError("adaptive_simpson: tolerance " + std::to_string(opts.abs_tol) +
                         " not reached on [" + std::to_string(a) + ", " + std::to_string(b) +
                         "], estimate " + std::to_string(result));
  }
  return result;
}

double integrate_with_splits(const std::function<double(double)>& f, double a, double b,
                             std::span<const double> splits, const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  if (!(a < b)) throw ArgumentError("integrate_with_splits: requires a <= b");
  std::vector<double> nodes{a, b};
  for (double s : splits) {
    if (s > a && s < b) nodes.push_back(s);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  NeumaierSum total;
  const double span_len = b - a;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double len = nodes[i + 1] - nodes[i];
    if (len <= 0.0) continue;
    QuadratureOptions piece = opts;
    piece.abs_tol = std::max(opts.abs_tol * (len / span_len), 1e-300);
    total.add(adaptive_simpson(f, nodes[i], nodes[i + 1], piece));
  }
  return total.value();
}

double invert_monotone(const std::function<double(double)>& f, double y, double lo, double hi) {
  if (!(lo <= hi)) throw ArgumentError("invert_monotone: bad bracket");
  double a = lo;
  double b = hi;
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    if (f(m) < y) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace evenfill
