#include "regdecomp/theory.hpp"

#include <cmath>
#include <limits>

#include "regdecomp/graph.hpp"

namespace regdecomp::theory {

namespace {

// sum_{s=1..t} x^s
double geometric_sum(double x, unsigned t) {
  if (x == 1.0) return static_cast<double>(t);
  return x * (std::pow(x, t) - 1.0) / (x - 1.0);
}

}  // namespace

SpectralQuantities spectral_quantities(double a, double b, double n) {
  if (!(a > b)) throw Error("spectral_quantities: requires a > b");
  if (!(b > 0)) throw Error("spectral_quantities: requires b > 0");
  if (!(n >= 2)) throw Error("spectral_quantities: requires n >= 2");
  SpectralQuantities q;
  q.lambda1 = (a + b) / 2;
  q.lambda2 = (a - b) / 2;
  if (!(q.lambda2 > 1)) {
    throw Error("spectral_quantities: requires lambda2 = (a-b)/2 > 1");
  }
  const double log_l1 = std::log(q.lambda1);
  q.alpha = std::log(q.lambda2) / log_l1;
  q.beta = std::log((q.lambda1 - 1) / q.lambda1) / log_l1;
  q.c = (1 / log_l1) * (q.lambda2 / (q.lambda2 - 1)) * std::pow(q.lambda2, q.beta);
  q.d = std::log((q.lambda1 - 1) / q.lambda1 * n) / log_l1;
  q.delta = q.c * std::pow(n, q.alpha - 1);
  return q;
}

bool above_ks_threshold(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw Error("above_ks_threshold: a and b must be positive");
  return (a - b) * (a - b) > 2 * (a + b);
}

TypeCounts neighborhood_growth(double a, double b, unsigned t) {
  const double l1 = std::pow((a + b) / 2, t);
  const double l2 = std::pow((a - b) / 2, t);
  return {(l1 + l2) / 2, (l1 - l2) / 2};
}

TypeCounts cumulative_growth(double a, double b, unsigned t) {
  if (t < 1) throw Error("cumulative_growth: t must be at least 1");
  const double s1 = geometric_sum((a + b) / 2, t);
  const double s2 = geometric_sum((a - b) / 2, t);
  return {(s1 + s2) / 2, (s1 - s2) / 2};
}

TypeCounts cumulative_growth_approx(double a, double b, unsigned t) {
  const double l1 = (a + b) / 2;
  const double l2 = (a - b) / 2;
  if (l1 == 1.0 || l2 == 1.0) {
    throw Error("cumulative_growth_approx: undefined for an eigenvalue of 1");
  }
  const double g1 = l1 / (l1 - 1) * std::pow(l1, t);
  const double g2 = l2 / (l2 - 1) * std::pow(l2, t);
  return {(-2 + g1 + g2) / 2, (-2 + g1 - g2) / 2};
}

double distance_equation(double a, double b, double n, double d, int sign) {
  const double l1 = (a + b) / 2;
  const double l2 = (a - b) / 2;
  return std::pow(l1, d + 1) / (l1 - 1) + sign * std::pow(l2, d + 1) / (l2 - 1) - 2 - n;
}

DistancePair solve_distances(double a, double b, double n) {
  if (!(a > b)) throw Error("solve_distances: requires a > b");
  const double l1 = (a + b) / 2;
  const double l2 = (a - b) / 2;
  if (!(l1 > 1)) throw Error("solve_distances: requires lambda1 > 1");
  if (l2 == 1.0) throw Error("solve_distances: equation singular at lambda2 = 1");
  const double upper = 2 * std::log(n) / std::log(l1);

  auto solve = [&](int sign) {
    double lo = 0.0;
    double hi = upper;
    const double f_lo = distance_equation(a, b, n, lo, sign);
    const double f_hi = distance_equation(a, b, n, hi, sign);
    if (!(f_lo < 0 && f_hi > 0)) {
      throw Error("solve_distances: no sign change on [0, 2 log n / log lambda1]");
    }
    while (hi - lo > 1e-9) {
      const double mid = 0.5 * (lo + hi);
      if (distance_equation(a, b, n, mid, sign) < 0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  return {solve(+1), solve(-1)};
}

DistancePair asymptotic_distances(double a, double b, double n) {
  const auto q = spectral_quantities(a, b, n);
  return {q.d - q.delta, q.d + q.delta};
}

double cost_gap(double a, double b, double n) {
  const auto q = spectral_quantities(a, b, n);
  return 2 * std::log(q.lambda1) * q.c * q.c * std::pow(n, 2 * q.alpha - 1) / std::log(n);
}

double cost_gap_growth_onset(double a, double b) {
  const auto q = spectral_quantities(a, b, 2.0);
  const double p = 2 * q.alpha - 1;
  if (!(p > 0)) return std::numeric_limits<double>::infinity();
  return std::exp(1 / p);
}

}  // namespace regdecomp::theory
