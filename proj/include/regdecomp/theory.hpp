#pragma once

#include <cstddef>

namespace regdecomp::theory {

/// Closed-form quantities for the two-block planted partition with intra
/// and inter link probabilities a/n and b/n.
///
/// lambda1 and lambda2 are the eigenvalues (a+b)/2 and (a-b)/2 of the mean
/// offspring matrix. d is the common leading distance and delta the half-gap,
/// so the predicted intra- and inter-block distances are d - delta and
/// d + delta.
struct SpectralQuantities {
  double lambda1 = 0;
  double lambda2 = 0;
  double alpha = 0;  // log lambda2 / log lambda1
  double beta = 0;   // log((lambda1 - 1) / lambda1) / log lambda1
  double c = 0;
  double d = 0;
  double delta = 0;  // c * n^(alpha - 1)
};

/// Requires a > b > 0, lambda2 > 1 and n >= 2.
SpectralQuantities spectral_quantities(double a, double b, double n);

/// Strict detectability condition (a - b)^2 > 2 (a + b).
bool above_ks_threshold(double a, double b);

/// Expected node counts by type (same block as the root, other block).
struct TypeCounts {
  double same = 0;
  double other = 0;
};

/// Expected counts at exactly distance t from a root: A^t (1, 0).
TypeCounts neighborhood_growth(double a, double b, unsigned t);

/// Exact sums of neighborhood_growth over distances 1..t.
TypeCounts cumulative_growth(double a, double b, unsigned t);

/// The large-t form (1/2)(-2 + l1/(l1-1) l1^t +- l2/(l2-1) l2^t).
/// Undefined when either eigenvalue equals 1.
TypeCounts cumulative_growth_approx(double a, double b, unsigned t);

struct DistancePair {
  double d1 = 0;  // same block
  double d2 = 0;  // other block
};

/// Left-hand side minus n of the distance equation for the given sign
/// (+1 for d1, -1 for d2).
double distance_equation(double a, double b, double n, double d, int sign);

/// Real roots of the two distance equations by bisection on
/// [0, 2 log n / log lambda1], to absolute tolerance 1e-9.
DistancePair solve_distances(double a, double b, double n);

/// Leading-order solution d -+ delta.
DistancePair asymptotic_distances(double a, double b, double n);

/// Leading-order cost increase for moving one node to the wrong block:
/// 2 log(lambda1) c^2 n^(2 alpha - 1) / log n.
double cost_gap(double a, double b, double n);

/// Smallest n beyond which cost_gap increases in n, exp(1 / (2 alpha - 1));
/// infinity when alpha <= 1/2.
double cost_gap_growth_onset(double a, double b);

}  // namespace regdecomp::theory
