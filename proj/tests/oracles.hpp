// Reference implementations used only by the tests. They are deliberately
// naive and share no code with the library.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

/// All-pairs hop distances by Floyd-Warshall over an explicit edge list.
inline std::vector<std::vector<std::uint32_t>> floyd_warshall(
    std::size_t n, const std::vector<std::pair<int, int>>& edges, bool directed) {
  const std::uint64_t inf = std::uint64_t{1} << 40;
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [u, v] : edges) {
    if (u == v) continue;
    d[u][v] = 1;
    if (!directed) d[v][u] = 1;
  }
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][w] + d[w][j] < d[i][j]) d[i][j] = d[i][w] + d[w][j];
  std::vector<std::vector<std::uint32_t>> out(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out[i][j] = d[i][j] >= inf ? kInf : static_cast<std::uint32_t>(d[i][j]);
  return out;
}

/// Poisson cost of a labeling, means re-estimated per group and floored.
/// Returns +inf if some group is empty.
inline double poisson_cost(const std::vector<std::vector<int>>& d,
                           const std::vector<int>& z, int k, double floor = 1e-6) {
  const std::size_t m = d.size();
  const std::size_t n = z.size();
  std::vector<std::vector<double>> mean(m, std::vector<double>(k, 0.0));
  std::vector<int> size(k, 0);
  for (std::size_t j = 0; j < n; ++j) ++size[z[j]];
  for (int v = 0; v < k; ++v)
    if (size[v] == 0) return std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) mean[i][z[j]] += d[i][j];
    for (int v = 0; v < k; ++v) mean[i][v] = std::max(mean[i][v] / size[v], floor);
  }
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i)
      total += mean[i][z[j]] - d[i][j] * std::log(mean[i][z[j]]);
  return total;
}

/// Minimum cost over every labeling of n nodes into 2 nonempty groups.
inline double exhaustive_min_cost_k2(const std::vector<std::vector<int>>& d) {
  const std::size_t n = d.front().size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> z(n);
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    for (std::size_t j = 0; j < n; ++j) z[j] = (mask >> j) & 1u;
    best = std::min(best, poisson_cost(d, z, 2));
  }
  return best;
}

/// Mean and variance of the edge count of an SBM: a sum of independent
/// Bernoulli coin flips, one per unordered pair.
inline std::pair<double, double> sbm_edge_moments(const std::vector<std::size_t>& sizes,
                                                  const std::vector<std::vector<double>>& p) {
  double mean = 0.0, var = 0.0;
  for (std::size_t u = 0; u < sizes.size(); ++u) {
    for (std::size_t v = u; v < sizes.size(); ++v) {
      const double su = static_cast<double>(sizes[u]);
      const double sv = static_cast<double>(sizes[v]);
      const double pairs = u == v ? su * (su - 1) / 2 : su * sv;
      mean += pairs * p[u][v];
      var += pairs * p[u][v] * (1 - p[u][v]);
    }
  }
  return {mean, var};
}

/// Survival probability of a Poisson(c) Galton-Watson process, the limiting
/// giant-component fraction of a sparse random graph with mean degree c.
inline double poisson_survival(double c) {
  double s = 1.0;
  for (int it = 0; it < 10000; ++it) s = 1.0 - std::exp(-c * s);
  return s;
}

/// A^t (1, 0) with A = [[a/2, b/2], [b/2, a/2]], by repeated multiplication.
inline std::pair<double, double> matrix_power_growth(double a, double b, unsigned t) {
  double x = 1.0, y = 0.0;
  for (unsigned s = 0; s < t; ++s) {
    const double nx = a / 2 * x + b / 2 * y;
    const double ny = b / 2 * x + a / 2 * y;
    x = nx;
    y = ny;
  }
  return {x, y};
}

/// Left-hand side of the distance equation
/// l1^(d+1)/(l1-1) + sign * l2^(d+1)/(l2-1) - 2.
inline double distance_lhs(double a, double b, double d, int sign) {
  const double l1 = (a + b) / 2, l2 = (a - b) / 2;
  return std::pow(l1, d + 1) / (l1 - 1) + sign * std::pow(l2, d + 1) / (l2 - 1) - 2;
}

/// Pearson chi-square statistic against a uniform expectation.
inline double chi_square_uniform(const std::vector<std::size_t>& counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) stat += (c - expected) * (c - expected) / expected;
  return stat;
}

/// Least-squares slope of log(y) against log(x).
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
