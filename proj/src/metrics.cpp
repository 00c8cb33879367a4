#include "regdecomp/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace regdecomp {

std::vector<std::vector<std::size_t>> confusion_matrix(const Labeling& a, const Labeling& b) {
  if (a.size() != b.size()) throw Error("confusion_matrix: labelings differ in length");
  a.validate();
  b.validate();
  const std::size_t side = std::max(a.k, b.k);
  std::vector<std::vector<std::size_t>> counts(side, std::vector<std::size_t>(side, 0));
  for (std::size_t j = 0; j < a.size(); ++j) ++counts[a.groups[j]][b.groups[j]];
  return counts;
}

std::vector<std::size_t> max_weight_assignment(
    const std::vector<std::vector<std::size_t>>& weights) {
  const std::size_t n = weights.size();
  if (n == 0) return {};
  long double top = 0;
  for (const auto& row : weights) {
    if (row.size() != n) throw Error("max_weight_assignment: matrix must be square");
    for (auto w : row) top = std::max(top, static_cast<long double>(w));
  }
  // Minimum-cost assignment on cost = top - weight, 1-based potentials.
  const long double inf = std::numeric_limits<long double>::infinity();
  std::vector<long double> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<long double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      long double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const long double cur = (top - static_cast<long double>(weights[i0 - 1][j - 1])) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

double misclassification_rate(const Labeling& z, const Labeling& truth) {
  if (z.size() == 0) return 0.0;
  const auto counts = confusion_matrix(z, truth);
  const std::size_t side = counts.size();
  std::size_t best = 0;
  if (side <= 8) {
    std::vector<std::size_t> perm(side);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      std::size_t agree = 0;
      for (std::size_t g = 0; g < side; ++g) agree += counts[g][perm[g]];
      best = std::max(best, agree);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    const auto assignment = max_weight_assignment(counts);
    for (std::size_t g = 0; g < side; ++g) best += counts[g][assignment[g]];
  }
  return static_cast<double>(z.size() - best) / static_cast<double>(z.size());
}

PartialLabeling expand_partition(const Graph& g, const PartialLabeling& labeled) {
  if (labeled.size() != g.node_count()) {
    throw Error("expand_partition: labeling size does not match node count");
  }
  GroupId groups = 0;
  for (const auto& l : labeled) {
    if (l) groups = std::max(groups, *l + 1);
  }
  PartialLabeling out = labeled;
  std::vector<std::size_t> votes(groups, 0);
  std::vector<NodeId> nbrs;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (labeled[v]) continue;
    nbrs.clear();
    const auto outs = g.out_neighbors(v);
    const auto ins = g.in_neighbors(v);
    std::set_union(outs.begin(), outs.end(), ins.begin(), ins.end(), std::back_inserter(nbrs));
    std::fill(votes.begin(), votes.end(), 0);
    bool any = false;
    for (NodeId w : nbrs) {
      if (labeled[w]) {
        ++votes[*labeled[w]];
        any = true;
      }
    }
    if (!any) continue;
    // max_element keeps the first maximum: the smallest group wins ties.
    out[v] = static_cast<GroupId>(std::max_element(votes.begin(), votes.end()) - votes.begin());
  }
  return out;
}

}  // namespace regdecomp
