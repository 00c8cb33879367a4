#include "regdecomp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "regdecomp/parallel.hpp"
#include "regdecomp/rng.hpp"

namespace regdecomp {

std::size_t SBMParams::node_count() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
}

void SBMParams::validate() const {
  const std::size_t k = block_sizes.size();
  if (k == 0) throw Error("sbm: at least one block required");
  if (link_probs.size() != k) throw Error("sbm: link matrix must be k x k");
  for (std::size_t u = 0; u < k; ++u) {
    if (block_sizes[u] == 0) throw Error("sbm: block sizes must be positive");
    if (link_probs[u].size() != k) throw Error("sbm: link matrix must be k x k");
    for (std::size_t v = 0; v < k; ++v) {
      const double p = link_probs[u][v];
      if (!(p >= 0.0 && p <= 1.0)) throw Error("sbm: probabilities must lie in [0, 1]");
      if (p != link_probs[v][u]) throw Error("sbm: link matrix must be symmetric");
    }
  }
}

void PlantedParams::validate() const {
  if (n == 0 || n % 2 != 0) throw Error("planted_partition: n must be positive and even");
  if (!(a > 0) || !(b > 0)) throw Error("planted_partition: a and b must be positive");
  const double nd = static_cast<double>(n);
  if (a / nd > 1.0 || b / nd > 1.0) throw Error("planted_partition: a/n and b/n must be <= 1");
}

SBMParams PlantedParams::to_sbm() const {
  validate();
  const double nd = static_cast<double>(n);
  return SBMParams{{n / 2, n / 2}, {{a / nd, b / nd}, {b / nd, a / nd}}};
}

LabeledGraph sbm(const SBMParams& params, std::uint64_t seed, std::size_t threads) {
  params.validate();
  const std::size_t n = params.node_count();
  std::vector<std::uint32_t> labels;
  labels.reserve(n);
  for (std::size_t u = 0; u < params.block_sizes.size(); ++u) {
    labels.insert(labels.end(), params.block_sizes[u], static_cast<std::uint32_t>(u));
  }

  std::vector<std::vector<NodeId>> row_targets(n);
  parallel_for(n, threads, [&](std::size_t i) {
    Rng rng = Rng::child(seed, i);
    const auto& probs = params.link_probs[labels[i]];
    auto& out = row_targets[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(probs[labels[j]])) out.push_back(static_cast<NodeId>(j));
    }
  });

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (NodeId j : row_targets[i]) edges.push_back({static_cast<NodeId>(i), j});
  }
  return {Graph::from_edges(n, edges, false), std::move(labels)};
}

LabeledGraph planted_partition(const PlantedParams& params, std::uint64_t seed,
                               std::size_t threads) {
  return sbm(params.to_sbm(), seed, threads);
}

Graph preferential_attachment(std::size_t n, std::uint64_t seed, std::size_t links_per_node) {
  if (n < 3) throw Error("preferential_attachment: n must be at least 3");
  if (links_per_node == 0) throw Error("preferential_attachment: links_per_node must be positive");
  std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}};
  // Each edge contributes both endpoints, so a uniform draw from this list is
  // a degree-proportional draw over nodes.
  std::vector<NodeId> endpoints{0, 1, 1, 2, 0, 2};
  std::vector<NodeId> chosen;
  for (std::size_t v = 3; v < n; ++v) {
    Rng rng = Rng::child(seed, v);
    chosen.clear();
    const std::size_t want = std::min(links_per_node, v);
    while (chosen.size() < want) {
      const NodeId w = endpoints[rng.below(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), w) == chosen.end()) chosen.push_back(w);
    }
    for (NodeId w : chosen) {
      edges.push_back({w, static_cast<NodeId>(v)});
      endpoints.push_back(w);
      endpoints.push_back(static_cast<NodeId>(v));
    }
  }
  return Graph::from_edges(n, edges, false);
}

}  // namespace regdecomp
