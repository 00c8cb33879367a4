#include "regdecomp/sampling.hpp"

#include <algorithm>
#include <numeric>

#include "regdecomp/parallel.hpp"
#include "regdecomp/rng.hpp"

namespace regdecomp {

const char* to_string(SamplingStrategy s) noexcept {
  switch (s) {
    case SamplingStrategy::uniform: return "uniform";
    case SamplingStrategy::betweenness: return "betweenness";
    case SamplingStrategy::explicit_list: return "file";
  }
  return "unknown";
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t count,
                                        std::uint64_t seed) {
  if (count > population) throw Error("sample_indices: count exceeds population");
  std::vector<std::size_t> pool(population);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Rng rng(seed);
  // Partial Fisher-Yates: the first `count` slots become the sample.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(population - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

ReferenceSet uniform_references(const Graph& g, std::size_t m, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (m == 0 || m > n) {
    throw Error("uniform_references: need 1 <= m <= node count (m=" + std::to_string(m) +
                ", n=" + std::to_string(n) + ")");
  }
  ReferenceSet set;
  for (std::size_t i : sample_indices(n, m, seed)) set.nodes.push_back(static_cast<NodeId>(i));
  set.strategy = SamplingStrategy::uniform;
  set.seed = seed;
  return set;
}

std::vector<NodeId> shortest_path(const Graph& g, NodeId source, NodeId target) {
  const std::size_t n = g.node_count();
  if (source >= n || target >= n) throw Error("shortest_path: node out of range");
  std::vector<Distance> dist(n, kUnreachable);
  std::vector<NodeId> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size() && dist[target] == kUnreachable; ++head) {
    const NodeId v = queue[head];
    for (NodeId w : g.out_neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  if (dist[target] == kUnreachable) return {};
  // Every node closer than the target is settled by the time the target is
  // discovered, so the walk back only reads final distances.
  std::vector<NodeId> path{target};
  NodeId v = target;
  while (v != source) {
    for (NodeId u : g.in_neighbors(v)) {
      if (dist[u] + 1 == dist[v]) {
        v = u;
        break;
      }
    }
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

ReferenceSet path_frequency_references(const Graph& g,
                                       std::span<const std::pair<NodeId, NodeId>> pairs,
                                       std::size_t m, std::size_t threads) {
  if (m == 0) throw Error("betweenness_references: m must be positive");
  std::vector<std::vector<NodeId>> paths(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t p) {
    paths[p] = shortest_path(g, pairs[p].first, pairs[p].second);
    if (paths[p].empty()) {
      throw Error("betweenness_references: '" + g.original_id(pairs[p].second) +
                  "' unreachable from '" + g.original_id(pairs[p].first) + "'");
    }
  });

  std::vector<std::size_t> count(g.node_count(), 0);
  for (const auto& path : paths) {
    for (NodeId v : path) ++count[v];
  }
  std::vector<NodeId> seen;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (count[v] > 0) seen.push_back(v);
  }
  std::stable_sort(seen.begin(), seen.end(),
                   [&](NodeId a, NodeId b) { return count[a] > count[b]; });
  seen.resize(std::min(m, seen.size()));

  ReferenceSet set;
  set.strategy = SamplingStrategy::betweenness;
  set.pair_count = pairs.size();
  for (NodeId v : seen) set.frequencies.push_back(count[v]);
  set.nodes = std::move(seen);
  return set;
}

ReferenceSet betweenness_references(const Graph& g, std::size_t num_pairs, std::size_t m,
                                    std::uint64_t seed, std::size_t threads) {
  const std::size_t n = g.node_count();
  if (num_pairs == 0) throw Error("betweenness_references: num_pairs must be positive");
  if (n < 2) throw Error("betweenness_references: need at least two nodes");
  const auto mode = g.directed() ? ComponentMode::strong : ComponentMode::weak;
  if (!is_connected(g, mode)) {
    throw Error("betweenness_references: graph is disconnected; extract the giant component first");
  }
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> pairs(num_pairs);
  for (auto& [s, t] : pairs) {
    s = static_cast<NodeId>(rng.below(n));
    t = static_cast<NodeId>(rng.below(n - 1));
    if (t >= s) ++t;
  }
  ReferenceSet set = path_frequency_references(g, pairs, m, threads);
  set.seed = seed;
  return set;
}

}  // namespace regdecomp
