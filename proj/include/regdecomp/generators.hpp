#pragma once

#include <cstdint>
#include <vector>

#include "regdecomp/graph.hpp"

namespace regdecomp {

/// Stochastic block model: block sizes and a symmetric k x k matrix of link
/// probabilities.
struct SBMParams {
  std::vector<std::size_t> block_sizes;
  std::vector<std::vector<double>> link_probs;

  std::size_t node_count() const;
  void validate() const;
};

/// Two equal blocks with intra probability a/n and inter probability b/n.
struct PlantedParams {
  std::size_t n = 0;
  double a = 0;
  double b = 0;

  void validate() const;
  SBMParams to_sbm() const;
};

/// A generated graph with its ground-truth group (0-based) per node.
struct LabeledGraph {
  Graph graph;
  std::vector<std::uint32_t> labels;
};

/// Undirected SBM. Nodes are laid out block by block; each pair {i, j}
/// with i < j is an independent coin flip drawn from child stream i of
/// `seed`, so rows can be generated in any order or in parallel.
LabeledGraph sbm(const SBMParams& params, std::uint64_t seed, std::size_t threads = 1);

/// Two-block planted partition; n must be even.
LabeledGraph planted_partition(const PlantedParams& params, std::uint64_t seed,
                               std::size_t threads = 1);

/// Preferential attachment starting from a triangle. Each arriving node
/// links to `links_per_node` distinct existing nodes, chosen with
/// probability proportional to their current degree, using child stream
/// (arrival index) of `seed`.
Graph preferential_attachment(std::size_t n, std::uint64_t seed,
                              std::size_t links_per_node = 3);

}  // namespace regdecomp
