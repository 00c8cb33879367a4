#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "regdecomp/graph.hpp"

namespace regdecomp {

enum class SamplingStrategy { uniform, betweenness, explicit_list };

const char* to_string(SamplingStrategy s) noexcept;

/// Distinct reference nodes plus how they were chosen.
struct ReferenceSet {
  std::vector<NodeId> nodes;
  SamplingStrategy strategy = SamplingStrategy::uniform;
  std::uint64_t seed = 0;
  std::size_t pair_count = 0;
  /// Path-appearance count of each selected node (betweenness only).
  std::vector<std::size_t> frequencies;
};

/// `count` distinct indices from [0, population), uniformly without
/// replacement, in draw order.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t count,
                                        std::uint64_t seed);

/// m distinct nodes drawn uniformly without replacement, in draw order.
ReferenceSet uniform_references(const Graph& g, std::size_t m, std::uint64_t seed);

/// One shortest path from `source` to `target`. Walking back from the
/// target, each step takes the smallest-index predecessor one hop closer to
/// the source. Empty when the target is unreachable.
std::vector<NodeId> shortest_path(const Graph& g, NodeId source, NodeId target);

/// Top-m nodes by appearance count over one shortest path per pair
/// (endpoints included); ties go to the smaller index.
ReferenceSet path_frequency_references(const Graph& g,
                                       std::span<const std::pair<NodeId, NodeId>> pairs,
                                       std::size_t m, std::size_t threads = 1);

/// Samples `num_pairs` uniform pairs of distinct nodes and selects the m
/// nodes that appear most often on their shortest paths. The graph must be
/// connected (strongly, when directed).
ReferenceSet betweenness_references(const Graph& g, std::size_t num_pairs, std::size_t m,
                                    std::uint64_t seed, std::size_t threads = 1);

}  // namespace regdecomp
