#pragma once

#include <optional>
#include <span>
#include <vector>

#include "regdecomp/graph.hpp"
#include "regdecomp/rd.hpp"

namespace regdecomp {

/// Label per node, or nullopt for nodes without a group yet.
using PartialLabeling = std::vector<std::optional<GroupId>>;

/// Confusion counts: rows index groups of `a`, columns groups of `b`,
/// padded to a square of side max(a.k, b.k).
std::vector<std::vector<std::size_t>> confusion_matrix(const Labeling& a, const Labeling& b);

/// Column assigned to each row by a maximum-weight perfect matching on a
/// square weight matrix (Hungarian algorithm).
std::vector<std::size_t> max_weight_assignment(
    const std::vector<std::vector<std::size_t>>& weights);

/// Fraction of nodes whose group disagrees with the truth under the best
/// relabeling of groups. Exhaustive over permutations up to 8 groups,
/// Hungarian assignment beyond.
double misclassification_rate(const Labeling& z, const Labeling& truth);

/// One round of neighbor expansion. Every unlabeled node adjacent (in either
/// direction) to a labeled node takes the most common group among its
/// labeled neighbors, ties to the smallest group. Votes are read from the
/// input only, and labeled nodes keep their group.
PartialLabeling expand_partition(const Graph& g, const PartialLabeling& labeled);

}  // namespace regdecomp
