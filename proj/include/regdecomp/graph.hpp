#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace regdecomp {

using NodeId = std::uint32_t;
using Distance = std::uint32_t;

/// Distance reported for nodes a search never reached.
inline constexpr Distance kUnreachable = std::numeric_limits<Distance>::max();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Edge {
  NodeId source;
  NodeId target;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple unweighted graph in compressed adjacency form.
///
/// Self-loops and parallel edges never survive construction. Undirected
/// edges are visible from both endpoints; directed graphs additionally keep
/// reverse adjacency so in-neighbors are available. Each node carries the
/// external ID it was loaded under. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph over nodes [0, node_count). `original_ids`, when
  /// non-empty, must hold one distinct ID per node; otherwise IDs are the
  /// decimal node indices.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges,
                          bool directed,
                          std::vector<std::string> original_ids = {});

  std::size_t node_count() const noexcept { return ids_.size(); }
  /// Number of distinct edges; an undirected edge counts once.
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool directed() const noexcept { return directed_; }

  /// Sorted out-neighbors (all neighbors when undirected).
  std::span<const NodeId> out_neighbors(NodeId v) const noexcept {
    return {out_targets_.data() + out_offsets_[v],
            out_targets_.data() + out_offsets_[v + 1]};
  }
  /// Sorted in-neighbors (all neighbors when undirected).
  std::span<const NodeId> in_neighbors(NodeId v) const noexcept {
    if (!directed_) return out_neighbors(v);
    return {in_targets_.data() + in_offsets_[v],
            in_targets_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(NodeId v) const noexcept { return out_neighbors(v).size(); }

  const std::string& original_id(NodeId v) const { return ids_.at(v); }
  const std::vector<std::string>& original_ids() const noexcept { return ids_; }
  std::optional<NodeId> find(std::string_view id) const;

  /// Edge list in canonical order; undirected edges appear once with
  /// source < target.
  std::vector<Edge> edges() const;

 private:
  bool directed_ = false;
  std::size_t edge_count_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_targets_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeId> index_;
};

struct EdgeListStats {
  std::size_t lines = 0;
  std::size_t comment_lines = 0;
  std::size_t blank_lines = 0;
  std::size_t edge_lines = 0;
  std::size_t self_loops = 0;
  std::size_t duplicate_edges = 0;
};

struct ParsedEdgeList {
  Graph graph;
  EdgeListStats stats;
};

/// Reads a SNAP-style edge list: '#' comment lines and two whitespace
/// separated node IDs per line. Internal indices follow first appearance.
/// Throws ParseError on a line without exactly two tokens.
ParsedEdgeList parse_edge_list(std::istream& in, bool directed);
ParsedEdgeList parse_edge_list(std::string_view text, bool directed);
ParsedEdgeList read_edge_list(const std::filesystem::path& path, bool directed);

/// Writes one "source target" line per edge using external IDs.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

enum class ComponentMode { weak, strong };

/// A subgraph together with the host index of each retained node.
struct Subgraph {
  Graph graph;
  std::vector<NodeId> retained;  // subgraph index -> host index, ascending
};

/// Subgraph induced by `nodes` (any order, no duplicates); node order in the
/// result follows ascending host index.
Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Component id per node, ids numbered by smallest contained node.
std::vector<std::uint32_t> component_labels(const Graph& g, ComponentMode mode);

/// Largest weakly or strongly connected component. Ties go to the component
/// containing the smallest node index. Strong mode needs a directed graph.
Subgraph giant_component(const Graph& g, ComponentMode mode);

bool is_connected(const Graph& g, ComponentMode mode);

/// Breadth-first hop distances from `source` along out-edges.
std::vector<Distance> sssp_distances(const Graph& g, NodeId source);

/// BFS into caller-owned buffers; `dist` must have node_count entries.
void bfs_distances(const Graph& g, NodeId source, std::span<Distance> dist,
                   std::vector<NodeId>& queue);

/// Dense reference-by-target hop-count matrix, stored row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  /// `entries` is row-major rows x cols. Node id lists are optional for
  /// matrices that do not come from a graph.
  DistanceMatrix(std::size_t rows, std::size_t cols, std::vector<Distance> entries,
                 std::vector<NodeId> reference_ids = {},
                 std::vector<NodeId> target_ids = {});

  static DistanceMatrix from_rows(const std::vector<std::vector<Distance>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Distance operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * cols_ + j];
  }
  std::span<const Distance> row(std::size_t i) const noexcept {
    return {entries_.data() + i * cols_, cols_};
  }
  const std::vector<Distance>& entries() const noexcept { return entries_; }
  const std::vector<NodeId>& reference_ids() const noexcept { return reference_ids_; }
  const std::vector<NodeId>& target_ids() const noexcept { return target_ids_; }

  /// Keeps the given target columns, in the given order.
  DistanceMatrix select_columns(std::span<const std::size_t> columns) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Distance> entries_;
  std::vector<NodeId> reference_ids_;
  std::vector<NodeId> target_ids_;
};

/// One BFS per reference, measured reference -> target. Throws Error naming
/// the first unreachable (reference, target) pair. Rows are computed
/// independently, so the result does not depend on `threads`.
DistanceMatrix distance_matrix(const Graph& g, std::span<const NodeId> refs,
                               std::span<const NodeId> targets,
                               std::size_t threads = 1);

/// CSV with a header of target IDs and a leading column of reference IDs.
void write_distance_csv(std::ostream& out, const DistanceMatrix& d, const Graph& g);

}  // namespace regdecomp
