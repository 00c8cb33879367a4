#include "regdecomp/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "regdecomp/parallel.hpp"

namespace regdecomp {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

void build_csr(std::size_t n, std::span<const Edge> edges, bool reverse,
               std::vector<std::size_t>& offsets, std::vector<NodeId>& targets) {
  offsets.assign(n + 1, 0);
  for (const Edge& e : edges) ++offsets[(reverse ? e.target : e.source) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  targets.resize(edges.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    const NodeId from = reverse ? e.target : e.source;
    targets[cursor[from]++] = reverse ? e.source : e.target;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
              targets.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
  }
}

}  // namespace

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges,
                        bool directed, std::vector<std::string> original_ids) {
  if (node_count >= std::numeric_limits<NodeId>::max()) {
    throw Error("graph too large for 32-bit node indices");
  }
  Graph g;
  g.directed_ = directed;

  std::vector<Edge> unique;
  unique.reserve(edges.size());
  for (Edge e : edges) {
    if (e.source >= node_count || e.target >= node_count) {
      throw Error("edge endpoint out of range");
    }
    if (e.source == e.target) continue;
    if (!directed && e.source > e.target) std::swap(e.source, e.target);
    unique.push_back(e);
  }
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  g.edge_count_ = unique.size();

  if (directed) {
    build_csr(node_count, unique, false, g.out_offsets_, g.out_targets_);
    build_csr(node_count, unique, true, g.in_offsets_, g.in_targets_);
  } else {
    std::vector<Edge> both;
    both.reserve(2 * unique.size());
    for (const Edge& e : unique) {
      both.push_back(e);
      both.push_back({e.target, e.source});
    }
    build_csr(node_count, both, false, g.out_offsets_, g.out_targets_);
  }

  if (original_ids.empty()) {
    original_ids.reserve(node_count);
    for (std::size_t v = 0; v < node_count; ++v) original_ids.push_back(std::to_string(v));
  }
  if (original_ids.size() != node_count) {
    throw Error("original_ids size does not match node count");
  }
  g.ids_ = std::move(original_ids);
  g.index_.reserve(node_count);
  for (std::size_t v = 0; v < node_count; ++v) {
    if (!g.index_.emplace(g.ids_[v], static_cast<NodeId>(v)).second) {
      throw Error("duplicate original id '" + g.ids_[v] + "'");
    }
  }
  return g;
}

std::optional<NodeId> Graph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId v = 0; v < node_count(); ++v) {
    for (NodeId w : out_neighbors(v)) {
      if (directed_ || v < w) out.push_back({v, w});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edge-list I/O

ParsedEdgeList parse_edge_list(std::istream& in, bool directed) {
  EdgeListStats stats;
  std::vector<std::string> ids;
  std::unordered_map<std::string, NodeId> index;
  std::vector<Edge> edges;

  auto intern = [&](const std::string& token) {
    auto [it, inserted] = index.emplace(token, static_cast<NodeId>(ids.size()));
    if (inserted) ids.push_back(token);
    return it->second;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++stats.lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) {
      ++stats.blank_lines;
      continue;
    }
    if (line[first] == '#') {
      ++stats.comment_lines;
      continue;
    }
    std::istringstream tokens(line);
    std::string a, b, extra;
    tokens >> a >> b;
    if (b.empty() || (tokens >> extra)) {
      throw ParseError(stats.lines, "expected exactly two node ids, got '" + line + "'");
    }
    ++stats.edge_lines;
    const NodeId u = intern(a);
    const NodeId v = intern(b);
    if (u == v) {
      ++stats.self_loops;
      continue;
    }
    edges.push_back({u, v});
  }

  ParsedEdgeList result;
  const std::size_t n = ids.size();
  result.graph = Graph::from_edges(n, edges, directed, std::move(ids));
  stats.duplicate_edges = edges.size() - result.graph.edge_count();
  result.stats = stats;
  return result;
}

ParsedEdgeList parse_edge_list(std::string_view text, bool directed) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, directed);
}

ParsedEdgeList read_edge_list(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list '" + path.string() + "'");
  return parse_edge_list(in, directed);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) {
    out << g.original_id(e.source) << ' ' << g.original_id(e.target) << '\n';
  }
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_edge_list(out, g);
}

// ---------------------------------------------------------------------------
// Components

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  Subgraph sub;
  sub.retained.assign(nodes.begin(), nodes.end());
  std::sort(sub.retained.begin(), sub.retained.end());
  std::vector<NodeId> local(g.node_count(), kUnreachable);
  for (std::size_t i = 0; i < sub.retained.size(); ++i) {
    if (local[sub.retained[i]] != kUnreachable) throw Error("duplicate node in subset");
    local[sub.retained[i]] = static_cast<NodeId>(i);
  }
  std::vector<Edge> edges;
  std::vector<std::string> ids;
  ids.reserve(sub.retained.size());
  for (NodeId v : sub.retained) {
    ids.push_back(g.original_id(v));
    for (NodeId w : g.out_neighbors(v)) {
      if (local[w] == kUnreachable) continue;
      if (!g.directed() && w < v) continue;
      edges.push_back({local[v], local[w]});
    }
  }
  sub.graph = Graph::from_edges(sub.retained.size(), edges, g.directed(), std::move(ids));
  return sub;
}

namespace {

std::vector<std::uint32_t> weak_labels(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> label(n, kUnreachable);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (label[s] != kUnreachable) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (auto nbrs : {g.out_neighbors(v), g.in_neighbors(v)}) {
        for (NodeId w : nbrs) {
          if (label[w] == kUnreachable) {
            label[w] = next;
            stack.push_back(w);
          }
        }
      }
    }
    ++next;
  }
  return label;
}

// Iterative Tarjan.
std::vector<std::uint32_t> strong_labels(const Graph& g) {
  const std::size_t n = g.node_count();
  constexpr std::uint32_t kNone = kUnreachable;
  std::vector<std::uint32_t> order(n, kNone), low(n, 0), label(n, kNone);
  std::vector<NodeId> scc_stack;
  std::vector<bool> on_stack(n, false);
  struct Frame {
    NodeId node;
    std::size_t next_edge;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0;
  std::uint32_t components = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (order[root] != kNone) continue;
    call.push_back({root, 0});
    order[root] = low[root] = counter++;
    scc_stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      auto nbrs = g.out_neighbors(f.node);
      if (f.next_edge < nbrs.size()) {
        const NodeId w = nbrs[f.next_edge++];
        if (order[w] == kNone) {
          order[w] = low[w] = counter++;
          scc_stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], order[w]);
        }
        continue;
      }
      const NodeId v = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
      if (low[v] == order[v]) {
        NodeId w;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = false;
          label[w] = components;
        } while (w != v);
        ++components;
      }
    }
  }
  return label;
}

}  // namespace

std::vector<std::uint32_t> component_labels(const Graph& g, ComponentMode mode) {
  if (mode == ComponentMode::strong && !g.directed()) {
    throw Error("strong components require a directed graph");
  }
  auto raw = mode == ComponentMode::weak ? weak_labels(g) : strong_labels(g);
  // Renumber so component ids follow the smallest node they contain.
  std::vector<std::uint32_t> remap(g.node_count(), kUnreachable);
  std::uint32_t next = 0;
  for (auto& c : raw) {
    if (remap[c] == kUnreachable) remap[c] = next++;
    c = remap[c];
  }
  return raw;
}

Subgraph giant_component(const Graph& g, ComponentMode mode) {
  if (g.node_count() == 0) throw Error("giant_component: empty graph");
  const auto label = component_labels(g, mode);
  std::vector<std::size_t> size;
  for (auto c : label) {
    if (c >= size.size()) size.resize(c + 1, 0);
    ++size[c];
  }
  // max_element returns the first maximum, i.e. the smallest-index component.
  const auto best = static_cast<std::uint32_t>(
      std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<NodeId> nodes;
  nodes.reserve(size[best]);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (label[v] == best) nodes.push_back(v);
  }
  return induced_subgraph(g, nodes);
}

bool is_connected(const Graph& g, ComponentMode mode) {
  if (g.node_count() == 0) return true;
  const auto label = component_labels(g, mode);
  return std::all_of(label.begin(), label.end(), [](auto c) { return c == 0; });
}

// ---------------------------------------------------------------------------
// Shortest paths

void bfs_distances(const Graph& g, NodeId source, std::span<Distance> dist,
                   std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    const Distance next = dist[v] + 1;
    for (NodeId w : g.out_neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = next;
        queue.push_back(w);
      }
    }
  }
}

std::vector<Distance> sssp_distances(const Graph& g, NodeId source) {
  if (source >= g.node_count()) throw Error("sssp_distances: source out of range");
  std::vector<Distance> dist(g.node_count());
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  bfs_distances(g, source, dist, queue);
  return dist;
}

DistanceMatrix::DistanceMatrix(std::size_t rows, std::size_t cols,
                               std::vector<Distance> entries,
                               std::vector<NodeId> reference_ids,
                               std::vector<NodeId> target_ids)
    : rows_(rows),
      cols_(cols),
      entries_(std::move(entries)),
      reference_ids_(std::move(reference_ids)),
      target_ids_(std::move(target_ids)) {
  if (entries_.size() != rows_ * cols_) throw Error("DistanceMatrix: entry count mismatch");
  if (!reference_ids_.empty() && reference_ids_.size() != rows_) {
    throw Error("DistanceMatrix: reference id count mismatch");
  }
  if (!target_ids_.empty() && target_ids_.size() != cols_) {
    throw Error("DistanceMatrix: target id count mismatch");
  }
  for (Distance d : entries_) {
    if (d == kUnreachable) throw Error("DistanceMatrix: unreachable entry");
  }
}

DistanceMatrix DistanceMatrix::from_rows(const std::vector<std::vector<Distance>>& rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.front().size();
  std::vector<Distance> entries;
  entries.reserve(m * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw Error("DistanceMatrix: ragged rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return DistanceMatrix(m, n, std::move(entries));
}

DistanceMatrix DistanceMatrix::select_columns(std::span<const std::size_t> columns) const {
  std::vector<Distance> entries;
  entries.reserve(rows_ * columns.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j : columns) entries.push_back((*this)(i, j));
  }
  std::vector<NodeId> targets;
  if (!target_ids_.empty()) {
    for (std::size_t j : columns) targets.push_back(target_ids_[j]);
  }
  return DistanceMatrix(rows_, columns.size(), std::move(entries), reference_ids_,
                        std::move(targets));
}

DistanceMatrix distance_matrix(const Graph& g, std::span<const NodeId> refs,
                               std::span<const NodeId> targets, std::size_t threads) {
  const std::size_t n = g.node_count();
  for (NodeId v : refs) {
    if (v >= n) throw Error("distance_matrix: reference out of range");
  }
  for (NodeId v : targets) {
    if (v >= n) throw Error("distance_matrix: target out of range");
  }
  const std::size_t m = refs.size();
  const std::size_t cols = targets.size();
  std::vector<Distance> entries(m * cols);
  parallel_for(m, threads, [&](std::size_t i) {
    thread_local std::vector<Distance> dist;
    thread_local std::vector<NodeId> queue;
    dist.resize(n);
    bfs_distances(g, refs[i], dist, queue);
    Distance* row = entries.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      const Distance d = dist[targets[j]];
      if (d == kUnreachable) {
        throw Error("distance_matrix: target '" + g.original_id(targets[j]) +
                    "' unreachable from reference '" + g.original_id(refs[i]) +
                    "'; restrict to a connected component");
      }
      row[j] = d;
    }
  });
  return DistanceMatrix(m, cols, std::move(entries),
                        std::vector<NodeId>(refs.begin(), refs.end()),
                        std::vector<NodeId>(targets.begin(), targets.end()));
}

void write_distance_csv(std::ostream& out, const DistanceMatrix& d, const Graph& g) {
  auto ref_name = [&](std::size_t i) {
    return d.reference_ids().empty() ? std::to_string(i)
                                     : g.original_id(d.reference_ids()[i]);
  };
  auto target_name = [&](std::size_t j) {
    return d.target_ids().empty() ? std::to_string(j) : g.original_id(d.target_ids()[j]);
  };
  out << "reference";
  for (std::size_t j = 0; j < d.cols(); ++j) out << ',' << target_name(j);
  out << '\n';
  for (std::size_t i = 0; i < d.rows(); ++i) {
    out << ref_name(i);
    for (Distance x : d.row(i)) out << ',' << x;
    out << '\n';
  }
}

}  // namespace regdecomp
