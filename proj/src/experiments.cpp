#include "regdecomp/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <numeric>
#include <tuple>

#include "regdecomp/generators.hpp"
#include "regdecomp/rng.hpp"
#include "regdecomp/sampling.hpp"
#include "regdecomp/theory.hpp"

namespace regdecomp {

namespace fs = std::filesystem;
using io::Json;

namespace {

// Child streams of the command seed.
constexpr std::uint64_t kRefStream = 1;
constexpr std::uint64_t kTargetStream = 2;
constexpr std::uint64_t kRdStream = 3;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw Error("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::pair<std::string, std::string> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

ReferenceSet make_references(const Graph& g, const std::string& spec, std::uint64_t seed,
                             std::size_t threads) {
  const auto [kind, arg] = split_spec(spec);
  if (kind == "all") {
    ReferenceSet set;
    set.nodes.resize(g.node_count());
    std::iota(set.nodes.begin(), set.nodes.end(), NodeId{0});
    set.strategy = SamplingStrategy::explicit_list;
    return set;
  }
  if (kind == "uniform") return uniform_references(g, parse_count(arg, "reference count"), seed);
  if (kind == "betweenness") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) {
      throw Error("betweenness spec must be betweenness:<pairs>,<m>");
    }
    return betweenness_references(g, parse_count(arg.substr(0, comma), "pair count"),
                                  parse_count(arg.substr(comma + 1), "reference count"), seed,
                                  threads);
  }
  if (kind == "file") {
    ReferenceSet set;
    set.nodes = io::resolve_ids(g, io::read_id_list(arg));
    auto sorted = set.nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error("reference file lists a node twice");
    }
    if (set.nodes.empty()) throw Error("reference file is empty");
    set.strategy = SamplingStrategy::explicit_list;
    return set;
  }
  throw Error("unknown reference spec '" + spec +
              "' (expected all, uniform:<m>, betweenness:<pairs>,<m> or file:<path>)");
}

std::vector<NodeId> make_targets(const Graph& g, const std::string& spec, std::uint64_t seed) {
  const auto [kind, arg] = split_spec(spec);
  if (kind == "all") {
    std::vector<NodeId> all(g.node_count());
    std::iota(all.begin(), all.end(), NodeId{0});
    return all;
  }
  if (kind == "sample") {
    const std::size_t count = parse_count(arg, "target count");
    if (count > g.node_count()) throw Error("target sample larger than the component");
    std::vector<NodeId> out;
    for (std::size_t i : sample_indices(g.node_count(), count, seed)) {
      out.push_back(static_cast<NodeId>(i));
    }
    return out;
  }
  if (kind == "file") {
    auto nodes = io::resolve_ids(g, io::read_id_list(arg));
    if (nodes.empty()) throw Error("target file is empty");
    return nodes;
  }
  throw Error("unknown target spec '" + spec + "' (expected all, sample:<n> or file:<path>)");
}

// Ground truth restricted to the retained nodes of a subgraph.
PartialLabeling truth_on(const Subgraph& sub, const PartialLabeling& host_truth) {
  PartialLabeling out(sub.retained.size());
  for (std::size_t v = 0; v < sub.retained.size(); ++v) out[v] = host_truth[sub.retained[v]];
  return out;
}

// Misclassification over the nodes that have a truth label.
std::optional<double> error_against(std::span<const NodeId> nodes, std::span<const GroupId> groups,
                                    std::size_t k, const PartialLabeling& truth) {
  Labeling z{{}, k};
  Labeling t{{}, 0};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!truth[nodes[i]]) continue;
    z.groups.push_back(groups[i]);
    t.groups.push_back(*truth[nodes[i]]);
    t.k = std::max<std::size_t>(t.k, *truth[nodes[i]] + 1);
  }
  if (z.groups.empty()) return std::nullopt;
  return misclassification_rate(z, t);
}

void finish(RunRecord& record, const Stopwatch& clock, const fs::path& out_dir) {
  record.wall_time_seconds = clock.seconds();
  io::write_json(out_dir / "run.json", record.to_json());
}

}  // namespace

Json RunRecord::to_json() const {
  Json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["seed"] = seed;
  j["wall_time_seconds"] = wall_time_seconds;
  Json files = Json::array();
  for (const auto& p : outputs) files.push_back(p.string());
  j["outputs"] = std::move(files);
  j["metrics"] = metrics;
  j["warnings"] = warnings;
  return j;
}

// ---------------------------------------------------------------------------
// summarize

Json BlockSummary::to_json() const {
  Json j;
  j["directed"] = directed;
  j["k"] = group_sizes.size();
  j["group_sizes"] = group_sizes;
  j["density"] = density;
  j["per_group_edges"] = per_group_edges;
  j["edge_counts"] = edge_counts;
  return j;
}

BlockSummary block_summary(const Graph& g, const PartialLabeling& labels) {
  if (labels.size() != g.node_count()) throw Error("block_summary: label size mismatch");
  BlockSummary s;
  s.directed = g.directed();
  std::size_t k = 0;
  for (const auto& l : labels) {
    if (l) k = std::max<std::size_t>(k, *l + 1);
  }
  s.group_sizes.assign(k, 0);
  for (const auto& l : labels) {
    if (l) ++s.group_sizes[*l];
  }
  s.edge_counts.assign(k, std::vector<std::size_t>(k, 0));
  for (const Edge& e : g.edges()) {
    const auto& gu = labels[e.source];
    const auto& gv = labels[e.target];
    if (!gu || !gv) continue;
    ++s.edge_counts[*gu][*gv];
    if (!g.directed() && *gu != *gv) ++s.edge_counts[*gv][*gu];
  }
  s.density.assign(k, std::vector<double>(k, 0.0));
  s.per_group_edges.assign(k, 0);
  for (std::size_t u = 0; u < k; ++u) {
    s.per_group_edges[u] = s.edge_counts[u][u];
    for (std::size_t v = 0; v < k; ++v) {
      const double nu = static_cast<double>(s.group_sizes[u]);
      const double nv = static_cast<double>(s.group_sizes[v]);
      double pairs = u == v ? nu * (nu - 1) : nu * nv;
      if (u == v && !g.directed()) pairs /= 2;
      s.density[u][v] = pairs > 0 ? static_cast<double>(s.edge_counts[u][v]) / pairs : 0.0;
    }
  }
  return s;
}

RunRecord cmd_summarize(const SummarizeOptions& o, BlockSummary* summary_out) {
  Stopwatch clock;
  RunRecord record;
  record.command = "summarize";
  record.parameters = {{"graph", o.graph.string()},
                       {"labels", o.labels.string()},
                       {"directed", o.directed}};
  const auto parsed = read_edge_list(o.graph, o.directed);
  const auto labels = io::resolve_labels(parsed.graph, io::read_labels_csv(o.labels));
  BlockSummary summary = block_summary(parsed.graph, labels);

  fs::create_directories(o.out_dir);
  const auto json_path = o.out_dir / "summary.json";
  io::write_json(json_path, summary.to_json());
  record.outputs.push_back(json_path);
  if (o.csv) {
    const auto csv_path = o.out_dir / "density.csv";
    std::ofstream out(csv_path);
    if (!out) throw Error("cannot write '" + csv_path.string() + "'");
    out << "group";
    for (std::size_t v = 0; v < summary.density.size(); ++v) out << ',' << (v + 1);
    out << '\n';
    for (std::size_t u = 0; u < summary.density.size(); ++u) {
      out << (u + 1);
      for (double x : summary.density[u]) out << ',' << io::format_double(x);
      out << '\n';
    }
    record.outputs.push_back(csv_path);
  }
  record.metrics = {{"k", summary.group_sizes.size()},
                    {"labeled_nodes", std::accumulate(summary.group_sizes.begin(),
                                                      summary.group_sizes.end(),
                                                      std::size_t{0})}};
  finish(record, clock, o.out_dir);
  if (summary_out) *summary_out = std::move(summary);
  return record;
}

// ---------------------------------------------------------------------------
// generate

RunRecord cmd_generate(const GenerateOptions& o) {
  Stopwatch clock;
  RunRecord record;
  record.command = "generate";
  record.seed = o.seed;
  std::optional<LabeledGraph> labeled;
  Graph graph;
  switch (o.model) {
    case GraphModel::planted: {
      record.parameters = {{"model", "planted"}, {"n", o.n}, {"a", o.a}, {"b", o.b}};
      labeled = planted_partition(PlantedParams{o.n, o.a, o.b}, o.seed, o.threads);
      break;
    }
    case GraphModel::sbm: {
      record.parameters = {{"model", "sbm"},
                           {"block_sizes", o.block_sizes},
                           {"link_probs", o.link_probs}};
      labeled = sbm(SBMParams{o.block_sizes, o.link_probs}, o.seed, o.threads);
      break;
    }
    case GraphModel::preferential_attachment: {
      record.parameters = {{"model", "pa"}, {"n", o.n}, {"links_per_node", o.links_per_node}};
      graph = preferential_attachment(o.n, o.seed, o.links_per_node);
      break;
    }
  }
  const Graph& g = labeled ? labeled->graph : graph;

  fs::create_directories(o.out_dir);
  const auto graph_path = o.out_dir / "graph.txt";
  write_edge_list(graph_path, g);
  record.outputs.push_back(graph_path);
  if (labeled) {
    const auto labels_path = o.out_dir / "labels.csv";
    std::vector<NodeId> nodes(g.node_count());
    std::iota(nodes.begin(), nodes.end(), NodeId{0});
    io::write_labels_csv(labels_path, g, nodes, labeled->labels);
    record.outputs.push_back(labels_path);
  }
  if (g.edge_count() == 0) record.warnings.push_back("generated graph has no edges");
  record.metrics = {{"nodes", g.node_count()}, {"edges", g.edge_count()}};
  finish(record, clock, o.out_dir);
  return record;
}

// ---------------------------------------------------------------------------
// decompose

RunRecord cmd_decompose(const DecomposeOptions& o) {
  Stopwatch clock;
  if (o.k && o.k_max) throw Error("give either k or k_max, not both");
  RunRecord record;
  record.command = "decompose";
  record.seed = o.seed;
  RDConfig config = o.config;
  if (o.k) config.k = *o.k;
  config.validate();
  record.parameters = {{"graph", o.graph.string()},
                       {"directed", o.directed},
                       {"refs", o.refs},
                       {"targets", o.targets},
                       {"k", o.k_max ? Json(nullptr) : Json(config.k)},
                       {"k_max", o.k_max ? Json(*o.k_max) : Json(nullptr)},
                       {"tau", o.tau},
                       {"expand", o.expand},
                       {"classify_rest", o.classify_rest},
                       {"config", io::config_to_json(config)}};

  const auto parsed = read_edge_list(o.graph, o.directed);
  const auto mode = o.directed ? ComponentMode::strong : ComponentMode::weak;
  const Subgraph component = giant_component(parsed.graph, mode);
  const Graph& g = component.graph;
  const std::size_t n = g.node_count();

  const ReferenceSet refs =
      make_references(g, o.refs, derive_seed(o.seed, kRefStream), config.threads);
  const std::vector<NodeId> targets = make_targets(g, o.targets, derive_seed(o.seed, kTargetStream));

  // Distances to every component node are needed only to classify the rest.
  const bool need_full = o.classify_rest && targets.size() < n;
  DistanceMatrix full;
  DistanceMatrix d;
  if (need_full) {
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), NodeId{0});
    full = distance_matrix(g, refs.nodes, all, config.threads);
    const std::vector<std::size_t> columns(targets.begin(), targets.end());
    d = full.select_columns(columns);
  } else {
    d = distance_matrix(g, refs.nodes, targets, config.threads);
  }

  const std::uint64_t rd_seed = derive_seed(o.seed, kRdStream);
  RDModel model;
  std::vector<double> curve;
  std::optional<KSelection> selection;
  if (o.k_max) {
    selection = select_k(d, *o.k_max, config, rd_seed, o.tau);
    model = selection->models[selection->k_star - 1];
    curve = selection->costs;
  } else {
    model = regular_decomposition(d, config, rd_seed);
  }

  PartialLabeling labels(n);
  for (std::size_t t = 0; t < targets.size(); ++t) labels[targets[t]] = model.labeling.groups[t];
  std::size_t expanded = 0;
  if (o.expand) {
    const auto grown = expand_partition(g, labels);
    for (NodeId v = 0; v < n; ++v) expanded += (!labels[v] && grown[v]) ? 1 : 0;
    labels = grown;
  }
  std::size_t classified = 0;
  if (need_full) {
    const auto groups = classify_columns(full, model.means);
    for (NodeId v = 0; v < n; ++v) {
      if (!labels[v]) {
        labels[v] = groups[v];
        ++classified;
      }
    }
  }

  fs::create_directories(o.out_dir);
  const auto labels_path = o.out_dir / "labels.csv";
  io::write_labels_csv(labels_path, g, labels);
  const auto model_path = o.out_dir / "model.json";
  Json model_json = io::model_to_json(model, g, refs.nodes, targets);
  if (selection) {
    model_json["cost_curve"] = selection->costs;
    model_json["cost_curve_monotone"] = selection->monotone;
    model_json["tau"] = o.tau;
  }
  io::write_json(model_path, model_json);
  const auto refs_csv = o.out_dir / "references.csv";
  io::write_id_list(refs_csv, g, refs.nodes);
  const auto refs_json = o.out_dir / "references.json";
  io::write_json(refs_json, io::provenance_to_json(refs, g));
  record.outputs = {labels_path, model_path, refs_csv, refs_json};
  if (selection) {
    const auto curve_path = o.out_dir / "cost_curve.csv";
    io::write_cost_curve_csv(curve_path, curve);
    record.outputs.push_back(curve_path);
    if (!selection->monotone) {
      record.warnings.push_back("cost curve is not monotone; consider more restarts");
    }
  }
  if (o.write_distances) {
    const auto dist_path = o.out_dir / "distances.csv";
    std::ofstream out(dist_path);
    if (!out) throw Error("cannot write '" + dist_path.string() + "'");
    write_distance_csv(out, d, g);
    record.outputs.push_back(dist_path);
  }

  record.metrics = {{"cost", model.cost},
                    {"k", model.labeling.k},
                    {"group_sizes", model.labeling.group_sizes()},
                    {"graph_nodes", parsed.graph.node_count()},
                    {"component_nodes", n},
                    {"references", refs.nodes.size()},
                    {"targets", targets.size()},
                    {"expanded", expanded},
                    {"classified", classified}};
  if (selection) record.metrics["k_star"] = selection->k_star;

  if (o.truth) {
    const auto host_truth = io::resolve_labels(parsed.graph, io::read_labels_csv(*o.truth));
    const auto truth = truth_on(component, host_truth);
    if (auto e = error_against(targets, model.labeling.groups, model.labeling.k, truth)) {
      record.metrics["target_misclassification"] = *e;
    }
    std::vector<NodeId> labeled_nodes;
    std::vector<GroupId> labeled_groups;
    for (NodeId v = 0; v < n; ++v) {
      if (labels[v]) {
        labeled_nodes.push_back(v);
        labeled_groups.push_back(*labels[v]);
      }
    }
    if (auto e = error_against(labeled_nodes, labeled_groups, model.labeling.k, truth)) {
      record.metrics["misclassification"] = *e;
    }
  }
  finish(record, clock, o.out_dir);
  return record;
}

// ---------------------------------------------------------------------------
// sweep-refs

RunRecord cmd_sweep_refs(const SweepOptions& o, std::vector<SweepRow>* rows_out) {
  Stopwatch clock;
  RunRecord record;
  record.command = "sweep-refs";
  record.seed = o.seed;
  record.parameters = {{"graph", o.graph.string()},
                       {"labels", o.labels.string()},
                       {"directed", o.directed},
                       {"m_values", o.m_values},
                       {"target_sizes", o.target_sizes},
                       {"trials", o.trials},
                       {"config", io::config_to_json(o.config)}};
  if (o.trials == 0) throw Error("sweep-refs: trials must be positive");

  const auto parsed = read_edge_list(o.graph, o.directed);
  const auto mode = o.directed ? ComponentMode::strong : ComponentMode::weak;
  const Subgraph component = giant_component(parsed.graph, mode);
  const Graph& g = component.graph;
  const std::size_t n = g.node_count();
  const auto truth = truth_on(component, io::resolve_labels(parsed.graph, io::read_labels_csv(o.labels)));

  std::vector<NodeId> labeled;
  std::size_t k = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (truth[v]) {
      labeled.push_back(v);
      k = std::max<std::size_t>(k, *truth[v] + 1);
    }
  }
  if (labeled.empty()) throw Error("sweep-refs: no ground-truth labels inside the giant component");
  RDConfig config = o.config;
  config.k = k;
  config.validate();
  record.parameters["config"] = io::config_to_json(config);

  for (std::size_t m : o.m_values) {
    if (m == 0 || m > n) throw Error("sweep-refs: m=" + std::to_string(m) + " outside 1..component size");
  }
  for (std::size_t s : o.target_sizes) {
    if (s < k || s > labeled.size()) {
      throw Error("sweep-refs: target size " + std::to_string(s) + " outside k..labeled nodes");
    }
  }

  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), NodeId{0});
  std::vector<SweepRow> rows;
  for (std::size_t m : o.m_values) {
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
      const auto ref_seed = derive_seed(derive_seed(derive_seed(o.seed, kRefStream), m), trial);
      const auto refs = uniform_references(g, m, ref_seed);
      const auto full = distance_matrix(g, refs.nodes, all, config.threads);
      for (std::size_t s : o.target_sizes) {
        const auto target_seed =
            derive_seed(derive_seed(derive_seed(o.seed, kTargetStream), s), trial);
        std::vector<NodeId> targets;
        std::vector<std::size_t> columns;
        for (std::size_t i : sample_indices(labeled.size(), s, target_seed)) {
          targets.push_back(labeled[i]);
          columns.push_back(labeled[i]);
        }
        const auto d = full.select_columns(columns);
        const auto rd_seed = derive_seed(
            derive_seed(derive_seed(derive_seed(o.seed, kRdStream), m), s), trial);
        const RDModel model = regular_decomposition(d, config, rd_seed);
        const auto error = error_against(targets, model.labeling.groups, k, truth);
        rows.push_back({m, s, trial, error.value_or(0.0)});
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.m, a.n_targets, a.trial) < std::tie(b.m, b.n_targets, b.trial);
  });

  fs::create_directories(o.out_dir);
  const auto csv_path = o.out_dir / "sweep.csv";
  {
    std::ofstream out(csv_path);
    if (!out) throw Error("cannot write '" + csv_path.string() + "'");
    out << "m,n_targets,trial,error\n";
    for (const auto& r : rows) {
      out << r.m << ',' << r.n_targets << ',' << r.trial << ',' << io::format_double(r.error)
          << '\n';
    }
  }
  record.outputs.push_back(csv_path);

  Json mean_error = Json::object();
  for (std::size_t m : o.m_values) {
    double sum = 0;
    std::size_t count = 0;
    for (const auto& r : rows) {
      if (r.m == m) {
        sum += r.error;
        ++count;
      }
    }
    mean_error[std::to_string(m)] = sum / static_cast<double>(count);
  }
  record.metrics = {{"rows", rows.size()}, {"component_nodes", n}, {"mean_error_by_m", mean_error}};
  finish(record, clock, o.out_dir);
  if (rows_out) *rows_out = std::move(rows);
  return record;
}

// ---------------------------------------------------------------------------
// theory

Json cmd_theory(double a, double b, double n) {
  Json j;
  j["a"] = a;
  j["b"] = b;
  j["n"] = n;
  Json notes = Json::array();
  j["above_ks_threshold"] = theory::above_ks_threshold(a, b);
  j["lambda1"] = (a + b) / 2;
  j["lambda2"] = (a - b) / 2;
  for (const char* key : {"alpha", "beta", "c", "d", "delta", "d1_asymptotic", "d2_asymptotic",
                          "cost_gap", "d1_numeric", "d2_numeric"}) {
    j[key] = nullptr;
  }
  try {
    const auto q = theory::spectral_quantities(a, b, n);
    j["alpha"] = q.alpha;
    j["beta"] = q.beta;
    j["c"] = q.c;
    j["d"] = q.d;
    j["delta"] = q.delta;
    j["d1_asymptotic"] = q.d - q.delta;
    j["d2_asymptotic"] = q.d + q.delta;
    j["cost_gap"] = theory::cost_gap(a, b, n);
  } catch (const Error& e) {
    notes.push_back(e.what());
  }
  try {
    const auto d = theory::solve_distances(a, b, n);
    j["d1_numeric"] = d.d1;
    j["d2_numeric"] = d.d2;
  } catch (const Error& e) {
    notes.push_back(e.what());
  }
  j["notes"] = std::move(notes);
  return j;
}

}  // namespace regdecomp
