#include "regdecomp/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace regdecomp::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return in;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  const auto first = s.find_first_not_of(" \t");
  return first == std::string::npos ? std::string{} : s.substr(first);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

void write_labels_csv(const std::filesystem::path& path, const Graph& g,
                      const PartialLabeling& labels) {
  auto out = open_out(path);
  out << "node_id,group\n";
  for (NodeId v = 0; v < labels.size(); ++v) {
    if (labels[v]) out << g.original_id(v) << ',' << (*labels[v] + 1) << '\n';
  }
}

void write_labels_csv(const std::filesystem::path& path, const Graph& g,
                      std::span<const NodeId> nodes, std::span<const GroupId> groups) {
  if (nodes.size() != groups.size()) throw Error("write_labels_csv: size mismatch");
  auto out = open_out(path);
  out << "node_id,group\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out << g.original_id(nodes[i]) << ',' << (groups[i] + 1) << '\n';
  }
}

std::vector<LabelRow> read_labels_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<LabelRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line.rfind("node_id", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(line_no, "expected 'node_id,group'");
    LabelRow row;
    row.node_id = trim(line.substr(0, comma));
    const std::string group = trim(line.substr(comma + 1));
    auto [ptr, ec] = std::from_chars(group.data(), group.data() + group.size(), row.group);
    if (ec != std::errc{} || ptr != group.data() + group.size()) {
      throw ParseError(line_no, "group '" + group + "' is not an integer");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PartialLabeling resolve_labels(const Graph& g, const std::vector<LabelRow>& rows) {
  PartialLabeling labels(g.node_count());
  std::vector<std::string> unknown;
  for (const auto& row : rows) {
    const auto v = g.find(row.node_id);
    if (!v) {
      unknown.push_back(row.node_id);
      continue;
    }
    if (row.group < 1) throw Error("group for node '" + row.node_id + "' must be >= 1");
    labels[*v] = static_cast<GroupId>(row.group - 1);
  }
  if (!unknown.empty()) {
    std::string msg = "labels name " + std::to_string(unknown.size()) + " unknown node id(s):";
    for (std::size_t i = 0; i < unknown.size() && i < 20; ++i) msg += " " + unknown[i];
    if (unknown.size() > 20) msg += " ...";
    throw Error(msg);
  }
  return labels;
}

void write_id_list(const std::filesystem::path& path, const Graph& g,
                   std::span<const NodeId> nodes) {
  auto out = open_out(path);
  out << "node_id\n";
  for (NodeId v : nodes) out << g.original_id(v) << '\n';
}

std::vector<std::string> read_id_list(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<std::string> ids;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (first && line == "node_id") {
      first = false;
      continue;
    }
    first = false;
    ids.push_back(line.substr(0, line.find(',')));
  }
  return ids;
}

std::vector<NodeId> resolve_ids(const Graph& g, const std::vector<std::string>& ids) {
  std::vector<NodeId> nodes;
  std::vector<std::string> unknown;
  for (const auto& id : ids) {
    if (auto v = g.find(id)) {
      nodes.push_back(*v);
    } else {
      unknown.push_back(id);
    }
  }
  if (!unknown.empty()) {
    std::string msg = std::to_string(unknown.size()) + " node id(s) not in the graph component:";
    for (std::size_t i = 0; i < unknown.size() && i < 20; ++i) msg += " " + unknown[i];
    throw Error(msg);
  }
  return nodes;
}

Json config_to_json(const RDConfig& config) {
  Json j;
  j["k"] = config.k;
  j["restarts"] = config.max_restarts;
  j["iterations"] = config.max_iterations;
  j["epsilon_floor"] = config.epsilon_floor;
  j["early_stop"] = config.early_stop;
  return j;
}

Json model_to_json(const RDModel& model, const Graph& g, std::span<const NodeId> refs,
                   std::span<const NodeId> targets) {
  Json j;
  j["k"] = model.labeling.k;
  j["cost"] = model.cost;
  j["group_sizes"] = model.labeling.group_sizes();
  Json labeling = Json::array();
  for (std::size_t t = 0; t < targets.size(); ++t) {
    labeling.push_back({{"node_id", g.original_id(targets[t])},
                        {"group", model.labeling.groups[t] + 1}});
  }
  j["labeling"] = std::move(labeling);
  Json means = Json::array();
  for (std::size_t i = 0; i < model.means.rows(); ++i) {
    const auto row = model.means.row(i);
    means.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["means"] = std::move(means);
  Json ref_ids = Json::array();
  for (NodeId v : refs) ref_ids.push_back(g.original_id(v));
  j["references"] = std::move(ref_ids);
  j["seed"] = model.seed;
  j["config"] = config_to_json(model.config);
  j["best_restart"] = model.best_restart;
  j["iterations_used"] = model.iterations_used;
  return j;
}

Json provenance_to_json(const ReferenceSet& refs, const Graph& g) {
  Json j;
  j["strategy"] = to_string(refs.strategy);
  j["count"] = refs.nodes.size();
  j["seed"] = refs.seed;
  if (refs.strategy == SamplingStrategy::betweenness) {
    j["pair_count"] = refs.pair_count;
    Json freq = Json::array();
    for (std::size_t i = 0; i < refs.nodes.size(); ++i) {
      freq.push_back({{"node_id", g.original_id(refs.nodes[i])},
                      {"frequency", refs.frequencies[i]}});
    }
    j["frequencies"] = std::move(freq);
  }
  return j;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

Json read_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  return Json::parse(in);
}

void write_cost_curve_csv(const std::filesystem::path& path, std::span<const double> costs) {
  auto out = open_out(path);
  out << "k,cost\n";
  for (std::size_t i = 0; i < costs.size(); ++i) {
    out << (i + 1) << ',' << format_double(costs[i]) << '\n';
  }
}

}  // namespace regdecomp::io
