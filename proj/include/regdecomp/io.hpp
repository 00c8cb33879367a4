#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "regdecomp/graph.hpp"
#include "regdecomp/metrics.hpp"
#include "regdecomp/rd.hpp"
#include "regdecomp/sampling.hpp"

namespace regdecomp::io {

using Json = nlohmann::ordered_json;

/// One row of a "node_id,group" file; `group` as written (1-based).
struct LabelRow {
  std::string node_id;
  long long group = 0;
};

/// Writes the header "node_id,group" and one row per node with a label,
/// groups shifted to 1..k.
void write_labels_csv(const std::filesystem::path& path, const Graph& g,
                      const PartialLabeling& labels);
void write_labels_csv(const std::filesystem::path& path, const Graph& g,
                      std::span<const NodeId> nodes, std::span<const GroupId> groups);

std::vector<LabelRow> read_labels_csv(const std::filesystem::path& path);

/// Maps label rows onto the graph's nodes (group g in the file becomes g-1).
/// Throws Error listing every ID the graph does not contain.
PartialLabeling resolve_labels(const Graph& g, const std::vector<LabelRow>& rows);

/// One-column CSV with header "node_id".
void write_id_list(const std::filesystem::path& path, const Graph& g,
                   std::span<const NodeId> nodes);
/// Reads a one-column ID list; a leading "node_id" header is skipped.
std::vector<std::string> read_id_list(const std::filesystem::path& path);
/// Resolves IDs against the graph; throws Error listing unknown IDs.
std::vector<NodeId> resolve_ids(const Graph& g, const std::vector<std::string>& ids);

Json config_to_json(const RDConfig& config);
Json model_to_json(const RDModel& model, const Graph& g, std::span<const NodeId> refs,
                   std::span<const NodeId> targets);
Json provenance_to_json(const ReferenceSet& refs, const Graph& g);

void write_json(const std::filesystem::path& path, const Json& j);
Json read_json(const std::filesystem::path& path);

/// Header "k,cost" and one row per k.
void write_cost_curve_csv(const std::filesystem::path& path, std::span<const double> costs);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace regdecomp::io
