#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "regdecomp/io.hpp"
#include "regdecomp/metrics.hpp"
#include "regdecomp/rd.hpp"

namespace regdecomp {

/// What a command did: its parameters, seed, the files it wrote and summary
/// metrics. `wall_time_seconds` is the only field that varies between
/// identical runs.
struct RunRecord {
  std::string command;
  io::Json parameters = io::Json::object();
  std::uint64_t seed = 0;
  double wall_time_seconds = 0.0;
  std::vector<std::filesystem::path> outputs;
  io::Json metrics = io::Json::object();
  std::vector<std::string> warnings;

  io::Json to_json() const;
};

/// Group sizes and link densities among labeled nodes.
///
/// density(u, v) counts edges from group u to group v over the possible
/// ordered (directed) or unordered (undirected) pairs; groups with fewer
/// than two members have diagonal density 0.
struct BlockSummary {
  std::vector<std::size_t> group_sizes;
  std::vector<std::vector<double>> density;
  std::vector<std::size_t> per_group_edges;
  /// Edge counts between groups (row = source group when directed).
  std::vector<std::vector<std::size_t>> edge_counts;
  bool directed = false;

  io::Json to_json() const;
};

BlockSummary block_summary(const Graph& g, const PartialLabeling& labels);

enum class GraphModel { planted, sbm, preferential_attachment };

struct GenerateOptions {
  GraphModel model = GraphModel::planted;
  std::size_t n = 2000;
  double a = 20;
  double b = 2;
  std::vector<std::size_t> block_sizes;            // sbm
  std::vector<std::vector<double>> link_probs;     // sbm
  std::size_t links_per_node = 3;                  // preferential attachment
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
  std::size_t threads = 1;
};

/// Writes graph.txt (edge list) and, for block models, labels.csv.
RunRecord cmd_generate(const GenerateOptions& options);

struct DecomposeOptions {
  std::filesystem::path graph;
  bool directed = false;
  /// all | uniform:<m> | betweenness:<pairs>,<m> | file:<path>
  std::string refs = "all";
  /// all | sample:<n> | file:<path>
  std::string targets = "all";
  std::optional<std::size_t> k;
  std::optional<std::size_t> k_max;
  RDConfig config;
  double tau = kDefaultKneeThreshold;
  bool expand = false;
  bool classify_rest = true;
  /// Optional ground truth, enabling misclassification metrics.
  std::optional<std::filesystem::path> truth;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
  bool write_distances = false;  // distances.csv for the target matrix
};

/// Giant component, references, distances, RD (or k selection), then
/// labels for the remaining nodes. Writes labels.csv, model.json,
/// references.csv, references.json and, with k_max, cost_curve.csv.
RunRecord cmd_decompose(const DecomposeOptions& options);

struct SweepOptions {
  std::filesystem::path graph;
  std::filesystem::path labels;
  bool directed = false;
  std::vector<std::size_t> m_values{50, 100, 200, 400};
  std::vector<std::size_t> target_sizes{100, 200, 300, 400};
  std::size_t trials = 5;
  /// config.k is replaced by the number of ground-truth groups.
  RDConfig config;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
};

struct SweepRow {
  std::size_t m = 0;
  std::size_t n_targets = 0;
  std::size_t trial = 0;
  double error = 0.0;
};

/// For every (m, target size, trial): uniform references and targets on the
/// giant component, RD on the m x n_targets matrix, misclassification
/// against the truth. Target sets depend only on (size, trial), so every m
/// is scored on the same targets. Writes sweep.csv in long format
/// "m,n_targets,trial,error".
RunRecord cmd_sweep_refs(const SweepOptions& options, std::vector<SweepRow>* rows = nullptr);

struct SummarizeOptions {
  std::filesystem::path graph;
  std::filesystem::path labels;
  bool directed = false;
  std::filesystem::path out_dir = ".";
  bool csv = false;  // also write density.csv
};

RunRecord cmd_summarize(const SummarizeOptions& options, BlockSummary* summary = nullptr);

/// All planted-partition predictions for (a, b, n). Quantities outside
/// their domain are null, with the reason under "notes".
io::Json cmd_theory(double a, double b, double n);

}  // namespace regdecomp
