// regdecomp: regular decomposition of sparse graphs from distance matrices.
//
//   regdecomp generate   --model planted --n 2000 --a 20 --b 2 --out data
//   regdecomp decompose  --graph data/graph.txt --k 2 --truth data/labels.csv --out run
//   regdecomp sweep-refs --graph data/graph.txt --labels data/labels.csv --out sweep
//   regdecomp summarize  --graph data/graph.txt --labels run/labels.csv --out run
//   regdecomp theory     --a 20 --b 2 --n 10000

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regdecomp/experiments.hpp"

using namespace regdecomp;

namespace {

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoul(item));
  return out;
}

// "p11,p12;p21,p22"
std::vector<std::vector<double>> parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> out;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<double> values;
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) values.push_back(std::stod(cell));
    out.push_back(std::move(values));
  }
  return out;
}

void flatten(const io::Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else {
    out << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void emit(const io::Json& j, const std::string& format) {
  if (format == "csv") {
    std::cout << "key,value\n";
    flatten(j, "", std::cout);
  } else {
    std::cout << j.dump(2) << '\n';
  }
}

void report(const RunRecord& record, const std::string& format) {
  for (const auto& w : record.warnings) std::cerr << "warning: " << w << '\n';
  emit(record.to_json(), format);
}

void add_rd_flags(CLI::App* cmd, RDConfig& config) {
  cmd->add_option("--restarts", config.max_restarts, "Random restarts (s_max)")
      ->capture_default_str();
  cmd->add_option("--iters", config.max_iterations, "Local updates per restart (t_max)")
      ->capture_default_str();
  cmd->add_option("--epsilon-floor", config.epsilon_floor, "Lower bound on fitted means")
      ->capture_default_str();
  cmd->add_flag("!--no-early-stop", config.early_stop,
                "Always run every local update, even at a fixed point");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular decomposition of sparse graphs via distance matrices"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string format = "json";
  std::size_t threads = 1;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--format", format, "Format of the record printed to stdout")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--threads", threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
  };

  // generate
  GenerateOptions gen;
  std::string model_name = "planted";
  std::string sizes_text;
  std::string probs_text;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic graph");
  add_common(generate);
  generate->add_option("--model", model_name, "planted | sbm | pa")
      ->check(CLI::IsMember({"planted", "sbm", "pa"}))
      ->capture_default_str();
  generate->add_option("--n", gen.n, "Node count (planted, pa)")->capture_default_str();
  generate->add_option("--a", gen.a, "Intra-block parameter (planted)")->capture_default_str();
  generate->add_option("--b", gen.b, "Inter-block parameter (planted)")->capture_default_str();
  generate->add_option("--sizes", sizes_text, "Block sizes, e.g. 500,500 (sbm)");
  generate->add_option("--probs", probs_text, "Link matrix rows, e.g. 0.02,0.002;0.002,0.02 (sbm)");
  generate->add_option("--links", gen.links_per_node, "Links per arriving node (pa)")
      ->capture_default_str();

  // decompose
  DecomposeOptions dec;
  std::size_t k = 0;
  std::size_t k_max = 0;
  std::string truth;
  bool no_classify = false;
  auto* decompose = app.add_subcommand("decompose", "Partition a graph into regular groups");
  add_common(decompose);
  decompose->add_option("--graph", dec.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  decompose->add_flag("--directed", dec.directed, "Treat edges as directed");
  decompose->add_option("--refs", dec.refs,
                        "all | uniform:<m> | betweenness:<pairs>,<m> | file:<path>")
      ->capture_default_str();
  decompose->add_option("--targets", dec.targets, "all | sample:<n> | file:<path>")
      ->capture_default_str();
  auto* k_opt = decompose->add_option("--k", k, "Number of groups");
  auto* kmax_opt = decompose->add_option("--k-max", k_max, "Select k in 1..k_max by the knee rule");
  k_opt->excludes(kmax_opt);
  add_rd_flags(decompose, dec.config);
  decompose->add_option("--tau", dec.tau, "Knee threshold")->capture_default_str();
  decompose->add_flag("--expand", dec.expand, "Extend labels to neighbors of target nodes");
  decompose->add_flag("--no-classify", no_classify, "Do not classify non-target nodes");
  decompose->add_option("--truth", truth, "Ground-truth labels CSV for error metrics");
  decompose->add_flag("--write-distances", dec.write_distances, "Also write distances.csv");

  // sweep-refs
  SweepOptions sweep;
  std::string m_list = "50,100,200,400";
  std::string target_list = "100,200,300,400";
  auto* sweep_cmd = app.add_subcommand("sweep-refs", "Misclassification versus reference count");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--graph", sweep.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--labels", sweep.labels, "Ground-truth labels CSV")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_flag("--directed", sweep.directed, "Treat edges as directed");
  sweep_cmd->add_option("--m-list", m_list, "Reference counts")->capture_default_str();
  sweep_cmd->add_option("--target-sizes", target_list, "Target set sizes")->capture_default_str();
  sweep_cmd->add_option("--trials", sweep.trials, "Trials per cell")->capture_default_str();
  add_rd_flags(sweep_cmd, sweep.config);

  // summarize
  SummarizeOptions sum;
  auto* summarize = app.add_subcommand("summarize", "Group sizes and link densities");
  add_common(summarize);
  summarize->add_option("--graph", sum.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  summarize->add_option("--labels", sum.labels, "Labels CSV (node_id,group)")
      ->required()
      ->check(CLI::ExistingFile);
  summarize->add_flag("--directed", sum.directed, "Treat edges as directed");

  // theory
  double a = 20, b = 2, n = 10000;
  bool theory_file = false;
  auto* theory_cmd = app.add_subcommand("theory", "Planted-partition distance predictions");
  add_common(theory_cmd);
  theory_cmd->add_option("--a", a, "Intra-block parameter")->capture_default_str();
  theory_cmd->add_option("--b", b, "Inter-block parameter")->capture_default_str();
  theory_cmd->add_option("--n", n, "Node count")->capture_default_str();
  theory_cmd->add_flag("--save", theory_file, "Also write theory.json under --out");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      gen.model = model_name == "planted" ? GraphModel::planted
                  : model_name == "sbm"   ? GraphModel::sbm
                                          : GraphModel::preferential_attachment;
      if (gen.model == GraphModel::sbm) {
        gen.block_sizes = parse_size_list(sizes_text);
        gen.link_probs = parse_matrix(probs_text);
      }
      gen.seed = seed;
      gen.out_dir = out_dir;
      gen.threads = threads;
      report(cmd_generate(gen), format);
    } else if (decompose->parsed()) {
      if (*k_opt) dec.k = k;
      if (*kmax_opt) dec.k_max = k_max;
      if (!truth.empty()) dec.truth = truth;
      dec.classify_rest = !no_classify;
      dec.config.threads = threads;
      dec.seed = seed;
      dec.out_dir = out_dir;
      report(cmd_decompose(dec), format);
    } else if (sweep_cmd->parsed()) {
      sweep.m_values = parse_size_list(m_list);
      sweep.target_sizes = parse_size_list(target_list);
      sweep.config.threads = threads;
      sweep.seed = seed;
      sweep.out_dir = out_dir;
      report(cmd_sweep_refs(sweep), format);
    } else if (summarize->parsed()) {
      sum.out_dir = out_dir;
      sum.csv = format == "csv";
      report(cmd_summarize(sum), format);
    } else if (theory_cmd->parsed()) {
      const auto record = cmd_theory(a, b, n);
      if (theory_file) {
        std::filesystem::create_directories(out_dir);
        io::write_json(std::filesystem::path(out_dir) / "theory.json", record);
      }
      emit(record, format);
    }
  } catch (const std::exception& e) {
    std::cerr << "regdecomp: error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
