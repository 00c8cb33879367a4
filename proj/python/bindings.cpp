#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "regdecomp/experiments.hpp"
#include "regdecomp/generators.hpp"
#include "regdecomp/metrics.hpp"
#include "regdecomp/rd.hpp"
#include "regdecomp/sampling.hpp"
#include "regdecomp/theory.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace regdecomp;

namespace {

using IntArray = py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;

DistanceMatrix to_distance_matrix(const IntArray& array) {
  if (array.ndim() != 2) throw py::value_error("distance matrix must be 2-dimensional");
  const auto m = static_cast<std::size_t>(array.shape(0));
  const auto n = static_cast<std::size_t>(array.shape(1));
  std::vector<Distance> entries(m * n);
  const std::int64_t* data = array.data();
  for (std::size_t i = 0; i < m * n; ++i) {
    if (data[i] < 0) throw py::value_error("distances must be nonnegative");
    entries[i] = static_cast<Distance>(data[i]);
  }
  return DistanceMatrix(m, n, std::move(entries));
}

py::array_t<std::uint32_t> to_array(const DistanceMatrix& d) {
  py::array_t<std::uint32_t> out({d.rows(), d.cols()});
  std::copy(d.entries().begin(), d.entries().end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const RealMatrix& mat) {
  py::array_t<double> out({mat.rows(), mat.cols()});
  std::copy(mat.data().begin(), mat.data().end(), out.mutable_data());
  return out;
}

MeanMatrix to_means(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw py::value_error("means must be 2-dimensional");
  MeanMatrix means(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), means.data().begin());
  return means;
}

Labeling to_labeling(const std::vector<GroupId>& groups, std::size_t k) {
  Labeling z{groups, k};
  z.validate();
  return z;
}

ComponentMode to_mode(const std::string& mode) {
  if (mode == "weak") return ComponentMode::weak;
  if (mode == "strong") return ComponentMode::strong;
  throw py::value_error("mode must be 'weak' or 'strong'");
}

py::dict stats_dict(const EdgeListStats& s) {
  py::dict d;
  d["lines"] = s.lines;
  d["comment_lines"] = s.comment_lines;
  d["blank_lines"] = s.blank_lines;
  d["edge_lines"] = s.edge_lines;
  d["self_loops"] = s.self_loops;
  d["duplicate_edges"] = s.duplicate_edges;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Regular decomposition of sparse graphs from distance matrices";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.attr("UNREACHABLE") = kUnreachable;

  py::class_<Graph>(m, "Graph")
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges, bool directed) {
            std::vector<Edge> list;
            for (auto [u, v] : edges) list.push_back({u, v});
            return Graph::from_edges(n, list, directed);
          },
          py::arg("node_count"), py::arg("edges"), py::arg("directed") = false)
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("directed", &Graph::directed)
      .def_property_readonly("original_ids", &Graph::original_ids)
      .def("edges",
           [](const Graph& g) {
             std::vector<std::pair<NodeId, NodeId>> out;
             for (const Edge& e : g.edges()) out.emplace_back(e.source, e.target);
             return out;
           })
      .def("neighbors",
           [](const Graph& g, NodeId v) {
             if (v >= g.node_count()) throw py::index_error("node out of range");
             auto s = g.out_neighbors(v);
             return std::vector<NodeId>(s.begin(), s.end());
           })
      .def("find", &Graph::find)
      .def("__len__", &Graph::node_count);

  m.def(
      "parse_edge_list",
      [](const std::string& text, bool directed) {
        auto parsed = parse_edge_list(std::string_view(text), directed);
        return py::make_tuple(std::move(parsed.graph), stats_dict(parsed.stats));
      },
      py::arg("text"), py::arg("directed") = false);
  m.def(
      "read_edge_list",
      [](const std::string& path, bool directed) {
        auto parsed = read_edge_list(path, directed);
        return py::make_tuple(std::move(parsed.graph), stats_dict(parsed.stats));
      },
      py::arg("path"), py::arg("directed") = false);
  m.def(
      "giant_component",
      [](const Graph& g, const std::string& mode) {
        auto sub = giant_component(g, to_mode(mode));
        return py::make_tuple(std::move(sub.graph), sub.retained);
      },
      py::arg("graph"), py::arg("mode") = "weak");
  m.def("sssp_distances",
        [](const Graph& g, NodeId source) {
          auto d = sssp_distances(g, source);
          return py::array_t<std::uint32_t>(static_cast<py::ssize_t>(d.size()), d.data());
        });
  m.def(
      "distance_matrix",
      [](const Graph& g, const std::vector<NodeId>& refs, const std::vector<NodeId>& targets,
         std::size_t threads) {
        py::gil_scoped_release release;
        auto d = distance_matrix(g, refs, targets, threads);
        py::gil_scoped_acquire acquire;
        return to_array(d);
      },
      py::arg("graph"), py::arg("refs"), py::arg("targets"), py::arg("threads") = 1);

  m.def(
      "planted_partition",
      [](std::size_t n, double a, double b, std::uint64_t seed) {
        auto lg = planted_partition(PlantedParams{n, a, b}, seed);
        return py::make_tuple(std::move(lg.graph), lg.labels);
      },
      py::arg("n"), py::arg("a"), py::arg("b"), py::arg("seed"));
  m.def(
      "sbm",
      [](const std::vector<std::size_t>& sizes, const std::vector<std::vector<double>>& probs,
         std::uint64_t seed) {
        auto lg = sbm(SBMParams{sizes, probs}, seed);
        return py::make_tuple(std::move(lg.graph), lg.labels);
      },
      py::arg("block_sizes"), py::arg("link_probs"), py::arg("seed"));
  m.def("preferential_attachment", &preferential_attachment, py::arg("n"), py::arg("seed"),
        py::arg("links_per_node") = 3);

  m.def(
      "uniform_references",
      [](const Graph& g, std::size_t count, std::uint64_t seed) {
        return uniform_references(g, count, seed).nodes;
      },
      py::arg("graph"), py::arg("m"), py::arg("seed"));
  m.def(
      "betweenness_references",
      [](const Graph& g, std::size_t pairs, std::size_t count, std::uint64_t seed) {
        auto set = betweenness_references(g, pairs, count, seed);
        return py::make_tuple(set.nodes, set.frequencies);
      },
      py::arg("graph"), py::arg("num_pairs"), py::arg("m"), py::arg("seed"));

  m.def(
      "estimate_means",
      [](const IntArray& d, const std::vector<GroupId>& z, std::size_t k, double eps) {
        return to_array(estimate_means(to_distance_matrix(d), to_labeling(z, k), eps));
      },
      py::arg("D"), py::arg("labels"), py::arg("k"), py::arg("epsilon_floor") = kDefaultEpsilonFloor);
  m.def(
      "node_costs",
      [](const IntArray& d, const py::array_t<double, py::array::c_style | py::array::forcecast>& means) {
        return to_array(node_costs(to_distance_matrix(d), to_means(means)));
      },
      py::arg("D"), py::arg("means"));
  m.def(
      "total_cost",
      [](const IntArray& d, const std::vector<GroupId>& z, std::size_t k, double eps) {
        return total_cost(to_distance_matrix(d), to_labeling(z, k), eps);
      },
      py::arg("D"), py::arg("labels"), py::arg("k"), py::arg("epsilon_floor") = kDefaultEpsilonFloor);
  m.def(
      "local_update",
      [](const IntArray& d, const std::vector<GroupId>& z, std::size_t k, double eps) {
        auto r = local_update(to_distance_matrix(d), to_labeling(z, k), eps);
        return py::make_tuple(r.labeling.groups, r.repaired);
      },
      py::arg("D"), py::arg("labels"), py::arg("k"), py::arg("epsilon_floor") = kDefaultEpsilonFloor);

  py::class_<RDModel>(m, "RDModel")
      .def_property_readonly("labels", [](const RDModel& r) { return r.labeling.groups; })
      .def_property_readonly("k", [](const RDModel& r) { return r.labeling.k; })
      .def_property_readonly("means", [](const RDModel& r) { return to_array(r.means); })
      .def_readonly("cost", &RDModel::cost)
      .def_readonly("restarts_run", &RDModel::restarts_run)
      .def_readonly("iterations_used", &RDModel::iterations_used)
      .def_readonly("best_restart", &RDModel::best_restart)
      .def_readonly("seed", &RDModel::seed);

  m.def(
      "regular_decomposition",
      [](const IntArray& d, std::size_t k, std::uint64_t seed, std::size_t restarts,
         std::size_t iterations, double eps, bool early_stop, std::size_t threads) {
        RDConfig config{k, restarts, iterations, eps, early_stop, threads};
        auto dm = to_distance_matrix(d);
        py::gil_scoped_release release;
        return regular_decomposition(dm, config, seed);
      },
      py::arg("D"), py::arg("k"), py::arg("seed") = 1, py::arg("restarts") = 100,
      py::arg("iterations") = 30, py::arg("epsilon_floor") = kDefaultEpsilonFloor,
      py::arg("early_stop") = true, py::arg("threads") = 1);
  m.def(
      "select_k",
      [](const IntArray& d, std::size_t k_max, std::uint64_t seed, std::size_t restarts,
         std::size_t iterations, double tau) {
        RDConfig config;
        config.max_restarts = restarts;
        config.max_iterations = iterations;
        auto dm = to_distance_matrix(d);
        py::gil_scoped_release release;
        auto sel = select_k(dm, k_max, config, seed, tau);
        py::gil_scoped_acquire acquire;
        return py::make_tuple(sel.k_star, sel.costs, sel.monotone);
      },
      py::arg("D"), py::arg("k_max"), py::arg("seed") = 1, py::arg("restarts") = 100,
      py::arg("iterations") = 30, py::arg("tau") = kDefaultKneeThreshold);
  m.def(
      "classify",
      [](const std::vector<Distance>& dist, const py::array_t<double, py::array::c_style | py::array::forcecast>& means) {
        return classify(dist, to_means(means));
      },
      py::arg("dist_to_refs"), py::arg("means"));
  m.def(
      "misclassification_rate",
      [](const std::vector<GroupId>& z, const std::vector<GroupId>& truth) {
        auto k_of = [](const std::vector<GroupId>& v) {
          return v.empty() ? std::size_t{1} : static_cast<std::size_t>(*std::max_element(v.begin(), v.end())) + 1;
        };
        return misclassification_rate(Labeling{z, k_of(z)}, Labeling{truth, k_of(truth)});
      },
      py::arg("labels"), py::arg("truth"));
  m.def("expand_partition", &expand_partition, py::arg("graph"), py::arg("labels"));

  auto th = m.def_submodule("theory", "Planted-partition predictions");
  th.def("spectral_quantities", [](double a, double b, double n) {
    auto q = theory::spectral_quantities(a, b, n);
    py::dict d;
    d["lambda1"] = q.lambda1;
    d["lambda2"] = q.lambda2;
    d["alpha"] = q.alpha;
    d["beta"] = q.beta;
    d["c"] = q.c;
    d["d"] = q.d;
    d["delta"] = q.delta;
    return d;
  });
  th.def("above_ks_threshold", &theory::above_ks_threshold);
  th.def("neighborhood_growth", [](double a, double b, unsigned t) {
    auto c = theory::neighborhood_growth(a, b, t);
    return py::make_tuple(c.same, c.other);
  });
  th.def("cumulative_growth", [](double a, double b, unsigned t) {
    auto c = theory::cumulative_growth(a, b, t);
    return py::make_tuple(c.same, c.other);
  });
  th.def("solve_distances", [](double a, double b, double n) {
    auto d = theory::solve_distances(a, b, n);
    return py::make_tuple(d.d1, d.d2);
  });
  th.def("asymptotic_distances", [](double a, double b, double n) {
    auto d = theory::asymptotic_distances(a, b, n);
    return py::make_tuple(d.d1, d.d2);
  });
  th.def("cost_gap", &theory::cost_gap);
  th.def("report_json", [](double a, double b, double n) { return cmd_theory(a, b, n).dump(); });

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
