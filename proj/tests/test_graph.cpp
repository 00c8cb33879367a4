#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "regdecomp/graph.hpp"
#include "regdecomp/rng.hpp"

using namespace regdecomp;

namespace {

Graph build(std::size_t n, const std::vector<std::pair<int, int>>& edges, bool directed = false) {
  std::vector<Edge> list;
  for (auto [u, v] : edges) list.push_back({NodeId(u), NodeId(v)});
  return Graph::from_edges(n, list, directed);
}

std::vector<std::pair<int, int>> random_edges(std::size_t n, double p, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && rng.bernoulli(p)) edges.emplace_back(int(u), int(v));
  return edges;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("parse: path graph") {
    auto parsed = parse_edge_list(std::string_view("0 1\n1 2\n"), false);
    CHECK(parsed.graph.node_count() == 3);
    CHECK(parsed.graph.edge_count() == 2);
    CHECK(parsed.graph.out_degree(1) == 2);
    CHECK(parsed.graph.original_id(0) == "0");
    CHECK(parsed.graph.original_id(2) == "2");
  }

  TEST_CASE("parse: comment and self-loop are dropped") {
    auto parsed = parse_edge_list(std::string_view("# c\n5 5\n5 6\n"), false);
    CHECK(parsed.graph.node_count() == 2);
    CHECK(parsed.graph.edge_count() == 1);
    CHECK(parsed.stats.comment_lines == 1);
    CHECK(parsed.stats.self_loops == 1);
    CHECK(parsed.graph.find("5") == NodeId{0});
    CHECK(parsed.graph.find("6") == NodeId{1});
  }

  TEST_CASE("parse: reversed duplicate collapses when undirected") {
    auto parsed = parse_edge_list(std::string_view("a b\nb a\n"), false);
    CHECK(parsed.graph.node_count() == 2);
    CHECK(parsed.graph.edge_count() == 1);
    CHECK(parsed.stats.duplicate_edges == 1);

    auto directed = parse_edge_list(std::string_view("a b\nb a\n"), true);
    CHECK(directed.graph.edge_count() == 2);
  }

  TEST_CASE("parse: blank lines, tabs and CRLF") {
    auto parsed = parse_edge_list(std::string_view("\n1\t2\r\n\n2   3\n"), false);
    CHECK(parsed.graph.node_count() == 3);
    CHECK(parsed.graph.edge_count() == 2);
    CHECK(parsed.stats.blank_lines == 2);
  }

  TEST_CASE("parse: malformed line reports its number") {
    try {
      parse_edge_list(std::string_view("0 1\n# ok\n1 2 3\n"), false);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_edge_list(std::string_view("7\n"), false), ParseError);
  }

  TEST_CASE("edge list round trip") {
    auto g = parse_edge_list(std::string_view("x y\ny z\nz x\nz w\n"), false).graph;
    std::ostringstream out;
    write_edge_list(out, g);
    auto back = parse_edge_list(std::string_view(out.str()), false).graph;
    CHECK(back.node_count() == g.node_count());
    CHECK(back.edge_count() == g.edge_count());
    CHECK(back.original_ids() == g.original_ids());
  }

  TEST_CASE("giant component: triangle unchanged") {
    auto g = build(3, {{0, 1}, {1, 2}, {0, 2}});
    auto sub = giant_component(g, ComponentMode::weak);
    CHECK(sub.graph.node_count() == 3);
    CHECK(sub.graph.edge_count() == 3);
  }

  TEST_CASE("giant component: triangle plus disjoint edge") {
    auto g = build(5, {{3, 4}, {0, 1}, {1, 2}, {0, 2}});
    auto sub = giant_component(g, ComponentMode::weak);
    CHECK(sub.retained == std::vector<NodeId>{0, 1, 2});
    CHECK(sub.graph.edge_count() == 3);
  }

  TEST_CASE("giant component: ties go to the smallest index") {
    auto g = build(4, {{2, 3}, {0, 1}});
    CHECK(giant_component(g, ComponentMode::weak).retained == std::vector<NodeId>{0, 1});
  }

  TEST_CASE("giant component: strong mode") {
    // 0->1->2->0 is a cycle, 2->3->4->3 hangs off it.
    auto g = build(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 3}}, true);
    auto sub = giant_component(g, ComponentMode::strong);
    CHECK(sub.retained == std::vector<NodeId>{0, 1, 2});
    CHECK(is_connected(sub.graph, ComponentMode::strong));
    CHECK(giant_component(g, ComponentMode::weak).graph.node_count() == 5);
    CHECK_THROWS_AS(giant_component(build(2, {{0, 1}}), ComponentMode::strong), Error);
    CHECK_THROWS_AS(giant_component(Graph{}, ComponentMode::weak), Error);
  }

  TEST_CASE("giant component is connected on random graphs") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const bool directed = trial % 2 == 1;
      auto edges = random_edges(30, directed ? 0.08 : 0.04, rng);
      auto g = build(30, edges, directed);
      const auto mode = directed ? ComponentMode::strong : ComponentMode::weak;
      auto sub = giant_component(g, mode);
      CHECK(is_connected(sub.graph, mode));
      // Retained nodes are mutually reachable in the host graph, and no
      // component is larger.
      auto fw = oracle::floyd_warshall(30, edges, false);
      if (directed) fw = oracle::floyd_warshall(30, edges, true);
      for (NodeId u = 0; u < 30; ++u) {
        std::size_t reach = 0;
        for (NodeId v = 0; v < 30; ++v)
          reach += fw[u][v] != oracle::kInf && fw[v][u] != oracle::kInf;
        CHECK(reach <= sub.retained.size());
      }
      for (NodeId u : sub.retained)
        for (NodeId v : sub.retained) CHECK(fw[u][v] != oracle::kInf);
    }
  }

  TEST_CASE("sssp examples") {
    CHECK(sssp_distances(build(3, {{0, 1}, {1, 2}}), 0) == std::vector<Distance>{0, 1, 2});
    CHECK(sssp_distances(build(4, {{0, 1}, {2, 3}}), 0) ==
          std::vector<Distance>{0, 1, kUnreachable, kUnreachable});
    CHECK(sssp_distances(build(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}), 0) ==
          std::vector<Distance>{0, 1, 1, 1, 1});
  }

  TEST_CASE("sssp agrees with Floyd-Warshall on small graphs") {
    Rng rng(5);
    for (int trial = 0; trial < 400; ++trial) {
      const std::size_t n = 1 + rng.below(8);
      const bool directed = trial % 2 == 0;
      const double p = 0.1 + 0.5 * rng.uniform01();
      auto edges = random_edges(n, p, rng);
      auto g = build(n, edges, directed);
      auto fw = oracle::floyd_warshall(n, edges, directed);
      for (std::size_t s = 0; s < n; ++s) {
        auto d = sssp_distances(g, NodeId(s));
        for (std::size_t t = 0; t < n; ++t) REQUIRE(d[t] == fw[s][t]);
      }
    }
  }

  TEST_CASE("distance matrix examples") {
    auto tri = build(3, {{0, 1}, {1, 2}, {0, 2}});
    std::vector<NodeId> all{0, 1, 2};
    auto d = distance_matrix(tri, all, all);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(d(i, j) == (i == j ? 0u : 1u));

    std::vector<NodeId> one{1};
    auto single = distance_matrix(tri, one, one);
    CHECK(single.rows() == 1);
    CHECK(single.cols() == 1);
    CHECK(single(0, 0) == 0);
  }

  TEST_CASE("distance matrix: unreachable pair is an error") {
    auto g = build(4, {{0, 1}, {2, 3}});
    std::vector<NodeId> refs{0}, targets{1, 3};
    CHECK_THROWS_WITH_AS(distance_matrix(g, refs, targets), doctest::Contains("3"), Error);
  }

  TEST_CASE("distance matrix: symmetric, zero diagonal, triangle inequality") {
    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
      auto g = giant_component(build(40, random_edges(40, 0.05, rng)), ComponentMode::weak).graph;
      const std::size_t n = g.node_count();
      std::vector<NodeId> all(n);
      for (std::size_t v = 0; v < n; ++v) all[v] = NodeId(v);
      auto d = distance_matrix(g, all, all, 1 + trial % 3);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(d(i, i) == 0);
        for (std::size_t j = 0; j < n; ++j) {
          REQUIRE(d(i, j) == d(j, i));
          REQUIRE((d(i, j) == 0) == (i == j));
          for (std::size_t w = 0; w < n; w += 7) REQUIRE(d(i, j) <= d(i, w) + d(w, j));
        }
      }
    }
  }

  TEST_CASE("distance matrix: directed distances run reference to target") {
    auto g = build(3, {{0, 1}, {1, 2}, {2, 0}}, true);
    std::vector<NodeId> refs{0}, targets{1, 2};
    auto d = distance_matrix(g, refs, targets);
    CHECK(d(0, 0) == 1);
    CHECK(d(0, 1) == 2);
  }

  TEST_CASE("distance matrix does not depend on thread count") {
    Rng rng(21);
    auto g = giant_component(build(200, random_edges(200, 0.02, rng)), ComponentMode::weak).graph;
    std::vector<NodeId> all(g.node_count());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = NodeId(v);
    auto serial = distance_matrix(g, all, all, 1);
    CHECK(distance_matrix(g, all, all, 3).entries() == serial.entries());
    CHECK(distance_matrix(g, all, all, 0).entries() == serial.entries());
  }

  TEST_CASE("distance CSV layout") {
    auto g = parse_edge_list(std::string_view("a b\nb c\n"), false).graph;
    std::vector<NodeId> refs{0}, targets{1, 2};
    std::ostringstream out;
    write_distance_csv(out, distance_matrix(g, refs, targets), g);
    CHECK(out.str() == "reference,b,c\na,1,2\n");
  }
}
