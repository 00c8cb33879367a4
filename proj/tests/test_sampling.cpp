#include <doctest.h>

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <set>

#include "oracles.hpp"
#include "regdecomp/generators.hpp"
#include "regdecomp/sampling.hpp"

using namespace regdecomp;

namespace {

Graph build(std::size_t n, const std::vector<std::pair<int, int>>& edges, bool directed = false) {
  std::vector<Edge> list;
  for (auto [u, v] : edges) list.push_back({NodeId(u), NodeId(v)});
  return Graph::from_edges(n, list, directed);
}

Graph star(std::size_t leaves) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t v = 1; v <= leaves; ++v) edges.emplace_back(0, int(v));
  return build(leaves + 1, edges);
}

Graph path(std::size_t n) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) edges.emplace_back(int(v), int(v + 1));
  return build(n, edges);
}

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("uniform: whole population") {
    auto g = path(12);
    auto set = uniform_references(g, 12, 4);
    std::vector<NodeId> sorted = set.nodes;
    std::sort(sorted.begin(), sorted.end());
    for (NodeId v = 0; v < 12; ++v) CHECK(sorted[v] == v);
    CHECK(set.strategy == SamplingStrategy::uniform);
    CHECK(set.seed == 4);
  }

  TEST_CASE("uniform: bounds") {
    auto g = path(5);
    CHECK_THROWS_AS(uniform_references(g, 6, 1), Error);
    CHECK_THROWS_AS(uniform_references(g, 0, 1), Error);
  }

  TEST_CASE("uniform: deterministic and distinct") {
    auto g = path(300);
    auto a = uniform_references(g, 40, 77);
    CHECK(a.nodes == uniform_references(g, 40, 77).nodes);
    CHECK(std::set<NodeId>(a.nodes.begin(), a.nodes.end()).size() == 40);
    CHECK(a.nodes != uniform_references(g, 40, 78).nodes);
  }

  TEST_CASE("uniform: single draw is uniform over nodes") {
    const std::size_t n = 10;
    auto g = path(n);
    std::vector<std::size_t> counts(n, 0);
    for (std::uint64_t seed = 0; seed < 20000; ++seed) ++counts[uniform_references(g, 1, seed).nodes[0]];
    const double critical = boost::math::quantile(
        boost::math::complement(boost::math::chi_squared(double(n - 1)), 0.001));
    CHECK(critical == doctest::Approx(27.877).epsilon(1e-4));
    CHECK(oracle::chi_square_uniform(counts) < critical);
  }

  TEST_CASE("uniform: every pair of nodes is equally likely") {
    const std::size_t n = 6;
    auto g = path(n);
    std::vector<std::size_t> counts(n * n, 0);
    for (std::uint64_t seed = 0; seed < 30000; ++seed) {
      auto s = uniform_references(g, 2, seed).nodes;
      ++counts[std::min(s[0], s[1]) * n + std::max(s[0], s[1])];
    }
    std::vector<std::size_t> pairs;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v) pairs.push_back(counts[u * n + v]);
    const double critical = boost::math::quantile(
        boost::math::complement(boost::math::chi_squared(double(pairs.size() - 1)), 0.001));
    CHECK(oracle::chi_square_uniform(pairs) < critical);
  }

  TEST_CASE("shortest path tie-break walks to the smallest predecessor") {
    // Two routes 0-1-3 and 0-2-3; the walk back from 3 prefers node 1.
    auto g = build(4, {{0, 2}, {2, 3}, {0, 1}, {1, 3}});
    CHECK(shortest_path(g, 0, 3) == std::vector<NodeId>{0, 1, 3});
    CHECK(shortest_path(g, 2, 2) == std::vector<NodeId>{2});
    auto split = build(4, {{0, 1}, {2, 3}});
    CHECK(shortest_path(split, 0, 3).empty());
  }

  TEST_CASE("betweenness: star center comes first") {
    auto g = star(12);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto set = betweenness_references(g, 10, 3, seed);
      REQUIRE(!set.nodes.empty());
      CHECK(set.nodes[0] == 0);
      CHECK(set.frequencies[0] == 10);
    }
  }

  TEST_CASE("betweenness: path tie-break by index") {
    auto g = path(10);
    std::vector<std::pair<NodeId, NodeId>> pairs{{0, 9}};
    auto set = path_frequency_references(g, pairs, 3);
    CHECK(set.nodes == std::vector<NodeId>{0, 1, 2});
    CHECK(set.frequencies == std::vector<std::size_t>{1, 1, 1});
  }

  TEST_CASE("betweenness: fewer path nodes than m") {
    auto g = path(10);
    std::vector<std::pair<NodeId, NodeId>> pairs{{2, 4}};
    auto set = path_frequency_references(g, pairs, 8);
    CHECK(set.nodes == std::vector<NodeId>{2, 3, 4});
  }

  TEST_CASE("betweenness: frequencies are non-increasing and output is deterministic") {
    auto g = preferential_attachment(800, 3);
    auto set = betweenness_references(g, 60, 25, 8);
    CHECK(set.nodes.size() == 25);
    CHECK(std::is_sorted(set.frequencies.rbegin(), set.frequencies.rend()));
    CHECK(set.pair_count == 60);
    CHECK(set.strategy == SamplingStrategy::betweenness);
    auto again = betweenness_references(g, 60, 25, 8, 3);
    CHECK(again.nodes == set.nodes);
    CHECK(again.frequencies == set.frequencies);
  }

  TEST_CASE("betweenness: disconnected input is an error") {
    auto g = build(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(betweenness_references(g, 5, 2, 1), Error);
    auto one_way = build(3, {{0, 1}, {1, 2}}, true);
    CHECK_THROWS_AS(betweenness_references(one_way, 5, 2, 1), Error);
  }

  TEST_CASE("betweenness: selects high-degree nodes on preferential attachment") {
    const std::size_t n = 5000;
    int hits = 0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
      auto g = preferential_attachment(n, std::uint64_t(s));
      auto set = betweenness_references(g, 100, 30, std::uint64_t(s) + 1000);
      double selected = 0;
      for (NodeId v : set.nodes) selected += double(g.out_degree(v));
      selected /= double(set.nodes.size());
      const double overall = 2.0 * double(g.edge_count()) / double(n);
      hits += selected >= 3 * overall;
    }
    CHECK(hits >= 95);
  }
}
