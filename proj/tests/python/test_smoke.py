import math

import numpy as np
import pytest

import regdecomp


def test_version():
    assert isinstance(regdecomp.__version__, str)


def test_parse_and_components():
    g, stats = regdecomp.parse_edge_list("# c\n5 5\n5 6\n6 7\n8 9\n")
    assert g.node_count == 5
    assert g.edge_count == 3
    assert stats["self_loops"] == 1
    assert g.original_ids[:3] == ["5", "6", "7"]
    giant, retained = regdecomp.giant_component(g)
    assert giant.node_count == 3
    assert retained == [0, 1, 2]
    with pytest.raises(regdecomp.Error):
        regdecomp.parse_edge_list("1 2 3\n")


def test_distances():
    g = regdecomp.Graph.from_edges(4, [(0, 1), (1, 2)])
    d = regdecomp.sssp_distances(g, 0)
    assert d.tolist()[:3] == [0, 1, 2]
    assert d[3] == regdecomp.UNREACHABLE
    m = regdecomp.distance_matrix(g, [0, 2], [0, 1, 2])
    assert m.shape == (2, 3)
    assert m.tolist() == [[0, 1, 2], [2, 1, 0]]
    with pytest.raises(regdecomp.Error):
        regdecomp.distance_matrix(g, [0], [3])


def test_cost_functions():
    D = np.array([[1, 2, 3, 4], [4, 3, 2, 1]])
    means = regdecomp.estimate_means(D, [0, 0, 1, 1], 2)
    assert means.tolist() == [[1.5, 3.5], [3.5, 1.5]]
    expected = 20 - 6 * math.log(1.5) - 14 * math.log(3.5)
    assert regdecomp.total_cost(D, [0, 0, 1, 1], 2) == pytest.approx(expected, rel=1e-12)
    costs = regdecomp.node_costs(D, means)
    assert costs.shape == (4, 2)
    labels, repaired = regdecomp.local_update(D, [0, 1, 0, 1], 2)
    assert not repaired
    assert len(labels) == 4
    assert regdecomp.classify([1, 4], means) == 0


def test_planted_pipeline():
    g, truth = regdecomp.planted_partition(400, 24, 2, seed=3)
    giant, retained = regdecomp.giant_component(g)
    nodes = list(range(giant.node_count))
    D = regdecomp.distance_matrix(giant, nodes, nodes)
    model = regdecomp.regular_decomposition(D, 2, seed=1, restarts=10)
    assert model.k == 2
    assert model.means.shape == (len(nodes), 2)
    assert model.cost == pytest.approx(regdecomp.total_cost(D, model.labels, 2), rel=1e-12)
    err = regdecomp.misclassification_rate(model.labels, [truth[v] for v in retained])
    assert err < 0.05
    k_star, costs, _ = regdecomp.select_k(D, 4, seed=1, restarts=10)
    assert 1 <= k_star <= 4
    assert len(costs) == 4
    assert costs[1] < costs[0]


def test_select_k_on_ideal_blocks():
    base = np.array([[1, 3], [2, 4], [3, 1], [4, 2]])
    D = base[:, [0, 0, 0, 0, 1, 1, 1, 1]]
    k_star, costs, monotone = regdecomp.select_k(D, 4, seed=1, restarts=20)
    assert k_star == 2
    assert monotone


def test_sampling_and_expansion():
    g = regdecomp.preferential_attachment(300, seed=2)
    assert g.edge_count == 3 + 3 * 297
    refs = regdecomp.uniform_references(g, 10, seed=1)
    assert len(set(refs)) == 10
    nodes, freq = regdecomp.betweenness_references(g, 30, 5, seed=1)
    assert len(nodes) == 5
    assert freq == sorted(freq, reverse=True)
    star = regdecomp.Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert regdecomp.expand_partition(star, [1, None, None, None]) == [1, 1, 1, 1]


def test_theory():
    q = regdecomp.theory.spectral_quantities(20, 2, 1e4)
    assert q["lambda1"] == 11 and q["lambda2"] == 9
    assert regdecomp.theory.above_ks_threshold(20, 2)
    assert not regdecomp.theory.above_ks_threshold(5, 4)
    d1, d2 = regdecomp.theory.solve_distances(20, 2, 1e4)
    assert d1 < d2
    report = regdecomp.theory_report(5, 4, 1000)
    assert report["above_ks_threshold"] is False
    assert report["alpha"] is None
