"""Smoke tests for the python bindings: one pass over every exposed surface."""

import math
import os

import pytest

import dppr

DATA_DIR = os.environ.get("DPPR_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


@pytest.fixture(scope="module")
def karate():
    return dppr.parse_edgelist_file(os.path.join(DATA_DIR, "karate.edges"))


def triangle():
    return dppr.Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def test_parse_karate(karate):
    assert karate.num_nodes == 34
    assert karate.num_edges == 78
    assert abs(karate.average_degree - 4.59) < 0.005
    assert karate.index_of("1") == 0
    assert max(karate.degree(u) for u in range(34)) == 17


def test_graph_roundtrip():
    g = triangle()
    text = g.serialize()
    assert dppr.parse_edgelist(text).edge_list() == g.edge_list()


def test_operators():
    g = triangle()
    assert dppr.laplacian_apply(g, [1.0, 1.0, 1.0]) == [0.0, 0.0, 0.0]
    y = dppr.walk_apply(g, [1.0, 0.0, 0.0])
    assert y == pytest.approx([0.0, 0.5, 0.5])
    z = dppr.resolvent_apply(g, 1.0, [1.0, 0.0, 0.0])
    assert z == pytest.approx([3.0, -1.0, -1.0])


def test_cg_matches_dense():
    g = triangle()
    b = [1.0, -1.0, 0.0]
    report = dppr.cg_solve(g, b, dppr.CgConfig(alpha=1.0, tol=1e-12))
    dense = dppr.dense_resolvent_solve(g, b, 1.0)
    assert report.solution == pytest.approx(dense, abs=1e-10)
    assert report.final_residual <= 1e-12


def test_ppr_probability_vector(karate):
    v = dppr.ppr_solve(karate, 0, dppr.PprConfig(beta=0.85))
    assert min(v.values) >= 0.0
    assert sum(v.values) == pytest.approx(1.0, abs=1e-9)
    assert v.values[0] >= 0.15


def test_ppr_triangle_exact():
    v = dppr.ppr_solve(triangle(), 0, dppr.PprConfig(beta=0.5, tol=1e-12))
    assert v.values == pytest.approx([0.6, 0.2, 0.2], abs=1e-9)


def test_dppr_score_symmetry(karate):
    cfg = dppr.SolverConfig(alpha=1.0, beta=0.85)
    a = dppr.dppr_score(karate, 0, 33, cfg)
    b = dppr.dppr_score(karate, 33, 0, cfg)
    assert a.distance == pytest.approx(b.distance, abs=1e-12)
    assert a.score == pytest.approx(1.0 / (a.distance + 1e-10))


def test_baselines(karate):
    assert dppr.common_neighbors(karate, 0, 33) > 0
    assert dppr.adamic_adar(karate, 0, 33) > 0.0
    k2 = dppr.Graph.from_edges(2, [(0, 1)])
    katz = dppr.katz_score(k2, 0, 1, dppr.KatzConfig(damping=0.1))
    assert katz == pytest.approx(0.1 / 0.99, abs=1e-9)


def test_generators_deterministic():
    a = dppr.generate_ba(dppr.BaParams(n=100, m=3, seed=9))
    b = dppr.generate_ba(dppr.BaParams(n=100, m=3, seed=9))
    assert a.edge_list() == b.edge_list()
    assert a.num_edges == 3 * 97 + 3

    g, communities = dppr.generate_lfr(dppr.LfrParams(n=250, mu=0.2, seed=4))
    assert g.num_nodes == 250
    assert len(communities) == 250
    assert 0.0 < dppr.mean_mixing_fraction(g, communities) < 0.4


def test_holdout_and_aupr(karate):
    split = dppr.holdout_split(karate, 0.1, 7)
    assert len(split.positives) == 7
    assert len(split.negatives) == 7
    assert split.train.num_edges == 71
    assert dppr.aupr([1, 0], [0.2, 0.9]) == pytest.approx(0.5)
    assert dppr.aupr([1, 1, 0], [0.9, 0.8, 0.1]) == pytest.approx(1.0)


def test_run_benchmark(karate):
    rows = dppr.run_benchmark(
        karate,
        ["dppr", "cn"],
        dppr.Protocol(fraction=0.2, repeats=2, seed=1),
        dppr.SolverConfig(alpha=1.0, beta=0.85),
        dppr.KatzConfig(),
    )
    assert len(rows) == 4
    for row in rows:
        assert row["ok"]
        assert 0.0 <= row["aupr"] <= 1.0


def test_diffusion_mass_conservation():
    g = triangle()
    trace = dppr.diffuse_trace(g, [1.0, 0.0, 0.0], [0.0, 1.0], steps_per_unit=500)
    for snap in trace.snapshots:
        assert sum(snap) == pytest.approx(1.0, abs=1e-9)
    expected = 1.0 / 3.0 + math.exp(-3.0) * 2.0 / 3.0
    assert trace.snapshots[1][0] == pytest.approx(expected, abs=1e-3)
