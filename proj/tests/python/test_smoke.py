import math

import pytest

import swrw


def triangle_with_tail():
    return swrw.Graph([(0, 1), (1, 2), (2, 0), (2, 3, 2.5)])


def test_graph_basics():
    g = triangle_with_tail()
    assert g.node_count == 4
    assert g.edge_count == 4
    assert g.degree(2) == 3
    assert g.node_weight(2) == pytest.approx(4.5)
    assert g.total_weight == pytest.approx(11.0)
    assert g.find_node(3) == 3
    assert g.is_connected()


def test_invalid_graph_raises_value_error():
    with pytest.raises(ValueError):
        swrw.Graph([(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        swrw.Graph([(0, 1, -1.0)])


def test_stationary_matches_node_weights():
    g = triangle_with_tail()
    pi = swrw.exact_stationary(g)
    total = g.total_weight
    for v in range(g.node_count):
        assert pi[v] == pytest.approx(g.node_weight(v) / total, abs=1e-10)


def test_sample_and_estimators():
    g, p = swrw.generate("two_community", scale=0.05, seed=3)
    assert g.node_count == 5050
    assert g.edge_count == 25275
    for method in ("uis", "rw", "mhrw", "wrw"):
        s = swrw.sample(g, p, method=method, n=500, seed=1)
        assert len(s) == 500
        fractions = swrw.size_fractions(s)
        assert math.isclose(sum(fractions), 1.0, rel_tol=1e-12)
    s = swrw.sample(g, p, method="rw", n=2000, seed=2)
    vols = swrw.volume_fractions(s, star=True)
    assert math.isclose(sum(vols), 1.0, rel_tol=1e-9)
    ones = [1.0] * g.node_count
    assert swrw.hh_mean(s, ones) == pytest.approx(1.0)


def test_swrw_sample_is_deterministic():
    g, p = swrw.generate("two_community", scale=0.05, seed=3)
    a = swrw.sample(g, p, method="swrw", n=300, seed=9, gamma=50.0, pilot_len=40)
    b = swrw.sample(g, p, method="swrw", n=300, seed=9, gamma=50.0, pilot_len=40)
    assert a.nodes == b.nodes
    assert a.sampler == "swrw"


def test_wis_requires_weights():
    g = triangle_with_tail()
    with pytest.raises(ValueError):
        swrw.sample(g, method="wis", n=10)
    s = swrw.sample(g, method="wis", n=50, weights=[0.0, 0.0, 0.0, 1.0])
    assert set(s.nodes) == {3}


def test_stuck_walk_raises_library_error():
    assert issubclass(swrw.StuckError, swrw.SwrwError)
    assert issubclass(swrw.PilotError, swrw.SwrwError)
    # Node 0 only touches a zero-weight edge.
    g = swrw.Graph([(0, 1, 0.0), (1, 2), (2, 3), (3, 1)])
    with pytest.raises(swrw.StuckError):
        swrw.sample(g, method="wrw", n=5, start=0)


def test_stratification_numbers():
    assert swrw.gain([10, 1000]) == pytest.approx(25.5025)
    assert swrw.gain([1, 3], objective="mean", sigmas=[2, 1]) == pytest.approx(1.12)
    n = swrw.allocate([1, 3], objective="mean", budget=10, sigmas=[2, 1])
    assert n == pytest.approx([4.0, 6.0])
    assert swrw.nrmse([1.0, 3.0], 2.0) == pytest.approx(0.5)
    mean, var = swrw.toy_a_analytic(1.0, 100)
    assert (mean, var) == pytest.approx((0.5, 0.0025))


def test_small_experiment(tmp_path):
    out = swrw.run_experiment(preset="figure5", seed=2, reps=3, n_grid=[200], w_grid=[1, 10], scale=0.05,
                              out_dir=str(tmp_path))
    methods = {c["method"] for c in out["curves"]}
    assert {"rw", "wrw", "swrw"} <= methods
    assert (tmp_path / "curves.csv").exists()
    assert dict(out["manifest"])["seed"] == "2"
