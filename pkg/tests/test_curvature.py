import math

import numpy as np
import pytest

from heatgraph.errors import CycleError, PreconditionError
from heatgraph.graph import WeightedGraph
from heatgraph.curvature import (BORDERLINE, NOT_SATISFIED, SATISFIED, bakry_emery_curvature,
                                 bakry_emery_detail, bakry_emery_forms, cd_check,
                                 curvature_sc_test, cutoff_function, edge_curvatures,
                                 gradient_estimate_gap, laplacian_comparison_check,
                                 ollivier_birthdeath, ollivier_closed_form_cyclefree,
                                 ollivier_dual_lp, ollivier_epsilon_oracle, optimal_potential,
                                 short_cycle_through, sphere_curvature, sphere_curvatures,
                                 vertex_curvatures, wasserstein_1)
from heatgraph.laplacian import gamma_vector, laplacian_vector
from heatgraph.metrics import sigma_path_metric
from heatgraph.symmetric import antitree_spec, birthdeath_spec, build_profile, realize_graph

from helpers import (be_sampling_oracle, corpus, k2, normalized_measure, path_graph,
                     polarized_forms, random_chain, random_graph, random_tree, regular_tree,
                     star, z_window)


def interior_edge(T):
    root = T.vertices[0]
    child = T.vertices[1]
    return root, child


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_regular_tree_edges(k):
    T = regular_tree(k, 3)
    x, y = interior_edge(T)
    assert ollivier_dual_lp(T, x, y) == pytest.approx(4 - 2 * k, abs=1e-9)
    assert ollivier_closed_form_cyclefree(T, x, y) == 4 - 2 * k


def test_small_examples():
    assert ollivier_dual_lp(k2(), "a", "b") == pytest.approx(2, abs=1e-9)
    P = path_graph(3)
    assert ollivier_dual_lp(P, P.vertices[0], P.vertices[1]) == pytest.approx(1, abs=1e-9)
    assert ollivier_closed_form_cyclefree(k2(), "a", "b") == 2


def test_triangle_has_cycle_witness():
    T = WeightedGraph({"a": 1, "b": 1, "c": 1}, [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)])
    with pytest.raises(CycleError) as info:
        ollivier_closed_form_cyclefree(T, "a", "b")
    cyc = info.value.cycle
    assert cyc[0] == "a" and cyc[-1] == "b" and len(cyc) == 3


def test_short_cycle_detection():
    C6 = WeightedGraph({f"c{i}": 1 for i in range(6)},
                       [(f"c{i}", f"c{(i + 1) % 6}", 1) for i in range(6)])
    assert short_cycle_through(C6, "c0", "c1") is None
    C5 = WeightedGraph({f"c{i}": 1 for i in range(5)},
                       [(f"c{i}", f"c{(i + 1) % 5}", 1) for i in range(5)])
    assert len(short_cycle_through(C5, "c0", "c1")) == 5
    # on the 6-cycle the closed form still applies and matches the LP
    assert ollivier_closed_form_cyclefree(C6, "c0", "c1") == pytest.approx(
        ollivier_dual_lp(C6, "c0", "c1"), abs=1e-9)


def test_closed_form_on_random_trees(rng):
    for _ in range(10):
        T = random_tree(rng, 20)
        for x, y, _ in T.edges():
            assert abs(ollivier_dual_lp(T, x, y) - ollivier_closed_form_cyclefree(T, x, y)) <= 1e-9


def test_birthdeath_examples():
    p = build_profile(birthdeath_spec("1", 10))
    assert ollivier_birthdeath(p, 0, 1) == 1
    assert ollivier_birthdeath(p, 0, 2) == 0.5
    assert ollivier_birthdeath(p, 5, 6) == 0
    with pytest.raises(PreconditionError):
        ollivier_birthdeath(p, 3, 3)
    with pytest.raises(PreconditionError):
        ollivier_birthdeath(star(3), 0, 1)


def test_birthdeath_formula_matches_lp(rng):
    for _ in range(10):
        G = random_chain(rng, 10)
        for j in range(9):
            for k in range(j + 1, 10):
                lp = ollivier_dual_lp(G, G.vertices[j], G.vertices[k])
                assert abs(lp - ollivier_birthdeath(G, j, k)) <= 1e-9


def test_symmetry_and_measure_scaling(rng):
    G = random_graph(rng, 12, p=0.3)
    H = G.with_measure(G.measure_array * 2.5)
    for x, y, _ in list(G.edges())[:12]:
        k = ollivier_dual_lp(G, x, y)
        assert ollivier_dual_lp(G, y, x) == pytest.approx(k, abs=1e-9)
        assert ollivier_dual_lp(H, x, y) == pytest.approx(k / 2.5, abs=1e-9)


def test_optimal_potential_attains_value(rng):
    G = random_graph(rng, 12, p=0.3)
    x, y = G.vertices[0], G.vertices[5]
    f = optimal_potential(G, x, y)
    D = G.hop_distances(0)[5]
    assert f[y] == 0 and f[x] == pytest.approx(D)
    # Lipschitz on the support under full-graph distance
    for u in f:
        du = G.hop_distances(G.index(u))
        for v in f:
            assert f[u] - f[v] <= du[G.index(v)] + 1e-9
    # extend by McShane and evaluate the objective with the Laplacian
    ids = list(f)
    full = np.array([min(f[u] + G.hop_distances(G.index(u))[k] for u in ids)
                     for k in range(G.n)])
    L = laplacian_vector(G, full)
    value = (L[0] - L[5]) / D
    assert value == pytest.approx(ollivier_dual_lp(G, x, y), abs=1e-9)


def test_epsilon_oracle_examples():
    # eps = 1/2: both lazy measures are (1/2, 1/2) on {a, b}, so W = 0
    P = k2()
    half = [0.5, 0.5]
    assert wasserstein_1(P, [0, 1], half, [0, 1], half) == pytest.approx(0, abs=1e-12)
    assert ollivier_epsilon_oracle(P, "a", "b", 0.5) == pytest.approx(2.0, abs=1e-12)
    # eps = 1/4: move mass 1/2 across one edge, W = 1/2 and (1 - 1/2)/(1/4) = 2
    assert wasserstein_1(P, [0, 1], [0.75, 0.25], [0, 1], [0.25, 0.75]) == pytest.approx(0.5)
    assert ollivier_epsilon_oracle(P, "a", "b", 0.25) == pytest.approx(2.0, abs=1e-12)
    assert ollivier_epsilon_oracle(k2(), "a", "b") == pytest.approx(2.0, abs=1e-2)
    with pytest.raises(PreconditionError):
        ollivier_epsilon_oracle(k2(), "a", "a")
    with pytest.raises(PreconditionError):
        ollivier_epsilon_oracle(k2(), "a", "b", 1.5)


def test_epsilon_one_is_random_walk_step(rng):
    G = normalized_measure(random_graph(rng, 10, p=0.3))
    x, y = G.vertices[0], G.vertices[1]
    # with m = sum b, eps = 1 puts no mass at x: the simple random walk step
    nb, w = G.neighbor_slice(0)
    assert math.isclose(float(w.sum() / G.measure_array[0]), 1.0)
    assert np.isfinite(ollivier_epsilon_oracle(G, x, y, 1.0))


def test_epsilon_oracle_on_corpus(rng):
    for name, G in corpus(rng).items():
        for x, y, _ in list(G.edges())[:15]:
            assert abs(ollivier_epsilon_oracle(G, x, y) - ollivier_dual_lp(G, x, y)) <= 1e-2, name


def test_wasserstein_basic():
    P = path_graph(4)
    assert wasserstein_1(P, [0], [1.0], [3], [1.0]) == 3.0
    assert wasserstein_1(P, [0, 1], [0.5, 0.5], [0, 1], [0.5, 0.5]) == pytest.approx(0, abs=1e-12)


def test_sphere_curvature_examples():
    T = regular_tree(3, 4)
    root = T.vertices[0]
    assert sphere_curvature(T, root, 0) == 0
    assert sphere_curvature(T, root, 2) == pytest.approx(-2, abs=1e-9)
    P = path_graph(10)
    k = sphere_curvatures(P, P.vertices[0], 8)
    assert np.allclose(k[2:], 0, atol=1e-9) and k[1] == pytest.approx(1)
    with pytest.raises(PreconditionError):
        sphere_curvature(P, P.vertices[0], 10)


def test_laplacian_comparison():
    P = path_graph(12)
    rep = laplacian_comparison_check(P, P.vertices[0])
    assert rep.holds and rep.equality
    G = realize_graph(antitree_spec([1, 2, 3, 4, 5], 3))
    assert laplacian_comparison_check(G, G.vertices[0]).holds
    assert "laplacian comparison: holds" in laplacian_comparison_check(G, G.vertices[0]).verdict_line()


def test_comparison_on_random_trees(rng):
    for _ in range(5):
        T = random_tree(rng, 20)
        assert laplacian_comparison_check(T, T.vertices[0]).holds


def test_curvature_sc_test():
    r = np.arange(1, 201, dtype=float)
    assert curvature_sc_test(r, np.full(len(r), -5.0)).verdict == SATISFIED
    rep = curvature_sc_test(r, -np.log(r))
    assert rep.verdict == SATISFIED and rep.C == pytest.approx(1.0)
    assert curvature_sc_test(r, -np.log(r) ** 2).verdict == NOT_SATISFIED
    assert curvature_sc_test(r, -np.log(r) ** 1.1).verdict == BORDERLINE
    assert curvature_sc_test(r, np.ones(len(r))).verdict == SATISFIED
    with pytest.raises(PreconditionError):
        curvature_sc_test([1, 2, 3], [0, 0, 0])


def test_bakry_emery_k2():
    assert bakry_emery_curvature(k2(), "a") == pytest.approx(2.0, abs=1e-12)
    assert cd_check(k2(), "a", 2.0) and not cd_check(k2(), "a", 2.001)


def test_bakry_emery_forms_match_polarization(rng):
    G = random_graph(rng, 14, p=0.25)
    for x in G.vertices[:4]:
        F = bakry_emery_forms(G, x)
        ball, A1, A2 = polarized_forms(G, x)
        order = np.argsort(F.ball)
        assert np.array_equal(F.ball[order], ball)
        assert np.allclose(F.gamma[np.ix_(order, order)], A1, atol=1e-12)
        assert np.allclose(F.gamma2[np.ix_(order, order)], A2, atol=1e-10)


def test_bakry_emery_minimizer_attains(rng):
    G = random_graph(rng, 12, p=0.3)
    res = bakry_emery_detail(G, G.vertices[2])
    f = res.minimizer
    g1 = f @ res.forms.gamma @ f
    g2 = f @ res.forms.gamma2 @ f
    assert g2 / g1 == pytest.approx(res.value, rel=1e-9, abs=1e-9)


def test_bakry_emery_sampling_oracle(rng):
    for _ in range(3):
        G = random_graph(rng, 10, p=0.3)
        x = G.vertices[int(rng.integers(G.n))]
        k = bakry_emery_curvature(G, x)
        ok, refined = be_sampling_oracle(G, x, k, rng, samples=2000)
        assert ok and abs(refined - k) <= 1e-4


def test_bakry_emery_measure_scaling(rng):
    G = random_graph(rng, 10, p=0.3)
    H = G.with_measure(G.measure_array * 2.0)
    for x in G.vertices[:5]:
        assert bakry_emery_curvature(H, x) == pytest.approx(bakry_emery_curvature(G, x) / 2,
                                                            abs=1e-9)


def test_vertex_and_edge_reports_flag_frontier():
    G = realize_graph(antitree_spec("r+1", 3))
    rep = vertex_curvatures(G)
    flags = {r.id1: r.flags for r in rep.rows}
    assert flags[G.vertices[0]] == ""
    assert all(flags[v] == "boundary-contaminated" for v in G.frontier)
    edges = edge_curvatures(G)
    assert edges.to_csv().splitlines()[0] == "kind,id1,id2_or_radius,value,method,flags"
    assert any(r.flags == "boundary-contaminated" for r in edges.rows)
    assert edges.rows[0].flags == ""


def test_edge_methods_agree_on_tree():
    T = regular_tree(3, 3)
    lp = edge_curvatures(T, method="dual-lp").values("edge")
    cf = edge_curvatures(T, method="closed-form").values("edge")
    eps = edge_curvatures(T, method="epsilon").values("edge")
    for key in lp:
        assert abs(lp[key] - cf[key]) <= 1e-9 and abs(lp[key] - eps[key]) <= 1e-2
    with pytest.raises(PreconditionError):
        edge_curvatures(T, method="guess")


def test_pair_errors():
    G = WeightedGraph({"a": 1, "b": 1, "c": 1}, [("a", "b", 1)])
    with pytest.raises(PreconditionError):
        ollivier_dual_lp(G, "a", "a")
    with pytest.raises(PreconditionError):
        ollivier_dual_lp(G, "a", "c")


def test_cutoff_gradient_bound(rng):
    G = random_graph(rng, 40, p=0.08)
    rho = sigma_path_metric(G)
    for n in (0.5, 1.0, 2.0, 5.0):
        phi = cutoff_function(G, rho, G.vertices[0], n)
        assert phi.min() >= 0 and phi.max() <= 1 and phi[0] == 1
        assert np.all(gamma_vector(G, phi, phi) <= 1 / n + 1e-15)
    with pytest.raises(PreconditionError):
        cutoff_function(G, rho, G.vertices[0], 0)


def test_gradient_estimate(rng):
    for _ in range(5):
        G = random_graph(rng, 9, p=0.3)
        K = min(bakry_emery_curvature(G, x) for x in G.vertices)
        for t in (0.1, 1.0, 3.0):
            f = rng.normal(size=G.n)
            assert gradient_estimate_gap(G, f, t, K) <= 1e-7


def test_z_window_curvatures():
    G, ids = z_window(6)
    assert ollivier_dual_lp(G, ids[0], ids[1]) == pytest.approx(0, abs=1e-9)
    assert bakry_emery_curvature(G, ids[0]) == pytest.approx(0, abs=1e-9)
