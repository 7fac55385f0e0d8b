"""Graph builders shared by the test modules."""
import itertools

import numpy as np

from heatgraph.graph import WeightedGraph


def vid(i, width=3):
    return f"v{i:0{width}d}"


def path_graph(n, b=1.0, m=1.0, width=3):
    ids = [vid(i, width) for i in range(n)]
    return WeightedGraph({v: m for v in ids}, [(ids[i], ids[i + 1], b) for i in range(n - 1)])


def z_window(half, b=1.0, m=1.0):
    """Path on -half..half; ids sort in positional order, vertex 'z0000' is the origin."""
    ids = {k: f"z{k + half:04d}" for k in range(-half, half + 1)}
    G = WeightedGraph({v: m for v in ids.values()},
                      [(ids[k], ids[k + 1], b) for k in range(-half, half)])
    return G, ids


def star(k, m=1.0, b=1.0):
    leaves = [f"l{i:03d}" for i in range(k)]
    return WeightedGraph({"c": m, **{v: m for v in leaves}}, [("c", v, b) for v in leaves])


def k2(b=1.0, m=1.0):
    return WeightedGraph({"a": m, "b": m}, [("a", "b", b)])


def random_graph(rng, n, p=0.3, connected=True, wlo=0.5, whi=2.0, mlo=0.5, mhi=2.0):
    ids = [vid(i) for i in range(n)]
    edges = {}
    if connected:
        order = rng.permutation(n)
        for k in range(1, n):
            a, c = int(order[k]), int(order[rng.integers(0, k)])
            edges[min(a, c), max(a, c)] = rng.uniform(wlo, whi)
    for a, c in itertools.combinations(range(n), 2):
        if (a, c) not in edges and rng.random() < p:
            edges[a, c] = rng.uniform(wlo, whi)
    measure = {v: rng.uniform(mlo, mhi) for v in ids}
    return WeightedGraph(measure, [(ids[a], ids[c], w) for (a, c), w in edges.items()])


def random_tree(rng, n, weighted=True):
    ids = [vid(i) for i in range(n)]
    edges = []
    for k in range(1, n):
        parent = int(rng.integers(0, k))
        w = rng.uniform(0.5, 2.0) if weighted else 1.0
        edges.append((ids[parent], ids[k], w))
    measure = {v: (rng.uniform(0.5, 2.0) if weighted else 1.0) for v in ids}
    return WeightedGraph(measure, edges)


def random_chain(rng, n):
    ids = [vid(i) for i in range(n)]
    return WeightedGraph({v: rng.uniform(0.5, 2.0) for v in ids},
                         [(ids[i], ids[i + 1], rng.uniform(0.5, 2.0)) for i in range(n - 1)])


def regular_tree(k, depth):
    """k-regular tree truncated at ``depth``; the root is the first vertex."""
    from heatgraph.symmetric import realize_graph, tree_spec
    return realize_graph(tree_spec([k] + [k - 1] * depth, depth))


def normalized_measure(G):
    """Same edges with ``m(x) = sum_y b(x,y)`` (isolated vertices keep m)."""
    m = np.where(G.degree_sum_array > 0, G.degree_sum_array, G.measure_array)
    return G.with_measure(m)


def corpus(rng):
    """Named graphs used by the curvature and comparison suites."""
    from heatgraph.symmetric import antitree_spec, birthdeath_spec, realize_graph
    out = {
        "k2": k2(),
        "p3": path_graph(3),
        "star5": star(5),
        "z-window": z_window(6)[0],
        "tree3": regular_tree(3, 3),
        "antitree1234": realize_graph(antitree_spec([1, 2, 3, 4, 5], 3)),
        "antitree-r+1": realize_graph(antitree_spec("r+1", 4)),
        "birthdeath": realize_graph(birthdeath_spec("(r+1)^2", 8, m="r+1")),
    }
    for k in range(4):
        out[f"random{k}"] = random_graph(rng, 12, p=0.25)
        out[f"tree{k}"] = random_tree(rng, 15)
        out[f"chain{k}"] = random_chain(rng, 9)
    return out


def polarized_forms(G, x):
    """Matrices of f -> Gamma(f)(x) and f -> Gamma_2(f)(x) on B_2(x), assembled by
    polarization from the pointwise operators (ball in canonical index order)."""
    from heatgraph.laplacian import gamma, gamma2
    d = G.hop_distances_bounded(G.index(x), 2)
    ball = np.flatnonzero((d >= 0) & (d <= 2))
    n = len(ball)

    def embed(v):
        f = np.zeros(G.n)
        f[ball] = v
        return f

    def q1(v):
        f = embed(v)
        return gamma(G, f, f, x)

    def q2(v):
        return gamma2(G, embed(v), x)

    E = np.eye(n)
    forms = []
    for q in (q1, q2):
        M = np.zeros((n, n))
        diag = [q(E[a]) for a in range(n)]
        for a in range(n):
            M[a, a] = diag[a]
            for c in range(a + 1, n):
                M[a, c] = M[c, a] = 0.5 * (q(E[a] + E[c]) - diag[a] - diag[c])
        forms.append(M)
    return ball, forms[0], forms[1]


def be_sampling_oracle(G, x, kappa, rng, samples=10_000):
    """Smallest sampled Rayleigh quotient, and the value after BFGS refinement.

    Returns (lower_bound_ok, refined_value) where lower_bound_ok states that every
    sample satisfies Gamma_2 >= (kappa - 1e-7) Gamma.
    """
    from scipy.optimize import minimize
    _, A1, A2 = polarized_forms(G, x)
    n = len(A1)
    F = rng.normal(size=(samples, n))
    g1 = np.einsum("ij,jk,ik->i", F, A1, F)
    g2 = np.einsum("ij,jk,ik->i", F, A2, F)
    ok = bool(np.all(g2 >= (kappa - 1e-7) * g1 - 1e-12 * np.abs(g2)))
    ratio = np.where(g1 > 1e-12, g2 / np.where(g1 > 1e-12, g1, 1.0), np.inf)
    start = F[int(np.argmin(ratio))]

    def rq(v):
        return (v @ A2 @ v) / (v @ A1 @ v)

    def grad(v):
        a, b = v @ A2 @ v, v @ A1 @ v
        return 2 * (A2 @ v * b - A1 @ v * a) / b ** 2

    res = minimize(rq, start, jac=grad, method="BFGS", options={"gtol": 1e-12, "maxiter": 5000})
    return ok, float(res.fun)
