"""Ollivier Ricci curvature, sphere curvature and Bakry-Emery curvature.

Ollivier curvature is computed from its Laplacian characterisation

    kappa(x, y) = inf { (Lf(x) - Lf(y)) / d(x, y) : f 1-Lipschitz, f(x) - f(y) = d(x, y) }

as a linear program in the values of ``f`` on ``S = B_1(x) u B_1(y)``, with
``d`` the hop distance of the whole graph. Any 1-Lipschitz function on ``S``
extends to a 1-Lipschitz function on the graph (McShane extension), and the
objective only reads ``f`` on ``S``, so the localisation is exact.

Bakry-Emery curvature at ``x`` is the largest ``K`` with
``Gamma_2(f)(x) >= K Gamma(f)(x)`` for all ``f``. Both sides are quadratic
forms in the values of ``f`` on ``B_2(x)``; ``Gamma`` only sees ``B_1(x)``, so
the values on the outer sphere are first minimised out of ``Gamma_2`` (a Schur
complement) and the remaining generalised eigenproblem lives on ``B_1(x)``
modulo constants.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.optimize import linprog

from ._util import fmt, parallel_map
from .errors import CycleError, NumericalError, PreconditionError
from .graph import WeightedGraph, inner_outer_degrees, is_connected, spheres
from .heat import DirichletRestriction
from .laplacian import gamma_vector
from .lp import INFEASIBLE, UNBOUNDED, LinearProgram

NULL_TOL = 1e-10
CD_TOL = 1e-9
COMPARISON_TOL = 1e-9
ORACLE_EPSILON = 1e-4

BOUNDARY = "boundary-contaminated"

SATISFIED = "criterion-satisfied"
NOT_SATISFIED = "not-satisfied"
BORDERLINE = "borderline"
LOG_EXPONENT_OK = 0.05
LOG_EXPONENT_BAD = 0.2


# -- Ollivier curvature: dual LP -------------------------------------------------

def _pair(G: WeightedGraph, x, y):
    i, j = G.index(x), G.index(y)
    if i == j:
        raise PreconditionError("curvature needs two distinct vertices")
    D = int(G.hop_distances(i)[j])
    if D < 0:
        raise PreconditionError(f"{x!r} and {y!r} lie in different components")
    return i, j, D


def _support(G, i, j):
    """Sorted indices of ``B_1(x) u B_1(y)``."""
    ni, _ = G.neighbor_slice(i)
    nj, _ = G.neighbor_slice(j)
    return np.unique(np.concatenate([[i, j], ni, nj]))


def _local_distances(G, S, depth):
    """Hop distances of the full graph between the vertices of ``S``."""
    out = np.empty((len(S), len(S)), dtype=np.float64)
    for a, u in enumerate(S.tolist()):
        d = G.hop_distances_bounded(u, depth)[S]
        if np.any(d < 0):
            raise NumericalError("local distance exceeded the search depth")
        out[a] = d
    return out


def _laplacian_row(G, i, S, pos):
    """Coefficients of ``f -> Lf(x_i)`` on the support ``S``."""
    row = np.zeros(len(S))
    nb, w = G.neighbor_slice(i)
    m = G.measure_array[i]
    row[pos[i]] += w.sum() / m
    np.add.at(row, [pos[k] for k in nb.tolist()], -w / m)
    return row


def _dual_lp(G, i, j, D):
    S = _support(G, i, j)
    pos = {int(v): a for a, v in enumerate(S.tolist())}
    d = _local_distances(G, S, D + 2)
    px, py = pos[i], pos[j]
    c_f = (_laplacian_row(G, i, S, pos) - _laplacian_row(G, j, S, pos)) / D
    dy = d[:, py]
    # g = f + d(., y) >= 0 with f(y) = 0; g(y) is dropped from the variables
    var = [a for a in range(len(S)) if a != py]
    col = {a: k for k, a in enumerate(var)}
    rows, rhs = [], []
    for u in range(len(S)):
        for v in range(len(S)):
            if u == v or u == py:
                continue
            r = np.zeros(len(var))
            r[col[u]] = 1.0
            if v != py:
                r[col[v]] = -1.0
            rows.append(r)
            rhs.append(d[u, v] + dy[u] - dy[v])
    A_eq = np.zeros((1, len(var)))
    A_eq[0, col[px]] = 1.0
    lp = LinearProgram(c_f[var], np.array(rows), np.array(rhs), A_eq, [2.0 * D])
    res = lp.solve()
    if res.status == UNBOUNDED:
        raise NumericalError("internal error: curvature LP is unbounded")
    if res.status == INFEASIBLE:
        raise NumericalError("internal error: curvature LP is infeasible")
    g = np.zeros(len(S))
    g[var] = res.x
    f = g - dy
    value = float(c_f @ f)
    return value, S, f


def ollivier_dual_lp(G: WeightedGraph, x, y) -> float:
    """Ollivier Ricci curvature ``kappa(x, y)`` from the dual linear program."""
    i, j, D = _pair(G, x, y)
    return _dual_lp(G, i, j, D)[0]


def optimal_potential(G: WeightedGraph, x, y) -> dict:
    """A minimising 1-Lipschitz ``f`` on ``B_1(x) u B_1(y)``, normalised to ``f(y) = 0``."""
    i, j, D = _pair(G, x, y)
    _, S, f = _dual_lp(G, i, j, D)
    return {G.vertices[k]: float(v) for k, v in zip(S.tolist(), f.tolist())}


# -- closed forms ---------------------------------------------------------------------

def short_cycle_through(G: WeightedGraph, x, y, max_length: int = 5):
    """A cycle of length at most ``max_length`` through the edge ``xy``, or ``None``.

    The cycle is returned as a vertex list starting at ``x`` and ending at ``y``
    (the closing edge ``y -> x`` is implicit).
    """
    i, j = G.index(x), G.index(y)
    parent = {i: -1}
    depth = {i: 0}
    queue = deque([i])
    while queue:
        u = queue.popleft()
        if depth[u] >= max_length - 1:
            continue
        nb, _ = G.neighbor_slice(u)
        for v in nb.tolist():
            if u == i and v == j:
                continue
            if v in parent:
                continue
            parent[v] = u
            depth[v] = depth[u] + 1
            if v == j:
                path = [j]
                while parent[path[-1]] != -1:
                    path.append(parent[path[-1]])
                return [G.vertices[k] for k in reversed(path)]
            queue.append(v)
    return None


def ollivier_closed_form_cyclefree(G: WeightedGraph, x, y) -> float:
    """``2 b(x,y) (1/m(x) + 1/m(y)) - Deg(x) - Deg(y)`` for an edge on no 3-, 4- or 5-cycle."""
    b = G.edge_weight(x, y)
    if b == 0:
        raise PreconditionError(f"{x!r} and {y!r} are not adjacent")
    cycle = short_cycle_through(G, x, y)
    if cycle is not None:
        raise CycleError(f"edge {x}--{y} lies on a {len(cycle)}-cycle", cycle)
    return 2.0 * b * (1.0 / G.measure(x) + 1.0 / G.measure(y)) - G.degree(x) - G.degree(y)


def _chain_data(source):
    """``(m, b_right)`` arrays of a birth-death chain from a profile or a path graph."""
    if isinstance(source, WeightedGraph):
        G = source
        if G.n == 0 or not is_connected(G) or G.num_edges != G.n - 1:
            raise PreconditionError("input is not a chain")
        indptr = G.csr[0]
        if np.any(np.diff(indptr) > 2):
            raise PreconditionError("input is not a chain: a vertex has three neighbours")
        ends = [k for k in range(G.n) if indptr[k + 1] - indptr[k] <= 1]
        start = 0 if G.n == 1 else min(ends, key=lambda k: G.vertices[k])
        order = np.argsort(G.hop_distances(start), kind="stable")
        m = G.measure_array[order]
        b = np.array([G.edge_weight(G.vertices[a], G.vertices[c])
                      for a, c in zip(order[:-1].tolist(), order[1:].tolist())] + [0.0])
        return m, b
    mS = np.asarray(getattr(source, "mS", None))
    dB = np.asarray(getattr(source, "dB", None))
    if mS.ndim != 1 or mS.shape != dB.shape:
        raise PreconditionError("input is not a chain")
    return mS, dB


def ollivier_birthdeath(source, j: int, k: int) -> float:
    """Chain formula ``(1/(k-j)) [(b(j,j+1) - b(j,j-1))/m(j) - (b(k,k+1) - b(k,k-1))/m(k)]``.

    ``source`` is a radial profile (``b(r, r+1) = dB[r]``) or a path graph whose
    positions are hop distances from its lexicographically first end.
    """
    m, b = _chain_data(source)
    if not (0 <= j < k < len(m)):
        raise PreconditionError(f"need 0 <= j < k <= {len(m) - 1}")

    def bracket(r):
        left = b[r - 1] if r > 0 else 0.0
        return (b[r] - left) / m[r]

    return (bracket(j) - bracket(k)) / (k - j)


# -- epsilon oracle ---------------------------------------------------------------------

def _lazy_measure(G, i, eps):
    nb, w = G.neighbor_slice(i)
    support = np.concatenate([[i], nb])
    mass = np.concatenate([[1.0 - eps * G.degree_array[i]], eps * w / G.measure_array[i]])
    return support, mass


def wasserstein_1(G: WeightedGraph, support_a, mass_a, support_b, mass_b) -> float:
    """Transport cost between two finitely supported measures under hop distance."""
    support_a = np.asarray(support_a)
    support_b = np.asarray(support_b)
    cost = np.array([G.hop_distances(int(u))[support_b] for u in support_a.tolist()],
                    dtype=np.float64)
    if np.any(cost < 0):
        raise PreconditionError("measures live on different components")
    na, nb = len(support_a), len(support_b)
    A_eq = np.zeros((na + nb, na * nb))
    for a in range(na):
        A_eq[a, a * nb:(a + 1) * nb] = 1.0
    for c in range(nb):
        A_eq[na + c, c::nb] = 1.0
    b_eq = np.concatenate([mass_a, mass_b])
    res = linprog(cost.ravel(), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs",
                  options={"primal_feasibility_tolerance": 1e-10,
                           "dual_feasibility_tolerance": 1e-10})
    if res.status != 0:
        raise NumericalError(f"transport LP failed: {res.message}")
    return float(res.fun)


def ollivier_epsilon_oracle(G: WeightedGraph, x, y, eps: float = ORACLE_EPSILON) -> float:
    """``kappa^eps(x, y) / eps`` with ``kappa^eps = 1 - W(mu_x, mu_y) / d(x, y)``.

    ``mu_x`` keeps mass ``1 - eps Deg(x)`` at ``x`` and puts ``eps b(x,z)/m(x)``
    on each neighbour ``z``.
    """
    i, j, D = _pair(G, x, y)
    top = max(G.degree_array[i], G.degree_array[j])
    if not (0 < eps <= 1.0 / top):
        raise PreconditionError(f"eps must lie in (0, {fmt(1.0 / top)}]")
    sa, ma = _lazy_measure(G, i, eps)
    sb, mb = _lazy_measure(G, j, eps)
    W = wasserstein_1(G, sa, ma, sb, mb)
    return (1.0 - W / D) / eps


# -- reports ----------------------------------------------------------------------------

@dataclass
class CurvatureRow:
    kind: str
    id1: str
    id2: str
    value: float
    method: str
    flags: str = ""


@dataclass
class CurvatureReport:
    rows: list = field(default_factory=list)
    fits: dict = field(default_factory=dict)

    def extend(self, rows):
        self.rows.extend(rows)
        return self

    def values(self, kind: str) -> dict:
        return {(r.id1, r.id2): r.value for r in self.rows if r.kind == kind}

    def to_csv(self) -> str:
        out = ["kind,id1,id2_or_radius,value,method,flags"]
        out += [f"{r.kind},{r.id1},{r.id2},{fmt(r.value)},{r.method},{r.flags}"
                for r in self.rows]
        return "\n".join(out) + "\n"


def _pair_flags(G, i, j):
    if not G.frontier:
        return ""
    S = _support(G, i, j)
    return BOUNDARY if any(G.vertices[k] in G.frontier for k in S.tolist()) else ""


METHODS = ("dual-lp", "closed-form", "epsilon")


def edge_curvature(G: WeightedGraph, x, y, method: str = "dual-lp") -> float:
    if method == "dual-lp":
        return ollivier_dual_lp(G, x, y)
    if method == "closed-form":
        return ollivier_closed_form_cyclefree(G, x, y)
    if method == "epsilon":
        return ollivier_epsilon_oracle(G, x, y)
    raise PreconditionError(f"unknown curvature method {method!r}")


def edge_curvatures(G: WeightedGraph, pairs=None, method: str = "dual-lp") -> CurvatureReport:
    """Ollivier curvature of every edge (or of the given pairs), canonical order."""
    if pairs is None:
        pairs = [(x, y) for x, y, _ in G.edges()]
    pairs = [tuple(p) for p in pairs]

    def one(p):
        x, y = p
        return CurvatureRow("edge", x, y, edge_curvature(G, x, y, method), method,
                            _pair_flags(G, G.index(x), G.index(y)))

    return CurvatureReport(parallel_map(one, pairs))


# -- sphere curvature and Laplacian comparison ------------------------------------------------

def sphere_curvatures(G: WeightedGraph, x0, R: int = None) -> np.ndarray:
    """``kappa(r)`` for ``r = 0..R``: min over ``y`` in ``S_r`` of the max over inner
    neighbours ``x`` of ``kappa(x, y)``, with ``kappa(0) = 0``."""
    shells = spheres(G, x0)
    R = len(shells) - 1 if R is None else R
    if R < 0:
        raise PreconditionError("radius must be nonnegative")
    if R >= len(shells):
        raise PreconditionError(f"sphere of radius {R} is empty")
    dist = G.hop_distances(G.index(x0))
    pairs = []
    for r in range(1, R + 1):
        for yj in shells[r].tolist():
            nb, _ = G.neighbor_slice(yj)
            for xi in nb.tolist():
                if dist[xi] == r - 1:
                    pairs.append((xi, yj))

    def one(p):
        return _dual_lp(G, p[0], p[1], 1)[0]

    values = dict(zip(pairs, parallel_map(one, pairs)))
    kappa = np.zeros(R + 1)
    for r in range(1, R + 1):
        best = []
        for yj in shells[r].tolist():
            inner = [v for (xi, y2), v in values.items() if y2 == yj]
            best.append(max(inner))
        kappa[r] = min(best)
    return kappa


def sphere_curvature(G: WeightedGraph, x0, r: int) -> float:
    return float(sphere_curvatures(G, x0, r)[r])


@dataclass
class ComparisonReport:
    center: str
    radius: int
    kappa: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    vertices: tuple
    tol: float = COMPARISON_TOL

    @property
    def gaps(self) -> np.ndarray:
        return self.lhs - self.rhs

    @property
    def holds(self) -> bool:
        return bool(np.all(self.gaps >= -self.tol))

    @property
    def equality(self) -> bool:
        return bool(np.all(np.abs(self.gaps) <= self.tol))

    def verdict_line(self) -> str:
        return (f"laplacian comparison: {'holds' if self.holds else 'fails'} on B_{self.radius}"
                f" (tolerance {fmt(self.tol)}); equality: {'yes' if self.equality else 'no'};"
                f" min gap {fmt(float(self.gaps.min()))}")


def laplacian_comparison_check(G: WeightedGraph, x0, R: int = None) -> ComparisonReport:
    """Check ``L rho(x) >= sum_{j <= rho(x)} kappa(j) - Deg(x0)`` on ``B_R(x0)``,
    ``rho = d(., x0)``."""
    if not is_connected(G):
        raise PreconditionError("Laplacian comparison needs a connected graph")
    i0 = G.index(x0)
    dist = G.hop_distances(i0)
    R = int(dist.max()) if R is None else int(R)
    kappa = sphere_curvatures(G, x0, R)
    cum = np.cumsum(kappa)
    inner, outer = inner_outer_degrees(G, x0)
    inside = np.flatnonzero(dist <= R)
    lhs = inner[inside] - outer[inside]
    rhs = cum[dist[inside]] - G.degree_array[i0]
    return ComparisonReport(x0, R, kappa, lhs, rhs, tuple(G.vertices[k] for k in inside))


@dataclass
class CurvatureSCReport:
    radii: np.ndarray
    kappa: np.ndarray
    C: float
    delta: float
    verdict: str

    def verdict_line(self) -> str:
        return (f"curvature decay: {self.verdict} (heuristic: fit -kappa(r) ~ (log r)^(1+delta) "
                f"on the last half of the radii; satisfied if delta <= {fmt(LOG_EXPONENT_OK)},"
                f" not satisfied if delta >= {fmt(LOG_EXPONENT_BAD)}; sharp regime is "
                f"-(log r)^(1+eps)); C {fmt(self.C)}, delta {fmt(self.delta)}")


def curvature_sc_test(radii, kappa) -> CurvatureSCReport:
    """Heuristic test of ``kappa(r) >= -C log r`` for large ``r``."""
    radii = np.asarray(radii, dtype=np.float64)
    kappa = np.asarray(kappa, dtype=np.float64)
    if radii.shape != kappa.shape:
        raise PreconditionError("radii and curvature values must have equal length")
    usable = radii >= 2
    if usable.sum() < 4 or radii.max() < 10:
        raise PreconditionError("need curvature samples up to radius at least 10")
    r, k = radii[usable], kappa[usable]
    tail = slice(len(r) // 2, len(r))
    r, k = r[tail], k[tail]
    neg = -k
    C = float(max(0.0, np.max(neg / np.log(r))))
    pos = neg > 0
    if pos.sum() < 2:
        return CurvatureSCReport(radii, kappa, C, float("-inf"), SATISFIED)
    slope, _ = np.polyfit(np.log(np.log(r[pos])), np.log(neg[pos]), 1)
    delta = float(slope - 1.0)
    if delta <= LOG_EXPONENT_OK:
        verdict = SATISFIED
    elif delta >= LOG_EXPONENT_BAD:
        verdict = NOT_SATISFIED
    else:
        verdict = BORDERLINE
    return CurvatureSCReport(radii, kappa, C, delta, verdict)


# -- Bakry-Emery curvature -----------------------------------------------------------------------

@dataclass
class BakryEmeryForms:
    """Matrices of ``f -> Gamma(f)(x)`` and ``f -> Gamma_2(f)(x)`` on ``B_2(x)``.

    ``ball`` holds graph indices ordered as ``x``, then ``S_1`` then ``S_2``.
    """

    center: int
    ball: np.ndarray
    n1: int
    gamma: np.ndarray
    gamma2: np.ndarray


def bakry_emery_forms(G: WeightedGraph, x) -> BakryEmeryForms:
    i = G.index(x)
    d = G.hop_distances_bounded(i, 2)
    s1 = np.flatnonzero(d == 1)
    s2 = np.flatnonzero(d == 2)
    ball = np.concatenate([[i], s1, s2]).astype(np.int64)
    n = len(ball)
    pos = {int(v): a for a, v in enumerate(ball.tolist())}
    m = G.measure_array

    def grad_form(k):
        """Matrix of Gamma(f)(k) for k in B_1(x)."""
        M = np.zeros((n, n))
        nb, w = G.neighbor_slice(k)
        a = pos[k]
        for z, bz in zip(nb.tolist(), w.tolist()):
            c = pos[z]
            M[a, a] += bz
            M[c, c] += bz
            M[a, c] -= bz
            M[c, a] -= bz
        return M / (2.0 * m[k])

    def lap_row(k):
        row = np.zeros(n)
        nb, w = G.neighbor_slice(k)
        row[pos[k]] += w.sum()
        for z, bz in zip(nb.tolist(), w.tolist()):
            row[pos[z]] -= bz
        return row / m[k]

    Gx = grad_form(i)
    Lx = lap_row(i)
    nb, w = G.neighbor_slice(i)
    part_lap = np.zeros((n, n))
    part_mix = np.zeros((n, n))
    for y, by in zip(nb.tolist(), w.tolist()):
        part_lap += by * (Gx - grad_form(y))
        e = np.zeros(n)
        e[pos[y]] += 1.0
        e[0] -= 1.0
        outer = np.outer(e, lap_row(y) - Lx)
        part_mix += by * 0.5 * (outer + outer.T)
    G2 = (-0.5 * part_lap + 0.5 * part_mix) / m[i]
    G2 = 0.5 * (G2 + G2.T)
    return BakryEmeryForms(i, ball, 1 + len(s1), Gx, G2)


@dataclass
class BakryEmeryResult:
    value: float
    minimizer: np.ndarray
    forms: BakryEmeryForms


def bakry_emery_detail(G: WeightedGraph, x) -> BakryEmeryResult:
    F = bakry_emery_forms(G, x)
    n1 = F.n1
    n = len(F.ball)
    # Gamma's null space is the functions constant on B_1(x): dimension |S_2| + 1
    ev = np.linalg.eigvalsh(F.gamma)
    scale = max(1.0, float(np.abs(ev).max()))
    null_dim = int(np.sum(np.abs(ev) <= NULL_TOL * scale))
    if null_dim != n - n1 + 1:
        raise NumericalError(
            f"Gamma form at {x!r} has null space of dimension {null_dim}, expected {n - n1 + 1}")
    A = F.gamma2[:n1, :n1]
    B = F.gamma2[:n1, n1:]
    C = F.gamma2[n1:, n1:]
    if n > n1:
        cmin = float(np.linalg.eigvalsh(C).min())
        if cmin < -NULL_TOL * scale:
            raise NumericalError(f"Gamma_2 is negative on Gamma's null space at {x!r}")
        # outer-sphere values minimise Gamma_2 for fixed values on B_1(x)
        X = np.linalg.solve(C, B.T)
        Sch = A - B @ X
    else:
        X = np.zeros((0, n1))
        Sch = A
    # quotient by constants on B_1(x): orthonormal basis of the complement of 1
    ones = np.ones((n1, 1)) / math.sqrt(n1)
    P = scipy.linalg.null_space(ones.T)
    S_red = P.T @ Sch @ P
    G_red = P.T @ F.gamma[:n1, :n1] @ P
    S_red = 0.5 * (S_red + S_red.T)
    G_red = 0.5 * (G_red + G_red.T)
    w, V = scipy.linalg.eigh(S_red, G_red)
    u = P @ V[:, 0]
    f = np.concatenate([u, -X @ u])
    return BakryEmeryResult(float(w[0]), f, F)


def bakry_emery_curvature(G: WeightedGraph, x) -> float:
    """Largest ``K`` with ``Gamma_2(f)(x) >= K Gamma(f)(x)`` for every ``f``."""
    return bakry_emery_detail(G, x).value


def cd_check(G: WeightedGraph, x, K: float) -> bool:
    """Whether ``CD(K, inf)`` holds at ``x`` (tolerance 1e-9)."""
    return bakry_emery_curvature(G, x) >= K - CD_TOL


def vertex_curvatures(G: WeightedGraph, vertices=None) -> CurvatureReport:
    vertices = list(G.vertices if vertices is None else vertices)

    def one(x):
        i = G.index(x)
        flag = ""
        if G.frontier:
            nb, _ = G.neighbor_slice(i)
            if any(G.vertices[k] in G.frontier for k in [i] + nb.tolist()):
                flag = BOUNDARY
        return CurvatureRow("vertex", x, "", bakry_emery_curvature(G, x), "bakry-emery", flag)

    return CurvatureReport(parallel_map(one, vertices))


# -- cutoffs and the gradient estimate ---------------------------------------------------------------

def cutoff_function(G: WeightedGraph, rho, x0, n: float) -> np.ndarray:
    """``phi_n = min(max((2n - rho(., x0)) / n, 0), 1)`` for a pseudo metric ``rho``."""
    if not n > 0:
        raise PreconditionError("n must be positive")
    d = rho.distances_from(x0)
    phi = np.clip((2.0 * n - d) / n, 0.0, 1.0)
    phi[~np.isfinite(d)] = 0.0
    return phi


def gradient_estimate_gap(G: WeightedGraph, f, t: float, K: float) -> float:
    """``max_x [Gamma(P_t f) - e^{-2Kt} P_t Gamma(f)](x)`` on a finite graph."""
    R = DirichletRestriction(G, G.vertices)
    f = np.asarray(f, dtype=np.float64)
    left = gamma_vector(G, R.semigroup_apply(t, f))
    right = math.exp(-2.0 * K * t) * R.semigroup_apply(t, gamma_vector(G, f))
    return float(np.max(left - right))


__all__ = [
    "ollivier_dual_lp", "optimal_potential", "short_cycle_through",
    "ollivier_closed_form_cyclefree", "ollivier_birthdeath", "wasserstein_1",
    "ollivier_epsilon_oracle", "CurvatureRow", "CurvatureReport", "edge_curvature",
    "edge_curvatures", "sphere_curvatures", "sphere_curvature", "ComparisonReport",
    "laplacian_comparison_check", "CurvatureSCReport", "curvature_sc_test",
    "BakryEmeryForms", "bakry_emery_forms", "BakryEmeryResult", "bakry_emery_detail",
    "bakry_emery_curvature", "cd_check", "vertex_curvatures", "cutoff_function",
    "gradient_estimate_gap", "METHODS",
]
