"""Intrinsic and adapted pseudo metrics, jump sizes and volume growth.

A pseudo metric ``rho`` is *intrinsic* when ``sum_y b(x,y) rho(x,y)^2 <= m(x)``
at every vertex and *adapted* when this holds after capping ``rho`` at 1.
Path metrics are shortest-path distances under nonnegative edge lengths; the
standard choice is

    sigma(x, y) = max(Deg(x), Deg(y))^(-1/2)

and its adapted variant ``sigma_1 = min(sigma, 1)``.

Volume-based criteria fit asymptotic exponents on a finite radius grid. The
fit window is the last half of the grid and every verdict they produce is a
heuristic whose thresholds are carried in the report.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from ._util import fmt, parallel_map
from .errors import PreconditionError
from .graph import UNREACHABLE, WeightedGraph

INTRINSIC_TOL = 1e-12
SYMMETRY_RTOL = 1e-12
BORDERLINE_BAND = 0.05
GRIGORYAN_EXPONENT = 2.0
CUBIC_EXPONENT = 3.0
CUBIC_MARGIN = 1.05
SHRINK_FACTOR = 0.5

SATISFIED = "criterion-satisfied"
NOT_SATISFIED = "not-satisfied"
BORDERLINE = "borderline"
BALLS_NOT_FINITE = "hypothesis violated: balls not finite"

MODES = ("combinatorial", "sigma-path", "sigma1-path", "path", "capped", "explicit-table")


class PseudoMetric:
    """A pseudo metric on the vertices of a graph, evaluated on demand.

    Use the constructors :func:`combinatorial_metric`, :func:`sigma_path_metric`,
    :func:`sigma1_adapted_metric`, :func:`path_metric`, :func:`cap_metric` and
    :func:`explicit_metric` rather than calling this directly.

    Distances between different components are ``inf`` in arrays and
    :data:`UNREACHABLE` from :meth:`distance`.
    """

    def __init__(self, graph: WeightedGraph, mode: str, *, lengths=None, scale=1.0,
                 base=None, cap=None, table=None):
        if mode not in MODES:
            raise PreconditionError(f"unknown metric mode {mode!r}")
        self.graph = graph
        self.mode = mode
        self.scale = float(scale)
        self.base = base
        self.cap = cap
        self._lengths = lengths
        self._table = table
        self._cache = {}
        self._edge_values = None
        self._lock = threading.Lock()

    @property
    def label(self) -> str:
        if self.mode == "capped":
            return f"capped({fmt(self.cap)}) of {self.base.label}"
        if self.mode == "combinatorial" and self.scale != 1.0:
            return f"combinatorial*{fmt(self.scale)}"
        return self.mode

    @property
    def edge_lengths(self):
        """Per-CSR-entry edge lengths for path metrics, ``None`` otherwise."""
        return self._lengths

    def _compute_from(self, i: int) -> np.ndarray:
        G = self.graph
        if self.mode == "combinatorial":
            hops = G.hop_distances(i)
            out = np.where(hops >= 0, hops * self.scale, np.inf)
        elif self.mode in ("sigma-path", "sigma1-path", "path"):
            indptr, indices, _ = G.csr
            out = kernels.dijkstra(indptr, indices, self._lengths, i)
        elif self.mode == "capped":
            out = np.minimum(self.base.distances_from(i), self.cap)
        else:
            out = np.array(self._table[i], dtype=np.float64)
        out.setflags(write=False)
        return out

    def distances_from(self, x) -> np.ndarray:
        """``rho(x, .)`` over all vertices in canonical order (``x`` id or index)."""
        i = x if isinstance(x, (int, np.integer)) else self.graph.index(x)
        with self._lock:
            hit = self._cache.get(int(i))
        if hit is not None:
            return hit
        out = self._compute_from(int(i))
        with self._lock:
            if len(self._cache) >= 256:
                self._cache.pop(next(iter(self._cache)))
            self._cache[int(i)] = out
        return out

    def distance(self, x, y):
        d = float(self.distances_from(x)[self.graph.index(y)])
        return UNREACHABLE if math.isinf(d) else d

    def edge_values(self) -> np.ndarray:
        """``rho(x, y)`` for every CSR entry ``x ~ y`` (read-only, cached).

        For path metrics ``rho(x, y)`` can be shorter than the edge length, so a
        Dijkstra search from each vertex is run, cut off at its longest
        incident edge.
        """
        with self._lock:
            if self._edge_values is not None:
                return self._edge_values
        G = self.graph
        indptr, indices, _ = G.csr
        if self.mode == "combinatorial":
            vals = np.full(len(indices), self.scale)
        elif self.mode in ("sigma-path", "sigma1-path", "path"):
            lengths = self._lengths

            def one(i):
                lo, hi = indptr[i], indptr[i + 1]
                if lo == hi:
                    return np.empty(0)
                cutoff = float(lengths[lo:hi].max())
                d = kernels.dijkstra(indptr, indices, lengths, i, cutoff)
                return d[indices[lo:hi]]

            parts = parallel_map(one, range(G.n))
            vals = np.concatenate(parts) if parts else np.empty(0)
        elif self.mode == "capped":
            vals = np.minimum(self.base.edge_values(), self.cap)
        else:
            src = np.repeat(np.arange(G.n), np.diff(indptr))
            vals = np.asarray(self._table, dtype=np.float64)[src, indices]
        vals = np.asarray(vals, dtype=np.float64)
        vals.setflags(write=False)
        with self._lock:
            self._edge_values = vals
        return vals

    def __repr__(self):
        return f"PseudoMetric({self.label!r}, n={self.graph.n})"


# -- constructors --------------------------------------------------------------

def combinatorial_metric(G: WeightedGraph, scale: float = 1.0) -> PseudoMetric:
    """Hop distance, optionally multiplied by ``scale > 0``."""
    if not scale > 0:
        raise PreconditionError("scale must be positive")
    return PseudoMetric(G, "combinatorial", scale=scale)


def path_metric(G: WeightedGraph, lengths, mode: str = "path") -> PseudoMetric:
    """Path metric for per-CSR-entry edge lengths (symmetric, nonnegative)."""
    lengths = np.asarray(lengths, dtype=np.float64)
    indptr, indices, _ = G.csr
    if lengths.shape != indices.shape:
        raise PreconditionError("need one edge length per adjacency entry")
    if np.any(~np.isfinite(lengths)) or np.any(lengths < 0):
        raise PreconditionError("edge lengths must be finite and nonnegative")
    lengths = lengths.copy()
    lengths.setflags(write=False)
    return PseudoMetric(G, mode, lengths=lengths)


def _sigma_lengths(G: WeightedGraph) -> np.ndarray:
    indptr, indices, _ = G.csr
    deg = G.degree_array
    src = np.repeat(np.arange(G.n), np.diff(indptr))
    return 1.0 / np.sqrt(np.maximum(deg[src], deg[indices]))


def sigma_path_metric(G: WeightedGraph) -> PseudoMetric:
    """Path metric with ``sigma(x, y) = max(Deg(x), Deg(y))^(-1/2)``."""
    return path_metric(G, _sigma_lengths(G), "sigma-path")


def sigma1_adapted_metric(G: WeightedGraph) -> PseudoMetric:
    """Path metric with ``sigma_1 = min(sigma, 1)``."""
    return path_metric(G, np.minimum(_sigma_lengths(G), 1.0), "sigma1-path")


def cap_metric(rho: PseudoMetric, C: float) -> PseudoMetric:
    """``min(rho, C)``; ``C = inf`` returns ``rho`` itself."""
    if not C > 0:
        raise PreconditionError("cap must be positive")
    if math.isinf(C):
        return rho
    return PseudoMetric(rho.graph, "capped", base=rho, cap=float(C))


def explicit_metric(G: WeightedGraph, table) -> PseudoMetric:
    """Pseudo metric from a dense symmetric ``n x n`` table (``inf`` allowed)."""
    T = np.array(table, dtype=np.float64)
    if T.shape != (G.n, G.n):
        raise PreconditionError(f"table must be {G.n}x{G.n}")
    if np.any(np.isnan(T)) or np.any(T < 0):
        raise PreconditionError("distances must be nonnegative")
    if np.any(np.diag(T) != 0):
        raise PreconditionError("distance table must have a zero diagonal")
    finite = np.isfinite(T)
    if not np.array_equal(finite, finite.T):
        raise PreconditionError("distance table must be symmetric")
    gap = np.abs(np.where(finite, T - T.T, 0.0))
    if np.any(gap > SYMMETRY_RTOL * np.where(finite, np.abs(T), 0.0)):
        raise PreconditionError("distance table must be symmetric")
    # path sums computed from either end may differ in the last bits
    T = np.where(finite, np.minimum(T, T.T), T)
    T.setflags(write=False)
    return PseudoMetric(G, "explicit-table", table=T)


def triangle_violations(rho: PseudoMetric, triples, tol: float = 1e-12) -> list:
    """Sampled ``(x, y, z)`` index triples with ``rho(x,z) > rho(x,y) + rho(y,z)``."""
    bad = []
    for x, y, z in triples:
        dx, dy = rho.distances_from(int(x)), rho.distances_from(int(y))
        if dx[z] > dx[y] + dy[z] + tol:
            bad.append((int(x), int(y), int(z)))
    return bad


# -- intrinsic check -----------------------------------------------------------

@dataclass
class IntrinsicReport:
    metric: str
    slack: np.ndarray
    adapted_slack: np.ndarray
    tol: float = INTRINSIC_TOL

    @property
    def min_slack(self) -> float:
        return float(self.slack.min()) if len(self.slack) else 0.0

    @property
    def argmin(self) -> int:
        return int(np.argmin(self.slack)) if len(self.slack) else -1

    @property
    def intrinsic(self) -> bool:
        return self.min_slack >= -self.tol

    @property
    def adapted(self) -> bool:
        return (float(self.adapted_slack.min()) if len(self.adapted_slack) else 0.0) >= -self.tol

    def verdict_line(self) -> str:
        return (f"intrinsic: {'yes' if self.intrinsic else 'no'} "
                f"(min slack {fmt(self.min_slack)}, tolerance {fmt(self.tol)}); "
                f"adapted: {'yes' if self.adapted else 'no'}")


def verify_intrinsic(G: WeightedGraph, rho: PseudoMetric) -> IntrinsicReport:
    """Slack ``m(x) - sum_y b(x,y) rho(x,y)^2`` at every vertex.

    The adapted slack uses ``min(rho, 1)`` in place of ``rho``.
    """
    if rho.graph is not G and rho.graph != G:
        raise PreconditionError("metric belongs to a different graph")
    indptr, _, w = G.csr
    vals = rho.edge_values()
    capped = np.minimum(vals, 1.0)
    m = G.measure_array
    slack = np.empty(G.n)
    adapted = np.empty(G.n)
    for i in range(G.n):
        lo, hi = indptr[i], indptr[i + 1]
        slack[i] = m[i] - math.fsum((w[lo:hi] * vals[lo:hi] ** 2).tolist())
        adapted[i] = m[i] - math.fsum((w[lo:hi] * capped[lo:hi] ** 2).tolist())
    return IntrinsicReport(rho.label, slack, adapted)


# -- jump size -------------------------------------------------------------------

def jump_size(G: WeightedGraph, rho: PseudoMetric, r: float, x0) -> float:
    """``j_r = sup{rho(x,y) : x ~ y, x and y outside the closed ball B_r(x0)}``.

    Returns 0 when no such edge exists.
    """
    return float(jump_sizes(G, rho, [r], x0)[0])


def jump_sizes(G: WeightedGraph, rho: PseudoMetric, radii, x0) -> np.ndarray:
    d0 = rho.distances_from(x0)
    indptr, indices, _ = G.csr
    src = np.repeat(np.arange(G.n), np.diff(indptr))
    vals = rho.edge_values()
    # an edge leaves every ball that contains neither endpoint
    edge_in = np.minimum(d0[src], d0[indices])
    order = np.argsort(edge_in, kind="stable")
    sorted_in = edge_in[order]
    # suffix maxima: largest value among edges with both ends beyond r
    suffix = np.maximum.accumulate(vals[order][::-1])[::-1]
    out = np.zeros(len(radii))
    for k, r in enumerate(radii):
        pos = np.searchsorted(sorted_in, r, side="right")
        out[k] = suffix[pos] if pos < len(suffix) else 0.0
    return out


@dataclass
class GloballyLocalReport:
    radii: np.ndarray
    jumps: np.ndarray
    statistic: np.ndarray
    A: float
    tail_max: float
    verdict: str

    def verdict_line(self) -> str:
        return (f"globally local: {self.verdict} (heuristic, finite-sample: limsup of "
                f"j_r f(A r)/r estimated by the max over the last half of the grid, "
                f"A = {fmt(self.A)}; value {fmt(self.tail_max)})")


def globally_local_check(G: WeightedGraph, rho: PseudoMetric, x0, f, A: float,
                         radii) -> GloballyLocalReport:
    """Finite-sample estimate of ``limsup_r j_r f(A r) / r``.

    ``f`` is a callable growth function, required nondecreasing on the sampled
    points ``A r``.
    """
    if not A > 1:
        raise PreconditionError("A must exceed 1")
    radii = np.asarray(radii, dtype=np.float64)
    if len(radii) < 2 or np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
        raise PreconditionError("radii must be positive and strictly increasing")
    fvals = np.array([float(f(A * r)) for r in radii])
    if np.any(np.diff(fvals) < 0):
        raise PreconditionError("f is not monotone on the sampled radii")
    jumps = jump_sizes(G, rho, radii, x0)
    stat = jumps * fvals / radii
    tail = stat[len(stat) // 2:]
    tail_max = float(tail.max())
    verdict = "globally-local-consistent" if np.isfinite(tail_max) else "not globally local"
    return GloballyLocalReport(radii, jumps, stat, float(A), tail_max, verdict)


# -- truncation ----------------------------------------------------------------

def truncate_edges(G: WeightedGraph, rho: PseudoMetric, s: float) -> WeightedGraph:
    """``G_s``: keep only the edges with ``rho(x, y) <= s``.

    ``rho`` stays intrinsic on ``G_s`` and the jump size of ``G_s`` is at most
    ``s``. The result may be disconnected.
    """
    if not s > 0:
        raise PreconditionError("s must be positive")
    indptr, indices, _ = G.csr
    src = np.repeat(np.arange(G.n), np.diff(indptr))
    vals = rho.edge_values()
    upper = src < indices
    return G.with_edge_weights(vals[upper] <= s)


def sc_transfer_note(truncated_verdict: str) -> str:
    """What a stochastic-completeness verdict on ``G_s`` says about ``G``."""
    if truncated_verdict in ("complete-consistent", "SC", "diverges"):
        return "G_s looks stochastically complete: SC transfers to G"
    return "no transfer: SC of G_s was not established"


# -- volume growth ---------------------------------------------------------------

@dataclass
class VolumeTable:
    """Ball volumes ``V(r) = m(B_r(x0))`` over a radius grid.

    Volumes are stored as logarithms so that exponential growth is
    representable; :attr:`volume` exponentiates.
    """

    center: str
    metric: str
    radii: np.ndarray
    log_volume: np.ndarray
    ball_sizes: np.ndarray = None
    saturated: np.ndarray = None
    finite_ball_violation: bool = False
    standard_weights: bool = False
    notes: list = field(default_factory=list)

    def __post_init__(self):
        self.radii = np.asarray(self.radii, dtype=np.float64)
        self.log_volume = np.asarray(self.log_volume, dtype=np.float64)
        if self.radii.shape != self.log_volume.shape:
            raise PreconditionError("radii and volumes must have equal length")
        if self.ball_sizes is None:
            self.ball_sizes = np.full(len(self.radii), -1, dtype=np.int64)
        if self.saturated is None:
            self.saturated = np.zeros(len(self.radii), dtype=bool)

    @classmethod
    def synthetic(cls, radii, volume=None, log_volume=None, metric="synthetic",
                  standard_weights=False):
        """Table from given values, for testing criteria on closed-form growth."""
        if (volume is None) == (log_volume is None):
            raise PreconditionError("give exactly one of volume and log_volume")
        if log_volume is None:
            volume = np.asarray(volume, dtype=np.float64)
            if np.any(volume <= 0):
                raise PreconditionError("volumes must be positive")
            log_volume = np.log(volume)
        return cls("x0", metric, radii, log_volume, standard_weights=standard_weights)

    @property
    def volume(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_volume)

    def to_csv(self) -> str:
        rows = ["radius,ball_size_vertices,volume_measure,saturated_flag"]
        for r, n, v, s in zip(self.radii.tolist(), self.ball_sizes.tolist(),
                              self.volume.tolist(), self.saturated.tolist()):
            rows.append(f"{fmt(r)},{'' if n < 0 else n},{fmt(v)},{int(s)}")
        return "\n".join(rows) + "\n"


def _shrinking_edges(G, rho, d_hops):
    """Mean metric edge length on the outermost hop sphere against the innermost."""
    indptr, indices, _ = G.csr
    src = np.repeat(np.arange(G.n), np.diff(indptr))
    vals = rho.edge_values()
    reach = d_hops >= 0
    if not np.any(reach) or len(vals) == 0:
        return False
    R = int(d_hops[reach].max())
    if R < 2:
        return False
    inner = vals[(d_hops[src] == 0)]
    outer = vals[(d_hops[src] == R) & (d_hops[indices] >= R - 1)]
    if len(inner) == 0 or len(outer) == 0:
        return False
    return bool(outer.mean() < SHRINK_FACTOR * inner.mean())


def volume_growth(G: WeightedGraph, x0, rho: PseudoMetric, radii) -> VolumeTable:
    """``V(r) = sum of m(x)`` over ``rho(x, x0) <= r`` for each radius.

    ``saturated`` marks radii whose ball already holds the whole realized
    component of ``x0``. On truncated realizations of infinite families
    (graphs with a frontier) saturation at a radius below the last grid point
    while edge lengths shrink outward is flagged as a finite-ball violation.
    """
    radii = np.asarray(radii, dtype=np.float64)
    if len(radii) == 0 or np.any(np.diff(radii) <= 0) or radii[0] < 0:
        raise PreconditionError("radii must be nonnegative and strictly increasing")
    i0 = G.index(x0)
    d = rho.distances_from(i0)
    reach = np.isfinite(d)
    order = np.argsort(d[reach], kind="stable")
    dsorted = d[reach][order]
    msorted = G.measure_array[reach][order]
    cum = np.cumsum(msorted)
    counts = np.searchsorted(dsorted, radii, side="right")
    vol = np.where(counts > 0, cum[np.maximum(counts - 1, 0)], 0.0)
    # x0 is always in its own ball
    vol = np.maximum(vol, G.measure_array[i0])
    counts = np.maximum(counts, 1)
    total = int(reach.sum())
    saturated = counts >= total
    m = G.measure_array
    standard = bool(np.all(m == 1.0) and np.all(G.csr[2] == 1.0))
    violation = False
    notes = []
    if G.frontier and np.any(saturated[:-1]):
        if _shrinking_edges(G, rho, G.hop_distances(i0)):
            violation = True
            r_sat = float(radii[int(np.argmax(saturated))])
            notes.append(f"ball of radius {fmt(r_sat)} holds the whole realization while "
                         f"edge lengths shrink outward (heuristic: outer mean < "
                         f"{fmt(SHRINK_FACTOR)} x inner mean)")
    return VolumeTable(center=x0, metric=rho.label, radii=radii, log_volume=np.log(vol),
                       ball_sizes=counts.astype(np.int64), saturated=saturated,
                       finite_ball_violation=violation, standard_weights=standard,
                       notes=notes)


def volume_from_profile(profile, radii=None) -> VolumeTable:
    """Combinatorial-metric volumes of a radial profile, without realizing it."""
    logV = profile.log_volume
    R = profile.R
    radii = np.arange(R + 1) if radii is None else np.asarray(radii)
    if np.any(radii < 0) or np.any(radii > R) or np.any(radii != np.floor(radii)):
        raise PreconditionError(f"radii must be integers in [0, {R}]")
    radii = radii.astype(np.int64)
    standard = profile.family in ("tree", "antitree")
    sizes = None
    if standard:
        with np.errstate(over="ignore"):
            V = np.exp(logV[radii])
        sizes = np.where(V < 2 ** 62, np.round(V), -1).astype(np.int64)
    return VolumeTable(center="0", metric="combinatorial", radii=radii.astype(np.float64),
                       log_volume=logV[radii], ball_sizes=sizes,
                       standard_weights=standard)


# -- volume criteria ---------------------------------------------------------------

def _tail(n):
    return slice(n // 2, n)


def _fit(x, y):
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept)


@dataclass
class GrigoryanReport:
    radii: np.ndarray
    partial_integral: np.ndarray
    beta: float
    verdict: str
    adapted_statistic: float
    band: float = BORDERLINE_BAND

    def verdict_line(self) -> str:
        return (f"grigoryan: {self.verdict} (heuristic: fit log log# V ~ beta log r on the "
                f"last half of the grid; satisfied if beta <= {fmt(2 - self.band)}, not "
                f"satisfied if beta >= {fmt(2 + self.band)}); beta {fmt(self.beta)}, "
                f"partial integral {fmt(self.partial_integral[-1])}")


def _check_monotone(V: VolumeTable):
    if np.any(np.diff(V.log_volume) < 0):
        raise PreconditionError("volume table is not nondecreasing")


def adapted_volume_statistic(V: VolumeTable) -> float:
    """``min log V(r) / (r log r)`` over the tail (reported only, never classified)."""
    r = V.radii[_tail(len(V.radii))]
    lv = V.log_volume[_tail(len(V.radii))]
    keep = r > 1
    if not np.any(keep):
        return float("nan")
    return float(np.min(lv[keep] / (r[keep] * np.log(r[keep]))))


def grigoryan_test(V: VolumeTable) -> GrigoryanReport:
    """Heuristic check of ``int^inf r / log#(V(r)) dr = inf``, ``log# = max(log, 1)``."""
    _check_monotone(V)
    r = V.radii
    if len(r) < 4:
        raise PreconditionError("too few radii for a tail fit")
    logsharp = np.maximum(V.log_volume, 1.0)
    integrand = r / logsharp
    steps = 0.5 * (integrand[1:] + integrand[:-1]) * np.diff(r)
    partial = np.concatenate([[0.0], np.cumsum(steps)])
    tail = _tail(len(r))
    rt, lt = r[tail], logsharp[tail]
    keep = rt > 0
    if keep.sum() < 2:
        raise PreconditionError("too few positive radii in the tail")
    beta, _ = _fit(np.log(rt[keep]), np.log(lt[keep]))
    if V.finite_ball_violation:
        verdict = BALLS_NOT_FINITE
    elif beta <= GRIGORYAN_EXPONENT - BORDERLINE_BAND:
        verdict = SATISFIED
    elif beta >= GRIGORYAN_EXPONENT + BORDERLINE_BAND:
        verdict = NOT_SATISFIED
    else:
        verdict = BORDERLINE
    return GrigoryanReport(r.copy(), partial, beta, verdict, adapted_volume_statistic(V))


@dataclass
class CubicVolumeReport:
    alpha: float
    C_hat: float
    bound_holds: bool
    verdict: str
    band: float = BORDERLINE_BAND
    margin: float = CUBIC_MARGIN

    def verdict_line(self) -> str:
        return (f"cubic volume: {self.verdict} (heuristic: fit V ~ C r^alpha on the last "
                f"half of the grid; satisfied iff alpha <= {fmt(3 + self.band)} and "
                f"V(r) <= C_hat r^3 on the tail with C_hat = {fmt(self.margin)} x V/r^3 at "
                f"the tail start); alpha {fmt(self.alpha)}, C_hat {fmt(self.C_hat)}")


def combinatorial_volume_test(V: VolumeTable) -> CubicVolumeReport:
    """Heuristic check of ``V(r) <= C r^3`` for standard weights and counting measure."""
    if V.metric != "combinatorial":
        raise PreconditionError(f"needs the combinatorial metric, got {V.metric!r}")
    if not V.standard_weights:
        raise PreconditionError("needs standard weights (b = 1) and counting measure (m = 1)")
    _check_monotone(V)
    tail = _tail(len(V.radii))
    r, lv = V.radii[tail], V.log_volume[tail]
    keep = r > 0
    if keep.sum() < 2:
        raise PreconditionError("too few positive radii in the tail")
    r, lv = r[keep], lv[keep]
    alpha, _ = _fit(np.log(r), lv)
    log_C = math.log(CUBIC_MARGIN) + lv[0] - 3.0 * math.log(r[0])
    bound = bool(np.all(lv <= log_C + 3.0 * np.log(r) + 1e-12))
    ok = alpha <= CUBIC_EXPONENT + BORDERLINE_BAND and bound
    return CubicVolumeReport(alpha, float(np.exp(log_C)), bound,
                             SATISFIED if ok else NOT_SATISFIED)


__all__ = [
    "PseudoMetric", "combinatorial_metric", "path_metric", "sigma_path_metric",
    "sigma1_adapted_metric", "cap_metric", "explicit_metric", "triangle_violations",
    "IntrinsicReport", "verify_intrinsic", "jump_size", "jump_sizes",
    "GloballyLocalReport", "globally_local_check", "truncate_edges", "sc_transfer_note",
    "VolumeTable", "volume_growth", "volume_from_profile", "GrigoryanReport",
    "grigoryan_test", "adapted_volume_statistic", "CubicVolumeReport",
    "combinatorial_volume_test",
]
