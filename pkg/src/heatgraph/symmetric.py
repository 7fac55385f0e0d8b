"""Weakly spherically symmetric graphs reduced to radial profiles.

A profile stores, for spheres ``S_0 .. S_R`` around a root, the sphere
measures ``mS[r] = m(S_r)`` and boundary weights ``dB[r]``, the total edge
weight between ``S_r`` and ``S_{r+1}``. ``dB[R]`` is the weight leaving the
truncated ball (zero for a finite graph). Log-space copies are kept because
tree profiles overflow doubles within a few dozen spheres.

Model families: spherically symmetric trees (``Deg_+(r)`` children per
vertex), anti-trees (complete bipartite joins between spheres of sizes
``a_r``), and birth-death chains on ``0, 1, 2, ...``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from ._util import fmt, fmt_exact, parse_positive
from .errors import GraphFormatError, PreconditionError, SizeCapError, SymmetryError
from .expr import Expression, is_integral
from .graph import WeightedGraph, inner_outer_degrees, is_connected, spheres
from .heat import MAX_DENSE, DirichletRestriction, root_defect

MAX_VERTICES = 100_000
MAX_EDGES = 2_000_000
WSS_RTOL = 1e-12

DIVERGES = "diverges"
CONVERGES = "converges"
INCONCLUSIVE = "inconclusive"

# series heuristic
TERM_FLOOR = 1e-12
DOUBLING_GROWTH = 0.01
CONVERGENT_EXPONENT = -1.05
DIVERGENT_EXPONENT = -1.0

# lambda-harmonic heuristic
BOUNDED_RATIO = 1e-6
UNBOUNDED_VALUE = 1e6

Param = Union[Callable, Sequence[float], float]


@dataclass(frozen=True)
class GeneratorSpec:
    """Model family with its parameter sequences and truncation radius.

    ``params`` keys: ``degplus`` (tree), ``a`` (antitree), ``b`` and ``m``
    (birthdeath). Values are expression strings, callables of ``r``,
    sequences, or constants.
    """

    family: str
    params: dict
    R: int

    def __post_init__(self):
        need = {"tree": {"degplus"}, "antitree": {"a"}, "birthdeath": {"b"}}
        if self.family not in need:
            raise PreconditionError(f"unknown family {self.family!r}")
        missing = need[self.family] - set(self.params)
        if missing:
            raise PreconditionError(f"{self.family} needs parameter {sorted(missing)[0]!r}")
        if self.R < 0:
            raise PreconditionError("truncation radius must be nonnegative")
        params = {k: Expression(v) if isinstance(v, str) else v for k, v in self.params.items()}
        object.__setattr__(self, "params", params)

    def sequence(self, name, length) -> np.ndarray:
        return _evaluate(self.params[name], length, name)

    def log_sequence(self, name, length) -> np.ndarray:
        """Logarithms of the parameter values; usable past double overflow."""
        param = self.params[name]
        if hasattr(param, "log"):
            vals = np.asarray(param.log(np.arange(length, dtype=np.float64)), dtype=np.float64)
            if vals.ndim == 0:
                vals = np.full(length, float(vals))
            if np.any(np.isnan(vals)) or np.any(np.isinf(vals)):
                raise PreconditionError(f"parameter {name!r} must be positive and finite")
            return vals
        return np.log(_evaluate(param, length, name))


def _evaluate(param, length, name) -> np.ndarray:
    r = np.arange(length, dtype=np.float64)
    if callable(param):
        vals = np.asarray(param(r), dtype=np.float64)
        if vals.ndim == 0:
            vals = np.full(length, float(vals))
    elif np.isscalar(param):
        vals = np.full(length, float(param))
    else:
        vals = np.asarray(param, dtype=np.float64)
        if len(vals) < length:
            raise PreconditionError(f"parameter {name!r} needs {length} values, got {len(vals)}")
        vals = vals[:length]
    if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
        raise PreconditionError(f"parameter {name!r} must be positive and finite")
    return vals


def _finite_param(spec, name, length):
    try:
        spec.sequence(name, length)
    except PreconditionError:
        return False
    return True


def tree_spec(degplus, R):
    return GeneratorSpec("tree", {"degplus": degplus}, R)


def antitree_spec(a, R):
    return GeneratorSpec("antitree", {"a": a}, R)


def birthdeath_spec(b, R, m=1.0):
    return GeneratorSpec("birthdeath", {"b": b, "m": m}, R)


class RadialProfile:
    """Radial data ``mS[0..R]``, ``dB[0..R]`` of a weakly spherically symmetric graph."""

    def __init__(self, mS, dB, log_mS=None, log_dB=None, family=None):
        mS = np.asarray(mS, dtype=np.float64)
        dB = np.asarray(dB, dtype=np.float64)
        if mS.ndim != 1 or mS.shape != dB.shape or len(mS) == 0:
            raise PreconditionError("mS and dB must be equal-length 1-d sequences")
        with np.errstate(divide="ignore"):
            log_mS = np.log(mS) if log_mS is None else np.asarray(log_mS, dtype=np.float64)
            log_dB = np.log(dB) if log_dB is None else np.asarray(log_dB, dtype=np.float64)
        if np.any(~np.isfinite(log_mS)):
            raise PreconditionError("sphere measures must be positive")
        if np.any(~np.isfinite(log_dB[:-1])):
            raise PreconditionError("boundary weights dB[r] must be positive for r < R")
        if dB[-1] < 0:
            raise PreconditionError("outgoing boundary weight must be nonnegative")
        for arr in (mS, dB, log_mS, log_dB):
            arr.setflags(write=False)
        self.mS = mS
        self.dB = dB
        self.log_mS = log_mS
        self.log_dB = log_dB
        self.family = family

    @property
    def R(self) -> int:
        return len(self.mS) - 1

    def __len__(self):
        return len(self.mS)

    @property
    def deg_plus(self) -> np.ndarray:
        return np.exp(self.log_dB - self.log_mS)

    @property
    def deg_minus(self) -> np.ndarray:
        out = np.zeros(len(self.mS))
        out[1:] = np.exp(self.log_dB[:-1] - self.log_mS[1:])
        return out

    @property
    def log_volume(self) -> np.ndarray:
        """``log V(r)`` with ``V(r) = sum_{k<=r} mS[k]``."""
        return np.logaddexp.accumulate(self.log_mS)

    @property
    def volume(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.cumsum(self.mS)

    def truncated(self, R: int) -> "RadialProfile":
        if R > self.R:
            raise PreconditionError(f"profile has radius {self.R}, requested {R}")
        return RadialProfile(self.mS[:R + 1], self.dB[:R + 1], self.log_mS[:R + 1],
                             self.log_dB[:R + 1], self.family)

    def same_as(self, other: "RadialProfile", include_boundary=True) -> bool:
        """Exact equality of the stored sequences."""
        k = None if include_boundary else -1
        return (len(self) == len(other) and np.array_equal(self.mS, other.mS)
                and np.array_equal(self.dB[:k], other.dB[:k]))

    def __repr__(self):
        return f"RadialProfile(R={self.R}, family={self.family!r})"


# -- generators ---------------------------------------------------------------

def build_profile(spec: GeneratorSpec) -> RadialProfile:
    R = spec.R
    if spec.family == "tree":
        log_dp = spec.log_sequence("degplus", R + 1)
        with np.errstate(over="ignore"):
            finite = _finite_param(spec, "degplus", R + 1)
            dp = spec.sequence("degplus", R + 1) if finite else np.exp(log_dp)
        log_mS = np.concatenate([[0.0], np.cumsum(log_dp[:-1])])
        with np.errstate(over="ignore"):
            mS = np.concatenate([[1.0], np.cumprod(dp[:-1])])
            dB = mS * dp
        return RadialProfile(mS, dB, log_mS, log_mS + log_dp, family="tree")
    if spec.family == "antitree":
        log_a = spec.log_sequence("a", R + 2)
        if log_a[0] != 0:
            raise PreconditionError("anti-trees require a_0 = 1")
        with np.errstate(over="ignore"):
            a = np.exp(log_a) if not _finite_param(spec, "a", R + 2) else spec.sequence("a", R + 2)
            dB = a[:-1] * a[1:]
        return RadialProfile(a[:-1], dB, log_a[:-1], log_a[:-1] + log_a[1:],
                             family="antitree")
    b = spec.sequence("b", R + 1)
    m = spec.sequence("m", R + 1) if "m" in spec.params else np.ones(R + 1)
    return RadialProfile(m, b, family="birthdeath")


def realize_graph(spec: GeneratorSpec, R: int = None) -> WeightedGraph:
    """Finite realization with standard weights (trees, anti-trees) or the
    weighted path (birth-death). Vertex ids sort in radial order; the last
    sphere is recorded as the graph's frontier."""
    R = spec.R if R is None else R
    wr = len(str(R))
    if spec.family == "birthdeath":
        b = spec.sequence("b", R + 1)
        m = spec.sequence("m", R + 1) if "m" in spec.params else np.ones(R + 1)
        if R + 1 > MAX_VERTICES:
            raise SizeCapError(f"{R + 1} vertices exceed the cap {MAX_VERTICES}")
        ids = [f"{r:0{wr}d}" for r in range(R + 1)]
        rows = np.arange(R, dtype=np.int64)
        return WeightedGraph.from_arrays(ids, m, rows, rows + 1, b[:R], frontier=[ids[-1]])

    if spec.family == "tree":
        dp = spec.sequence("degplus", R + 1)
        if not is_integral(dp[:R]):
            raise PreconditionError("tree realization needs integer branching numbers")
        sizes = [1]
        for r in range(R):
            sizes.append(sizes[-1] * int(dp[r]))
            if sum(sizes) > MAX_VERTICES:
                raise SizeCapError(f"tree exceeds the vertex cap {MAX_VERTICES}")
    else:
        a = spec.sequence("a", R + 1)
        if a[0] != 1:
            raise PreconditionError("anti-trees require a_0 = 1")
        if not is_integral(a):
            raise PreconditionError("anti-tree realization needs integer sphere sizes")
        sizes = [int(x) for x in a]
        if sum(sizes) > MAX_VERTICES:
            raise SizeCapError(f"anti-tree exceeds the vertex cap {MAX_VERTICES}")
        if sum(p * q for p, q in zip(sizes, sizes[1:])) > MAX_EDGES:
            raise SizeCapError(f"anti-tree exceeds the edge cap {MAX_EDGES}")

    wi = len(str(max(sizes)))
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
    ids = [f"{r:0{wr}d}.{i:0{wi}d}" for r, s in enumerate(sizes) for i in range(s)]
    rows, cols = [], []
    for r in range(R):
        lo, nxt = offsets[r], offsets[r + 1]
        if spec.family == "tree":
            k = int(dp[r])
            parent = np.repeat(np.arange(sizes[r]), k)
            rows.append(lo + parent)
            cols.append(nxt + np.arange(sizes[r + 1]))
        else:
            p, q = np.meshgrid(np.arange(sizes[r]), np.arange(sizes[r + 1]), indexing="ij")
            rows.append(lo + p.ravel())
            cols.append(nxt + q.ravel())
    rows = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    cols = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    frontier = ids[offsets[R]:offsets[R + 1]]
    return WeightedGraph.from_arrays(ids, np.ones(len(ids)), rows, cols,
                                     np.ones(len(rows)), frontier=frontier)


def radial_reduction(G: WeightedGraph, x0) -> RadialProfile:
    """Extract the radial profile around ``x0``.

    Raises
    ------
    SymmetryError
        If ``Deg_+`` or ``Deg_-`` is not constant on some sphere; the witness
        is the pair (first vertex of that sphere, first disagreeing vertex).
    """
    G.index(x0)
    if not is_connected(G):
        raise PreconditionError("radial reduction needs a connected graph")
    inner, outer = inner_outer_degrees(G, x0)
    ids = G.vertices
    m = G.measure_array
    dist = G.hop_distances(G.index(x0))
    indptr, indices, w = G.csr
    src = np.repeat(np.arange(G.n), np.diff(indptr))
    out_edge = dist[indices] == dist[src] + 1
    shells = spheres(G, x0)
    mS, dB = [], []
    for r, shell in enumerate(shells):
        shell = np.sort(shell)
        ref = shell[0]
        for name, arr in (("Deg_+", outer), ("Deg_-", inner)):
            bad = np.flatnonzero(np.abs(arr[shell] - arr[ref]) > WSS_RTOL * max(abs(arr[ref]), 1e-300))
            if len(bad):
                v = shell[bad[0]]
                raise SymmetryError(
                    f"{name} differs on sphere {r}: {ids[ref]} has {arr[ref]!r}, "
                    f"{ids[v]} has {arr[v]!r}", (ids[ref], ids[v]))
        mS.append(math.fsum(m[shell].tolist()))
        sel = np.isin(src, shell) & out_edge
        dB.append(math.fsum(w[sel].tolist()))
    return RadialProfile(mS, dB)


# -- series criteria -------------------------------------------------------------

@dataclass
class SeriesReport:
    terms: np.ndarray
    partial_sums: np.ndarray
    classification: str
    exponent: float
    doubling_growth: float
    tail_estimate: float
    rule: str
    policy: dict = field(default_factory=lambda: {
        "term_floor": TERM_FLOOR,
        "doubling_growth": DOUBLING_GROWTH,
        "convergent_exponent": CONVERGENT_EXPONENT,
        "divergent_exponent": DIVERGENT_EXPONENT,
    })

    @property
    def sc_label(self) -> str:
        return {DIVERGES: "SC", CONVERGES: "SI"}.get(self.classification, "undecided")

    def verdict_line(self) -> str:
        p = self.policy
        return (f"series: {self.classification} ({self.sc_label}) by rule '{self.rule}' "
                f"(heuristic: converges if tail exponent < {fmt(p['convergent_exponent'])} "
                f"with monotone decay; diverges if exponent >= {fmt(p['divergent_exponent'])} "
                f"with terms > {fmt(p['term_floor'])} or partial sums grow >= "
                f"{fmt(100 * p['doubling_growth'])}% over the last doubling); "
                f"fitted exponent {fmt(self.exponent)}, tail estimate {fmt(self.tail_estimate)}")


def classify_series(log_terms) -> SeriesReport:
    """Heuristic convergence classification of a positive series from its terms.

    Terms are supplied as logarithms so that geometric decay does not
    underflow before the fit sees it.
    """
    log_terms = np.asarray(log_terms, dtype=np.float64)
    n = len(log_terms)
    terms = np.exp(log_terms)
    sums = np.cumsum(terms)
    if n < 8:
        return SeriesReport(terms, sums, INCONCLUSIVE, float("nan"), float("nan"),
                            float("nan"), "too few terms")
    half = n // 2
    r = np.arange(n, dtype=np.float64) + 1.0
    x = np.log(r[half:])
    y = log_terms[half:]
    exponent, intercept = np.polyfit(x, y, 1)
    growth = float(sums[-1] / sums[half - 1] - 1.0) if sums[half - 1] > 0 else float("inf")
    if exponent < -1.0:
        log_tail = intercept + (exponent + 1.0) * np.log(r[-1]) - np.log(-(exponent + 1.0))
        tail = float(np.exp(min(log_tail, 700.0)))
    else:
        tail = float("inf")
    steps = np.diff(y)
    monotone = np.mean(steps > 1e-12) < 0.05 if len(steps) else False

    if exponent < CONVERGENT_EXPONENT and monotone:
        cls, rule = CONVERGES, "tail exponent below convergent threshold"
    elif exponent >= DIVERGENT_EXPONENT and terms[half:].min() > TERM_FLOOR:
        cls, rule = DIVERGES, "terms not summably decaying"
    elif growth >= DOUBLING_GROWTH:
        cls, rule = DIVERGES, "partial sums still growing"
    else:
        cls, rule = INCONCLUSIVE, "no rule applies"
    return SeriesReport(terms, sums, cls, float(exponent), growth, tail, rule)


def _series_length(profile, R):
    R = profile.R if R is None else R
    if R > profile.R:
        raise PreconditionError(f"profile has radius {profile.R}, requested {R}")
    if profile.dB[R] == 0:
        R -= 1
    if R < 0:
        raise PreconditionError("profile has no boundary terms")
    return R


def sc_series(profile: RadialProfile, R: int = None) -> SeriesReport:
    """Terms ``V(r)/dB(r)`` for ``r <= R`` and their classification."""
    R = _series_length(profile, R)
    log_terms = profile.log_volume[:R + 1] - profile.log_dB[:R + 1]
    return classify_series(log_terms)


def tree_series(profile: RadialProfile, R: int = None) -> SeriesReport:
    """``sum 1/Deg_+(r)`` for spherically symmetric trees."""
    if profile.family != "tree":
        raise PreconditionError(f"tree series needs a tree profile, got {profile.family!r}")
    R = _series_length(profile, R)
    return classify_series(profile.log_mS[:R + 1] - profile.log_dB[:R + 1])


def antitree_series(spec: GeneratorSpec) -> SeriesReport:
    """``sum (sum_{k<=r} a_k) / (a_r a_{r+1})`` for anti-trees."""
    if spec.family != "antitree":
        raise PreconditionError(f"anti-tree series needs an anti-tree spec, got {spec.family!r}")
    log_a = spec.log_sequence("a", spec.R + 2)
    log_cum = np.logaddexp.accumulate(log_a[:-1])
    return classify_series(log_cum - log_a[:-1] - log_a[1:])


# -- radial lambda-harmonic functions -------------------------------------------

@dataclass
class LambdaHarmonic:
    lam: float
    log_v: np.ndarray
    verdict: str
    rule: str

    @property
    def v(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_v)

    def verdict_line(self) -> str:
        return (f"lambda-harmonic: {self.verdict} by rule '{self.rule}' (heuristic: bounded if "
                f"v(R)/v(R/2) < 1 + {fmt(BOUNDED_RATIO)}, unbounded if v(R) > "
                f"{fmt(UNBOUNDED_VALUE)} v(0), otherwise the series policy on log-increments)")


def radial_lambda_harmonic(profile: RadialProfile, lam: float, R: int = None) -> LambdaHarmonic:
    """Spherically symmetric solution of ``Lv = lam v`` with ``v(0) = 1``.

    Recursion: ``v(r+1) - v(r) = (-lam / dB(r)) sum_{k<=r} v(k) mS(k)``,
    carried out in log space.
    """
    if not lam < 0:
        raise PreconditionError("lambda must be negative")
    R = profile.R if R is None else R
    if R > profile.R + 1 or (R == profile.R + 1 and profile.dB[-1] == 0):
        raise PreconditionError(f"profile supports radius at most {profile.R}")
    log_v = np.zeros(R + 1)
    log_neg = math.log(-lam)
    log_w = -math.inf
    for r in range(R):
        log_w = np.logaddexp(log_w, log_v[r] + profile.log_mS[r])
        log_v[r + 1] = np.logaddexp(log_v[r], log_neg + log_w - profile.log_dB[r])
    if log_v[R] > math.log(UNBOUNDED_VALUE):
        verdict, rule = "unbounded-consistent", "blow-up threshold"
    elif R >= 2 and log_v[R] - log_v[R // 2] < math.log1p(BOUNDED_RATIO):
        verdict, rule = "bounded-consistent", "stabilization ratio"
    else:
        inc = np.diff(log_v)
        with np.errstate(divide="ignore"):
            rep = classify_series(np.log(inc))
        if rep.classification == CONVERGES:
            verdict, rule = "bounded-consistent", "log-increment series converges"
        elif rep.classification == DIVERGES:
            verdict, rule = "unbounded-consistent", "log-increment series diverges"
        else:
            verdict, rule = "inconclusive", "no rule applies"
    return LambdaHarmonic(float(lam), log_v, verdict, rule)


# -- radial heat loss -------------------------------------------------------------

def chain_graph(profile: RadialProfile, R: int = None) -> WeightedGraph:
    """Birth-death chain ``m(r) = mS[r]``, ``b(r, r+1) = dB[r]`` on ``0..R``, plus a
    ghost vertex ``R+1`` when ``dB[R] > 0`` so that the ball ``B_R`` has a
    Dirichlet boundary."""
    R = profile.R if R is None else R
    if R > profile.R:
        raise PreconditionError(f"profile has radius {profile.R}, requested {R}")
    mS = profile.mS[:R + 1]
    dB = profile.dB[:R + 1]
    if not (np.all(np.isfinite(mS)) and np.all(np.isfinite(dB))):
        raise SizeCapError("profile values overflow double precision at this radius")
    ghost = dB[R] > 0
    n = R + 2 if ghost else R + 1
    wr = len(str(n))
    ids = [f"{r:0{wr}d}" for r in range(n)]
    m = np.concatenate([mS, [1.0]]) if ghost else mS
    rows = np.arange(n - 1, dtype=np.int64)
    return WeightedGraph.from_arrays(ids, m, rows, rows + 1, dB[:n - 1])


def radial_heat_loss(profile: RadialProfile, t: float, R: int = None) -> float:
    """Defect ``1 - P_t 1(x0)`` at the root for the ball of radius ``R``,
    computed on the reduced birth-death chain."""
    R = profile.R if R is None else R
    if R + 1 > MAX_DENSE:
        raise SizeCapError(f"radius {R} exceeds the dense cap {MAX_DENSE}")
    if t < 0:
        raise PreconditionError("time must be nonnegative")
    G = chain_graph(profile, R)
    K = list(G.vertices[:R + 1])
    return root_defect(DirichletRestriction(G, K), G.vertices[0], t)


# -- profile files -----------------------------------------------------------------

def serialize_profile(profile: RadialProfile) -> str:
    lines = []
    if profile.family:
        lines.append(f"# family {profile.family}")
    for r, (a, b) in enumerate(zip(profile.mS.tolist(), profile.dB.tolist())):
        lines.append(f"r {r} {fmt_exact(a)} {fmt_exact(b)}")
    return "\n".join(lines) + "\n"


def load_profile(text: str) -> RadialProfile:
    mS, dB = [], []
    family = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "family":
                family = parts[1]
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "r":
            raise GraphFormatError("expected 'r <index> <mS> <dB>'", lineno)
        try:
            idx = int(parts[1])
        except ValueError:
            raise GraphFormatError(f"bad index {parts[1]!r}", lineno) from None
        if idx != len(mS):
            raise GraphFormatError(f"expected index {len(mS)}, got {idx}", lineno)
        mS.append(parse_positive(parts[2], "sphere measure", lineno))
        try:
            b = float(parts[3])
        except ValueError:
            raise GraphFormatError(f"bad boundary weight {parts[3]!r}", lineno) from None
        if not math.isfinite(b) or b < 0:
            raise GraphFormatError("boundary weight must be finite and nonnegative", lineno)
        dB.append(b)
    if not mS:
        raise GraphFormatError("empty profile")
    if any(b == 0 for b in dB[:-1]):
        raise GraphFormatError("boundary weights must be positive before the last sphere")
    return RadialProfile(mS, dB, family=family)
