"""Formal Laplacian, energy form and the Gamma calculus.

Sign convention: ``Lf(x) = (1/m(x)) sum_y b(x,y) (f(x) - f(y))`` so that the
Laplacian is a positive operator. Pointwise operations sum with ``math.fsum``
over neighbours in canonical order; the ``*_vector`` variants are vectorised
and used on hot paths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import GraphFormatError, PreconditionError
from .graph import WeightedGraph
from ._util import fmt_exact

POINTWISE_TOL = 1e-9


class VertexFunction:
    """A real function defined on every vertex of a graph."""

    __slots__ = ("graph", "values")

    def __init__(self, graph: WeightedGraph, values):
        arr = np.array(values, dtype=np.float64)
        if arr.shape != (graph.n,):
            raise PreconditionError(
                f"function has {arr.shape} values, graph has {graph.n} vertices")
        if not np.all(np.isfinite(arr)):
            raise PreconditionError("function values must be finite")
        arr.setflags(write=False)
        self.graph = graph
        self.values = arr

    @classmethod
    def from_mapping(cls, graph: WeightedGraph, mapping: Mapping) -> "VertexFunction":
        missing = [v for v in graph.vertices if v not in mapping]
        if missing:
            raise PreconditionError(f"function is not total: missing {missing[0]!r}")
        for v in mapping:
            graph.index(v)
        return cls(graph, [mapping[v] for v in graph.vertices])

    @classmethod
    def from_callable(cls, graph: WeightedGraph, fn: Callable) -> "VertexFunction":
        return cls(graph, [fn(v) for v in graph.vertices])

    @classmethod
    def constant(cls, graph: WeightedGraph, c: float = 1.0) -> "VertexFunction":
        return cls(graph, np.full(graph.n, float(c)))

    def __call__(self, x) -> float:
        return float(self.values[self.graph.index(x)])

    def __add__(self, other):
        return VertexFunction(self.graph, self.values + _vals(other))

    def __mul__(self, other):
        return VertexFunction(self.graph, self.values * _vals(other))

    __rmul__ = __mul__

    def __repr__(self):
        return f"VertexFunction(n={len(self.values)})"


def _vals(f):
    if isinstance(f, VertexFunction):
        return f.values
    return np.asarray(f, dtype=np.float64)


def load_function(G: WeightedGraph, text: str) -> VertexFunction:
    """Parse ``f <vertex-id> <value>`` lines; every vertex must appear once."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "f":
            raise GraphFormatError("expected 'f <vertex-id> <value>'", lineno)
        if parts[1] not in G:
            raise GraphFormatError(f"unknown vertex {parts[1]!r}", lineno)
        if parts[1] in values:
            raise GraphFormatError(f"duplicate value for {parts[1]!r}", lineno)
        try:
            values[parts[1]] = float(parts[2])
        except ValueError:
            raise GraphFormatError(f"bad value {parts[2]!r}", lineno) from None
    missing = [v for v in G.vertices if v not in values]
    if missing:
        raise GraphFormatError(f"function is not total: missing {missing[0]!r}")
    return VertexFunction(G, [values[v] for v in G.vertices])


def serialize_function(f: VertexFunction) -> str:
    return "".join(f"f {v} {fmt_exact(x)}\n"
                   for v, x in zip(f.graph.vertices, f.values.tolist()))


# -- pointwise operators ----------------------------------------------------

def apply_laplacian(G: WeightedGraph, f, x) -> float:
    i = G.index(x)
    fv = _vals(f)
    idx, w = G.neighbor_slice(i)
    return math.fsum((w * (fv[i] - fv[idx])).tolist()) / G.measure_array[i]


def laplacian_vector(G: WeightedGraph, f) -> np.ndarray:
    """``Lf`` at every vertex."""
    fv = _vals(f)
    indptr, indices, w = G.csr
    src = np.repeat(np.arange(G.n), np.diff(indptr))
    out = np.zeros(G.n)
    np.add.at(out, src, w * (fv[src] - fv[indices]))
    return out / G.measure_array


def energy(G: WeightedGraph, f) -> float:
    """``Q(f, f)``: sum over undirected edges of ``b (f(x) - f(y))^2``."""
    fv = _vals(f)
    i, j, b = G.edge_arrays()
    return math.fsum((b * (fv[i] - fv[j]) ** 2).tolist())


def gamma(G: WeightedGraph, f, g, x) -> float:
    """Carré du champ ``Gamma(f, g)(x)`` in expanded difference form."""
    i = G.index(x)
    fv, gv = _vals(f), _vals(g)
    idx, w = G.neighbor_slice(i)
    terms = w * (fv[i] - fv[idx]) * (gv[i] - gv[idx])
    return math.fsum(terms.tolist()) / (2.0 * G.measure_array[i])


def gamma_vector(G: WeightedGraph, f, g=None) -> np.ndarray:
    fv = _vals(f)
    gv = fv if g is None else _vals(g)
    indptr, indices, w = G.csr
    src = np.repeat(np.arange(G.n), np.diff(indptr))
    out = np.zeros(G.n)
    np.add.at(out, src, w * (fv[src] - fv[indices]) * (gv[src] - gv[indices]))
    return out / (2.0 * G.measure_array)


def gamma2(G: WeightedGraph, f, x) -> float:
    """``Gamma_2(f)(x) = -1/2 L Gamma(f)(x) + Gamma(f, Lf)(x)``.

    Only values of ``f`` on the 2-ball around ``x`` enter.
    """
    i = G.index(x)
    fv = _vals(f)
    idx, w = G.neighbor_slice(i)
    m = G.measure_array

    def lap_at(k):
        nb, wk = G.neighbor_slice(k)
        return math.fsum((wk * (fv[k] - fv[nb])).tolist()) / m[k]

    def gam_at(k):
        nb, wk = G.neighbor_slice(k)
        return math.fsum((wk * (fv[k] - fv[nb]) ** 2).tolist()) / (2.0 * m[k])

    gam_x = gam_at(i)
    lap_x = lap_at(i)
    part_lap = math.fsum(wy * (gam_x - gam_at(y)) for y, wy in zip(idx.tolist(), w.tolist()))
    part_mix = math.fsum(wy * (fv[i] - fv[y]) * (lap_x - lap_at(y))
                         for y, wy in zip(idx.tolist(), w.tolist()))
    return (-0.5 * part_lap + 0.5 * part_mix) / m[i]


# -- Khas'minskii hypotheses -------------------------------------------------

class MonotoneTable:
    """Piecewise-linear positive nondecreasing function from sample points."""

    def __init__(self, r, values):
        r = np.asarray(r, dtype=np.float64)
        values = np.asarray(values, dtype=np.float64)
        if r.ndim != 1 or r.shape != values.shape or len(r) < 2:
            raise PreconditionError("table needs at least two (r, f(r)) points")
        if np.any(np.diff(r) <= 0):
            raise PreconditionError("table abscissae must be strictly increasing")
        if np.any(values <= 0):
            raise PreconditionError("f must be strictly positive")
        if np.any(np.diff(values) < 0):
            raise PreconditionError("f must be nondecreasing")
        self.r = r
        self.values = values

    @classmethod
    def from_callable(cls, fn, r):
        r = np.asarray(r, dtype=np.float64)
        return cls(r, [fn(x) for x in r])

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        if np.any(x < self.r[0] - 1e-12) or np.any(x > self.r[-1] + 1e-12):
            raise PreconditionError(
                f"table covers [{self.r[0]}, {self.r[-1]}], value outside requested")
        return np.interp(x, self.r, self.values)

    def reciprocal_partial_integrals(self):
        """Trapezoid partial integrals of ``1/f`` at the table points."""
        inv = 1.0 / self.values
        steps = 0.5 * (inv[1:] + inv[:-1]) * np.diff(self.r)
        return np.concatenate([[0.0], np.cumsum(steps)])


@dataclass
class KhasminskiiReport:
    violations: list
    negative_v: list
    reciprocal_integral_r: np.ndarray
    reciprocal_integral: np.ndarray
    divergence: str
    max_v_high_degree: float
    high_degree_threshold: float
    tol: float = POINTWISE_TOL
    checked: int = 0
    notes: list = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        """Pointwise hypotheses only; divergence of the integral is never decided."""
        return not self.violations and not self.negative_v


def khasminskii_check(G: WeightedGraph, v, fspec, K=None) -> KhasminskiiReport:
    """Check ``Lv + f(v) >= 0`` outside ``K`` and ``v >= 0``.

    ``fspec`` is a :class:`MonotoneTable` covering the range of ``v``. The
    divergence of ``int dr / f(r)`` cannot be certified from a finite table;
    the report carries its partial integrals instead.
    """
    if not isinstance(fspec, MonotoneTable):
        raise PreconditionError("fspec must be a MonotoneTable")
    vv = _vals(v)
    excluded = set() if K is None else set(K)
    for k in excluded:
        G.index(k)
    fvals = fspec(vv)
    violations = []
    checked = 0
    for i, x in enumerate(G.vertices):
        if x in excluded:
            continue
        checked += 1
        value = apply_laplacian(G, vv, x) + float(fvals[i])
        if value < -POINTWISE_TOL:
            violations.append((x, value))
    negative = [(x, float(vv[i])) for i, x in enumerate(G.vertices) if vv[i] < 0]
    deg = G.degree_array
    thresh = float(np.quantile(deg, 0.9)) if G.n else 0.0
    high = vv[deg >= thresh]
    return KhasminskiiReport(
        violations=violations,
        negative_v=negative,
        reciprocal_integral_r=fspec.r.copy(),
        reciprocal_integral=fspec.reciprocal_partial_integrals(),
        divergence="not decidable from finite data",
        max_v_high_degree=float(high.max()) if len(high) else float("nan"),
        high_degree_threshold=thresh,
        checked=checked,
        notes=["v -> infinity along sequences with Deg -> infinity is vacuous on a "
               "finite graph; max of v on the top-decile-degree vertices is reported"],
    )
