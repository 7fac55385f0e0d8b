"""Finite weighted graphs ``(X, b, m)`` and their combinatorial geometry.

A :class:`WeightedGraph` is immutable. Vertices are opaque strings kept in
lexicographic order; adjacency is stored as CSR arrays with neighbours sorted
by canonical index, and weighted degrees are accumulated with ``math.fsum`` in
that order so they are reproducible.

Graph file format::

    # comment
    v <id> <m>
    e <id1> <id2> <b>
    # frontier <id> <id> ...

The optional ``# frontier`` comment lists the outermost sphere of a truncated
realization of an infinite family; readers that ignore comments see a plain
finite graph.
"""
from __future__ import annotations

import hashlib
import math
import threading
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import kernels
from ._util import fmt_exact, parse_positive
from .errors import GraphFormatError, PreconditionError, UnknownVertexError


class Unreachable:
    """Tag for the distance between vertices in different components."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNREACHABLE"

    __str__ = __repr__

    def __reduce__(self):
        return (Unreachable, ())


UNREACHABLE = Unreachable()


class WeightedGraph:
    """Immutable finite weighted graph.

    Parameters
    ----------
    measure : mapping of vertex id to positive float
    edges : iterable of ``(x, y, b)`` with ``b > 0``, each unordered pair once
    frontier : optional vertex ids on the truncation boundary of a generated
        realization; carried for reporting only, never serialized.
    """

    def __init__(self, measure: Mapping[str, float], edges: Iterable = (), frontier=()):
        ids = sorted(str(v) for v in measure)
        if len(set(ids)) != len(ids):
            raise GraphFormatError("duplicate vertex id")
        m = np.array([float(measure[v]) for v in ids], dtype=np.float64)
        index = {v: i for i, v in enumerate(ids)}
        rows, cols, wts = [], [], []
        for x, y, b in edges:
            x, y = str(x), str(y)
            for v in (x, y):
                if v not in index:
                    raise GraphFormatError(f"edge references undeclared vertex {v!r}")
            rows.append(index[x])
            cols.append(index[y])
            wts.append(float(b))
        self._init_arrays(tuple(ids), m, np.array(rows, dtype=np.int64),
                          np.array(cols, dtype=np.int64), np.array(wts, dtype=np.float64),
                          frontier)

    @classmethod
    def from_arrays(cls, ids, m, rows, cols, weights, frontier=()):
        """Fast constructor from parallel arrays; ``ids`` may be in any order."""
        ids = [str(v) for v in ids]
        order = sorted(range(len(ids)), key=ids.__getitem__)
        perm = np.empty(len(ids), dtype=np.int64)
        perm[order] = np.arange(len(ids))
        sorted_ids = tuple(ids[i] for i in order)
        if len(set(sorted_ids)) != len(sorted_ids):
            raise GraphFormatError("duplicate vertex id")
        self = cls.__new__(cls)
        self._init_arrays(sorted_ids, np.asarray(m, dtype=np.float64)[order],
                          perm[np.asarray(rows, dtype=np.int64)],
                          perm[np.asarray(cols, dtype=np.int64)],
                          np.asarray(weights, dtype=np.float64), frontier)
        return self

    def _init_arrays(self, ids, m, rows, cols, wts, frontier):
        n = len(ids)
        if not np.all(np.isfinite(m)) or np.any(m <= 0):
            bad = ids[int(np.argmax(~(np.isfinite(m) & (m > 0))))]
            raise GraphFormatError(f"measure of vertex {bad!r} must be positive")
        if len(wts) and (not np.all(np.isfinite(wts)) or np.any(wts <= 0)):
            k = int(np.argmax(~(np.isfinite(wts) & (wts > 0))))
            raise GraphFormatError(
                f"edge weight b({ids[rows[k]]},{ids[cols[k]]}) must be positive")
        loops = rows == cols
        if np.any(loops):
            k = int(np.argmax(loops))
            raise GraphFormatError(f"self-loop at vertex {ids[rows[k]]!r}")
        lo = np.minimum(rows, cols)
        hi = np.maximum(rows, cols)
        key = lo * max(n, 1) + hi
        uniq, counts = np.unique(key, return_counts=True)
        if np.any(counts > 1):
            dup = int(uniq[np.argmax(counts > 1)])
            raise GraphFormatError(
                f"duplicate edge {ids[dup // n]!r} -- {ids[dup % n]!r}")

        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        w = np.concatenate([wts, wts])
        order = np.lexsort((dst, src))
        src, dst, w = src[order], dst[order], w[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)

        degsum = np.array([math.fsum(w[indptr[i]:indptr[i + 1]]) for i in range(n)],
                          dtype=np.float64)
        for arr in (m, indptr, dst, w, degsum):
            arr.setflags(write=False)

        self._ids = ids
        self._index = {v: i for i, v in enumerate(ids)}
        self._m = m
        self._indptr = indptr
        self._indices = dst
        self._weights = w
        self._degsum = degsum
        self._deg = degsum / m
        self._deg.setflags(write=False)
        fr = frozenset(str(v) for v in frontier)
        unknown = fr - set(self._index)
        if unknown:
            raise UnknownVertexError(sorted(unknown)[0])
        self.frontier = fr
        self._bfs_cache = {}
        self._lock = threading.Lock()

    # -- basic accessors -------------------------------------------------
    @property
    def vertices(self) -> tuple:
        return self._ids

    @property
    def n(self) -> int:
        return len(self._ids)

    @property
    def num_edges(self) -> int:
        return len(self._indices) // 2

    @property
    def measure_array(self) -> np.ndarray:
        return self._m

    @property
    def degree_array(self) -> np.ndarray:
        """Weighted degrees ``Deg`` in canonical vertex order."""
        return self._deg

    @property
    def degree_sum_array(self) -> np.ndarray:
        """Unnormalised row sums ``sum_y b(x, y)``."""
        return self._degsum

    @property
    def csr(self):
        """``(indptr, indices, weights)`` adjacency arrays (read-only)."""
        return self._indptr, self._indices, self._weights

    def __contains__(self, x) -> bool:
        return x in self._index

    def __len__(self) -> int:
        return len(self._ids)

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, edges={self.num_edges})"

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownVertexError(x) from None

    def measure(self, x) -> float:
        return float(self._m[self.index(x)])

    def degree(self, x) -> float:
        return float(self._deg[self.index(x)])

    def neighbor_slice(self, i: int):
        """Neighbour indices and weights of the vertex with index ``i``."""
        a, b = self._indptr[i], self._indptr[i + 1]
        return self._indices[a:b], self._weights[a:b]

    def neighbors(self, x) -> list:
        idx, _ = self.neighbor_slice(self.index(x))
        return [self._ids[j] for j in idx]

    def edge_weight(self, x, y) -> float:
        """``b(x, y)``, zero for non-adjacent pairs."""
        i, j = self.index(x), self.index(y)
        idx, w = self.neighbor_slice(i)
        k = np.searchsorted(idx, j)
        if k < len(idx) and idx[k] == j:
            return float(w[k])
        return 0.0

    def edges(self) -> Iterator[tuple]:
        """Undirected edges ``(x, y, b)`` with ``x < y``, canonical order."""
        ids = self._ids
        for i in range(self.n):
            idx, w = self.neighbor_slice(i)
            for j, b in zip(idx.tolist(), w.tolist()):
                if j > i:
                    yield ids[i], ids[j], b

    def edge_arrays(self):
        """``(i, j, b)`` index arrays for edges with ``i < j``."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self._indptr))
        keep = src < self._indices
        return src[keep], self._indices[keep], self._weights[keep]

    # -- derived graphs --------------------------------------------------
    def with_measure(self, m) -> "WeightedGraph":
        """Same edges, new measure (array in canonical order or a scalar factor)."""
        new_m = self._m * m if np.isscalar(m) else np.asarray(m, dtype=np.float64)
        i, j, b = self.edge_arrays()
        return WeightedGraph.from_arrays(self._ids, new_m, i, j, b, self.frontier)

    def with_edge_weights(self, keep_mask) -> "WeightedGraph":
        """Subgraph on all vertices keeping the edges selected by ``keep_mask``
        (aligned with :meth:`edge_arrays`)."""
        i, j, b = self.edge_arrays()
        keep = np.asarray(keep_mask, dtype=bool)
        return WeightedGraph.from_arrays(self._ids, self._m, i[keep], j[keep], b[keep],
                                         self.frontier)

    # -- traversal -------------------------------------------------------
    def hop_distances(self, i: int) -> np.ndarray:
        """Cached BFS hop distances from index ``i`` (-1 = unreachable)."""
        with self._lock:
            hit = self._bfs_cache.get(i)
        if hit is not None:
            return hit
        dist = kernels.bfs_distances(self._indptr, self._indices, i)
        dist.setflags(write=False)
        with self._lock:
            if len(self._bfs_cache) >= 512:
                self._bfs_cache.pop(next(iter(self._bfs_cache)))
            self._bfs_cache[i] = dist
        return dist

    def hop_distances_bounded(self, i: int, max_depth: int) -> np.ndarray:
        return kernels.bfs_distances(self._indptr, self._indices, i, max_depth)

    def canonical_hash(self) -> str:
        return hashlib.sha256(serialize_graph(self).encode()).hexdigest()

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (self._ids == other._ids and np.array_equal(self._m, other._m)
                and np.array_equal(self._indptr, other._indptr)
                and np.array_equal(self._indices, other._indices)
                and np.array_equal(self._weights, other._weights))

    __hash__ = None


@dataclass(frozen=True)
class VertexSet:
    """Sorted, duplicate-free subset of a graph's vertices."""

    vertices: tuple
    graph: WeightedGraph = field(repr=False, compare=False)

    @classmethod
    def of(cls, graph: WeightedGraph, vertices) -> "VertexSet":
        vs = set(vertices)
        for v in vs:
            graph.index(v)
        return cls(tuple(sorted(vs)), graph)

    @classmethod
    def from_indices(cls, graph: WeightedGraph, idx) -> "VertexSet":
        ids = graph.vertices
        return cls(tuple(ids[i] for i in sorted(set(int(k) for k in idx))), graph)

    def indices(self) -> np.ndarray:
        return np.array([self.graph.index(v) for v in self.vertices], dtype=np.int64)

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in set(self.vertices)

    def as_set(self) -> frozenset:
        return frozenset(self.vertices)


# -- I/O ------------------------------------------------------------------

def load_graph(text: str) -> WeightedGraph:
    """Parse graph-file content.

    Raises
    ------
    GraphFormatError
        On duplicate vertices or edges, undeclared endpoints, self-loops,
        non-positive values or malformed lines.
    """
    measure = {}
    edges = []
    seen = set()
    frontier = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            parts = line[1:].split()
            if parts and parts[0] == "frontier":
                frontier.extend((p, lineno) for p in parts[1:])
            continue
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "v":
            if len(parts) != 3:
                raise GraphFormatError("expected 'v <id> <m>'", lineno)
            vid = parts[1]
            if vid in measure:
                raise GraphFormatError(f"duplicate vertex id {vid!r}", lineno)
            measure[vid] = parse_positive(parts[2], "measure", lineno)
        elif tag == "e":
            if len(parts) != 4:
                raise GraphFormatError("expected 'e <id1> <id2> <b>'", lineno)
            x, y = parts[1], parts[2]
            for v in (x, y):
                if v not in measure:
                    raise GraphFormatError(f"edge references undeclared vertex {v!r}", lineno)
            if x == y:
                raise GraphFormatError(f"self-loop at vertex {x!r}", lineno)
            key = (x, y) if x < y else (y, x)
            if key in seen:
                raise GraphFormatError(f"duplicate edge {key[0]!r} -- {key[1]!r}", lineno)
            seen.add(key)
            edges.append((x, y, parse_positive(parts[3], "edge weight", lineno)))
        else:
            raise GraphFormatError(f"unknown declaration {tag!r}", lineno)
    for v, lineno in frontier:
        if v not in measure:
            raise GraphFormatError(f"frontier references undeclared vertex {v!r}", lineno)
    return WeightedGraph(measure, edges, frontier=[v for v, _ in frontier])


def serialize_graph(G: WeightedGraph) -> str:
    lines = [f"v {v} {fmt_exact(m)}" for v, m in zip(G.vertices, G.measure_array.tolist())]
    lines += [f"e {x} {y} {fmt_exact(b)}" for x, y, b in G.edges()]
    front = sorted(G.frontier)
    for k in range(0, len(front), 16):
        lines.append("# frontier " + " ".join(front[k:k + 16]))
    return "\n".join(lines) + "\n"


# -- combinatorial geometry -----------------------------------------------

def weighted_degree(G: WeightedGraph, x) -> float:
    """``Deg(x) = (1/m(x)) sum_y b(x, y)``; zero for isolated vertices."""
    return G.degree(x)


def combinatorial_distance(G: WeightedGraph, x, y):
    """Least number of edges on a path from ``x`` to ``y``, or ``UNREACHABLE``."""
    j = G.index(y)
    d = int(G.hop_distances(G.index(x))[j])
    return UNREACHABLE if d < 0 else d


def sphere(G: WeightedGraph, x0, r: int) -> VertexSet:
    if r < 0:
        raise PreconditionError("radius must be nonnegative")
    dist = G.hop_distances(G.index(x0))
    return VertexSet.from_indices(G, np.flatnonzero(dist == r))


def ball(G: WeightedGraph, x0, r: int) -> VertexSet:
    if r < 0:
        raise PreconditionError("radius must be nonnegative")
    dist = G.hop_distances(G.index(x0))
    return VertexSet.from_indices(G, np.flatnonzero((dist >= 0) & (dist <= r)))


def spheres(G: WeightedGraph, x0) -> list:
    """All nonempty spheres ``S_0, S_1, ...`` around ``x0`` as index arrays."""
    dist = G.hop_distances(G.index(x0))
    R = int(dist.max())
    order = np.argsort(dist, kind="stable")
    ds = dist[order]
    out = []
    for r in range(R + 1):
        lo, hi = np.searchsorted(ds, r, "left"), np.searchsorted(ds, r, "right")
        out.append(order[lo:hi])
    return out


def connected_component(G: WeightedGraph, x0) -> VertexSet:
    dist = G.hop_distances(G.index(x0))
    return VertexSet.from_indices(G, np.flatnonzero(dist >= 0))


def component_labels(G: WeightedGraph) -> np.ndarray:
    indptr, indices, _ = G.csr
    return kernels.component_labels(indptr, indices)


def is_connected(G: WeightedGraph) -> bool:
    if G.n == 0:
        return True
    return int(component_labels(G).max()) == 0


def inner_outer_degrees(G: WeightedGraph, x0):
    """``(Deg_-, Deg_+)`` arrays relative to ``x0`` (canonical order)."""
    dist = G.hop_distances(G.index(x0))
    indptr, indices, w = G.csr
    src = np.repeat(np.arange(G.n), np.diff(indptr))
    step = dist[indices] - dist[src]
    inner = np.zeros(G.n)
    outer = np.zeros(G.n)
    np.add.at(inner, src[step == -1], w[step == -1])
    np.add.at(outer, src[step == 1], w[step == 1])
    m = G.measure_array
    return inner / m, outer / m


def degree_report(G: WeightedGraph) -> dict:
    """Supremum of ``Deg`` and the bounded-degree stochastic completeness note.

    Every finite graph has bounded degree; the value matters when ``G`` is a
    truncation of an infinite family and the trend of ``max Deg`` with the
    truncation radius is what the caller inspects.
    """
    deg = G.degree_array
    k = int(np.argmax(deg)) if G.n else 0
    return {
        "max_degree": float(deg[k]) if G.n else 0.0,
        "argmax": G.vertices[k] if G.n else None,
        "note": "bounded weighted degree implies stochastic completeness",
    }
