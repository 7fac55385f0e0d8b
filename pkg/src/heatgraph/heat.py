"""Restricted heat kernels on finite vertex sets and heat-loss diagnostics.

For a finite set ``K`` the Dirichlet restriction ``L_K`` acts on functions on
``K`` extended by zero. It is self-adjoint on ``l^2(K, m)``; the similarity
``A = M^{1/2} L_K M^{-1/2}`` is a symmetric matrix with ``Deg(x)`` on the
diagonal and ``-b(x,y) / sqrt(m(x) m(y))`` off it. Kernels are evaluated from
one eigendecomposition of ``A``:

    p_t(x, y) = (M^{-1/2} exp(-tA) M^{-1/2})[x, y]
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._util import fmt, parallel_map
from .errors import NumericalError, PreconditionError, SizeCapError
from .graph import VertexSet, WeightedGraph, ball

MAX_DENSE = 3000

COMPLETE = "complete-consistent"
INCOMPLETE = "incomplete-detected"
INCONCLUSIVE = "inconclusive"

COMPLETE_DEFECT = 1e-6
INCOMPLETE_DEFECT = 1e-2
STABLE_DEFECT = 1e-3


class DirichletRestriction:
    """Dirichlet restriction of the Laplacian to a finite vertex set."""

    def __init__(self, G: WeightedGraph, K):
        if isinstance(K, VertexSet):
            idx = K.indices()
        else:
            idx = np.array(sorted({G.index(v) for v in K}), dtype=np.int64)
        if len(idx) == 0:
            raise PreconditionError("restriction set is empty")
        if len(idx) > MAX_DENSE:
            raise SizeCapError(
                f"restriction to {len(idx)} vertices exceeds the dense cap {MAX_DENSE}; "
                "use the radial reduction for symmetric families")
        idx = np.sort(idx)
        n = len(idx)
        local = np.full(G.n, -1, dtype=np.int64)
        local[idx] = np.arange(n)
        m = G.measure_array[idx].copy()
        A = np.diag(G.degree_array[idx].astype(np.float64))
        indptr, indices, w = G.csr
        sqm = np.sqrt(m)
        for a, i in enumerate(idx.tolist()):
            lo, hi = indptr[i], indptr[i + 1]
            nb = local[indices[lo:hi]]
            inside = nb >= 0
            A[a, nb[inside]] = -w[lo:hi][inside] / (sqm[a] * sqm[nb[inside]])
        A.setflags(write=False)
        m.setflags(write=False)
        self.graph = G
        self.indices = idx
        self.vertices = tuple(G.vertices[i] for i in idx.tolist())
        self.m = m
        self.A = A

    def __len__(self):
        return len(self.indices)

    def position(self, x) -> int:
        i = self.graph.index(x)
        k = int(np.searchsorted(self.indices, i))
        if k >= len(self.indices) or self.indices[k] != i:
            raise PreconditionError(f"vertex {x!r} is not in the restriction set")
        return k

    @cached_property
    def spectrum(self):
        """Eigenvalues and orthonormal eigenvectors of the symmetric matrix ``A``."""
        try:
            w, U = np.linalg.eigh(self.A)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"eigendecomposition failed: {exc}") from exc
        return w, U

    @property
    def laplacian_matrix(self) -> np.ndarray:
        """``L_K`` in the vertex basis: ``M^{-1/2} A M^{1/2}``."""
        s = np.sqrt(self.m)
        return self.A / s[:, None] * s[None, :]

    def quadratic_form(self, f) -> float:
        """``<L_K f, f>`` in ``l^2(K, m)``."""
        f = np.asarray(f, dtype=np.float64)
        return float(f @ (self.laplacian_matrix @ f * self.m))

    def kernel(self, t: float) -> np.ndarray:
        if t < 0:
            raise PreconditionError("time must be nonnegative")
        if t == 0:
            return np.diag(1.0 / self.m)
        w, U = self.spectrum
        s = 1.0 / np.sqrt(self.m)
        V = U * np.exp(-t * w)[None, :]
        return (s[:, None] * (V @ U.T)) * s[None, :]

    def semigroup_apply(self, t: float, f) -> np.ndarray:
        """``(P_t f)(x) = sum_y p_t(x, y) f(y) m(y)`` for ``f`` on ``K``."""
        f = np.asarray(f, dtype=np.float64)
        if t < 0:
            raise PreconditionError("time must be nonnegative")
        if t == 0:
            return f.copy()
        w, U = self.spectrum
        s = np.sqrt(self.m)
        return (U @ (np.exp(-t * w) * (U.T @ (s * f)))) / s


def dirichlet_restriction(G: WeightedGraph, K) -> DirichletRestriction:
    return DirichletRestriction(G, K)


def restricted_heat_kernel(R: DirichletRestriction, t: float) -> np.ndarray:
    """Matrix ``p_t(x, y)`` over the restriction set, canonical order."""
    return R.kernel(t)


def markov_check(R: DirichletRestriction, t: float, f, tol: float = 1e-10) -> bool:
    """Whether ``0 <= sum_y p_t(x,y) f(y) m(y) <= 1`` at all ``x`` for ``0 <= f <= 1``."""
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (len(R),):
        raise PreconditionError("f must have one value per restriction vertex")
    if np.any(f < 0) or np.any(f > 1):
        raise PreconditionError("f must take values in [0, 1]")
    u = R.semigroup_apply(t, f)
    return bool(np.all(u >= -tol) and np.all(u <= 1 + tol))


@dataclass
class HeatLossProfile:
    center: str
    t: float
    radii: list
    ball_sizes: list
    defects: list
    verdict: str
    thresholds: dict = field(default_factory=lambda: {
        "complete_below": COMPLETE_DEFECT,
        "incomplete_above": INCOMPLETE_DEFECT,
        "stable_within": STABLE_DEFECT,
    })

    def verdict_line(self) -> str:
        th = self.thresholds
        return (f"heat loss: {self.verdict} (heuristic: complete if last defect < "
                f"{fmt(th['complete_below'])}; incomplete if last two defects differ by < "
                f"{fmt(th['stable_within'])} and exceed {fmt(th['incomplete_above'])})")

    def to_csv(self) -> str:
        rows = ["radius,ball_size,defect"]
        rows += [f"{r},{n},{fmt(d)}" for r, n, d in zip(self.radii, self.ball_sizes, self.defects)]
        rows.append(f"# {self.verdict_line()}")
        return "\n".join(rows) + "\n"


def classify_defects(defects) -> str:
    """Heuristic stochastic-completeness verdict from a defect sequence."""
    if not defects:
        return INCONCLUSIVE
    last = defects[-1]
    if (len(defects) >= 2 and abs(defects[-2] - last) < STABLE_DEFECT
            and last > INCOMPLETE_DEFECT):
        return INCOMPLETE
    if last < COMPLETE_DEFECT:
        return COMPLETE
    return INCONCLUSIVE


def root_defect(R: DirichletRestriction, x, t: float) -> float:
    """``1 - sum_y p_t(x, y) m(y)`` for ``x`` in the restriction set."""
    k = R.position(x)
    return float(1.0 - R.semigroup_apply(t, np.ones(len(R)))[k])


def heat_loss_profile(G: WeightedGraph, x0, t: float, radii) -> HeatLossProfile:
    """Heat-loss defect at ``x0`` over the exhaustion by balls ``B_r(x0)``."""
    G.index(x0)
    radii = [int(r) for r in radii]
    if not radii:
        raise PreconditionError("at least one radius is required")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise PreconditionError("radii must be strictly increasing")
    if radii[0] < 0:
        raise PreconditionError("radii must be nonnegative")
    if t < 0:
        raise PreconditionError("time must be nonnegative")

    def one(r):
        K = ball(G, x0, r)
        R = DirichletRestriction(G, K)
        return len(K), root_defect(R, x0, t)

    results = parallel_map(one, radii)
    sizes = [n for n, _ in results]
    defects = [d for _, d in results]
    return HeatLossProfile(center=x0, t=float(t), radii=radii, ball_sizes=sizes,
                           defects=defects, verdict=classify_defects(defects))
