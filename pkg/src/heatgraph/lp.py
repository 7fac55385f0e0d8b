"""Dense two-phase simplex method with Bland's rule.

Problems have the form::

    minimize    c @ x
    subject to  A_ub @ x <= b_ub
                A_eq @ x == b_eq
                x >= 0

They are small (a few hundred rows and columns at most), so a dense tableau
is adequate. Bland's smallest-index rule for entering and leaving variables
guarantees termination on degenerate problems. The solver keeps no global
state and is safe to call from several threads.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

PIVOT_TOL = 1e-12
COST_TOL = 1e-11
FEAS_TOL = 1e-9


@dataclass
class LPResult:
    status: str
    x: np.ndarray = None
    value: float = float("nan")
    iterations: int = 0


class LinearProgram:
    """A linear program over nonnegative variables."""

    def __init__(self, c, A_ub=None, b_ub=None, A_eq=None, b_eq=None):
        c = np.asarray(c, dtype=np.float64)
        if c.ndim != 1:
            raise PreconditionError("objective must be a vector")
        n = len(c)
        self.c = c
        self.A_ub, self.b_ub = self._rows(A_ub, b_ub, n, "inequality")
        self.A_eq, self.b_eq = self._rows(A_eq, b_eq, n, "equality")
        self.status = None

    @staticmethod
    def _rows(A, b, n, what):
        if A is None:
            return np.zeros((0, n)), np.zeros(0)
        A = np.atleast_2d(np.asarray(A, dtype=np.float64))
        b = np.asarray(b, dtype=np.float64).ravel()
        if A.shape != (len(b), n):
            raise PreconditionError(f"{what} rows have shape {A.shape}, expected ({len(b)}, {n})")
        if not np.all(np.isfinite(b)) or not np.all(np.isfinite(A)):
            raise PreconditionError(f"{what} data must be finite")
        return A, b

    @property
    def num_variables(self) -> int:
        return len(self.c)

    def solve(self) -> LPResult:
        result = simplex(self.c, self.A_ub, self.b_ub, self.A_eq, self.b_eq)
        self.status = result.status
        return result


def _pivot(T, row, col):
    T[row] /= T[row, col]
    piv = T[row]
    colv = T[:, col].copy()
    colv[row] = 0.0
    nz = np.flatnonzero(colv)
    if len(nz):
        T[nz] -= np.outer(colv[nz], piv)


def _run(T, basis, ncols, max_iter):
    """Bland-rule iterations on tableau ``T``; the last row holds reduced costs.

    Only the first ``ncols`` columns may enter. Returns (status, iterations).
    """
    m = T.shape[0] - 1
    it = 0
    while it < max_iter:
        cost = T[-1, :ncols]
        enter = np.flatnonzero(cost < -COST_TOL)
        if len(enter) == 0:
            return OPTIMAL, it
        col = int(enter[0])
        colv = T[:m, col]
        pos = np.flatnonzero(colv > PIVOT_TOL)
        if len(pos) == 0:
            return UNBOUNDED, it
        ratios = T[pos, -1] / colv[pos]
        best = ratios.min()
        ties = pos[ratios <= best + 1e-12 * max(1.0, abs(best))]
        row = int(min(ties, key=lambda r: basis[r]))
        _pivot(T, row, col)
        basis[row] = col
        it += 1
    raise RuntimeError("simplex iteration limit reached")


def simplex(c, A_ub, b_ub, A_eq, b_eq, max_iter=50_000) -> LPResult:
    c = np.asarray(c, dtype=np.float64)
    n = len(c)
    A_ub = np.zeros((0, n)) if A_ub is None else np.asarray(A_ub, dtype=np.float64)
    A_eq = np.zeros((0, n)) if A_eq is None else np.asarray(A_eq, dtype=np.float64)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=np.float64)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=np.float64)
    mu, me = len(b_ub), len(b_eq)
    m = mu + me

    # columns: original | slacks | artificials | rhs
    A = np.zeros((m, n + mu))
    A[:mu, :n] = A_ub
    A[:mu, n:] = np.eye(mu)
    A[mu:, :n] = A_eq
    b = np.concatenate([b_ub, b_eq])
    neg = b < 0
    A[neg] *= -1.0
    b = np.where(neg, -b, b)

    # slack columns serve as the starting basis for rows that kept their sign
    basis = [-1] * m
    for i in range(mu):
        if not neg[i]:
            basis[i] = n + i
    need = [i for i in range(m) if basis[i] < 0]
    na = len(need)
    ncols = n + mu
    T = np.zeros((m + 1, ncols + na + 1))
    T[:m, :ncols] = A
    T[:m, -1] = b
    for k, i in enumerate(need):
        T[i, ncols + k] = 1.0
        basis[i] = ncols + k

    iters = 0
    if na:
        # phase 1: minimise the sum of artificials
        T[-1, :] = 0.0
        T[-1, ncols:ncols + na] = 1.0
        for i in need:
            T[-1] -= T[i]
        status, it = _run(T, basis, ncols + na, max_iter)
        iters += it
        if -T[-1, -1] > FEAS_TOL * max(1.0, np.abs(b).max(initial=0.0)):
            return LPResult(INFEASIBLE, iterations=iters)
        # drive remaining artificials out of the basis
        keep = []
        for i in range(m):
            if basis[i] >= ncols:
                row = T[i, :ncols]
                cand = np.flatnonzero(np.abs(row) > 1e-9)
                if len(cand):
                    _pivot(T, i, int(cand[0]))
                    basis[i] = int(cand[0])
                    keep.append(i)
                # otherwise the row is redundant and is dropped
            else:
                keep.append(i)
        T = np.vstack([T[keep], T[-1:]])
        T = np.delete(T, np.s_[ncols:ncols + na], axis=1)
        basis = [basis[i] for i in keep]
        m = len(keep)

    # phase 2
    T[-1, :] = 0.0
    T[-1, :n] = c
    for i, j in enumerate(basis):
        if T[-1, j] != 0.0:
            T[-1] -= T[-1, j] * T[i]
    status, it = _run(T, basis, ncols, max_iter)
    iters += it
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, iterations=iters)
    x = np.zeros(ncols)
    for i, j in enumerate(basis):
        x[j] = T[i, -1]
    x = x[:n]
    return LPResult(OPTIMAL, x=x, value=float(c @ x), iterations=iters)


__all__ = ["LinearProgram", "LPResult", "simplex", "OPTIMAL", "INFEASIBLE", "UNBOUNDED"]
