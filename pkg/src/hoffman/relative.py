"""Relative Hoffman constants for a conic reference set ``R = {x : Bx <= 0}``.

Both constants reduce to a single LP (or one LP per sign orthant) when the
system is surjective relative to ``R``.  Multipliers ``lam >= 0`` on the rows
of ``B`` parametrize the polar cone, so ``u = A^T v + B^T lam``.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .core import (BudgetExceeded, EmptyPolyhedronError, HoffmanResult,
                   NumericalFailure, PreconditionFailed, as_matrix)
from .lp import OPTIMAL, LpProblem, SimplexSolver
from .subproblems import _min_l1_step, distance_to_polyhedron

ORTHANT_MAX_P = 15


@dataclass(frozen=True)
class ConicReference:
    """The cone ``{x : Bx <= 0}``; ``B`` with zero rows means all of R^n."""

    B: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))

    def __post_init__(self):
        B = np.array(self.B, dtype=float)
        if B.size == 0:
            B = B.reshape(0, B.shape[1] if B.ndim == 2 else 0)
        if B.ndim != 2:
            raise ValueError("B must be a 2-d array")
        if not np.all(np.isfinite(B)):
            raise ValueError("B must be finite")
        B.setflags(write=False)
        object.__setattr__(self, "B", B)

    @classmethod
    def whole_space(cls, n: int) -> "ConicReference":
        return cls(np.zeros((0, n)))

    @classmethod
    def nonnegative_orthant(cls, n: int) -> "ConicReference":
        return cls(-np.eye(n))

    def rows_for(self, n: int) -> np.ndarray:
        """``B`` checked against dimension ``n``."""
        if self.B.shape[0] == 0:
            return np.zeros((0, n))
        if self.B.shape[1] != n:
            raise ValueError(f"B has {self.B.shape[1]} columns, expected {n}")
        return self.B

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float).ravel()
        B = self.rows_for(x.size)
        return bool(np.all(B @ x <= tol))


def _feasible(G, h, C=None, d=None) -> bool:
    return _min_l1_step(G, h, C, d) is not None


def _dual_lp(M, B, v_lb, v_ub, norm_row):
    """min t  s.t.  -t <= M^T v + B^T lam <= t,  norm_row . v = 1,  lam >= 0."""
    p, n = M.shape
    k = B.shape[0]
    N = p + k + 1
    G = np.zeros((2 * n + 1, N))
    G[:n, :p] = M.T
    G[:n, p:p + k] = B.T
    G[:n, -1] = -1.0
    G[n:2 * n, :p] = -M.T
    G[n:2 * n, p:p + k] = -B.T
    G[n:2 * n, -1] = -1.0
    G[-1, :p] = norm_row
    h = np.zeros(2 * n + 1)
    h[-1] = 1.0
    c = np.zeros(N)
    c[-1] = 1.0
    lb = np.concatenate([v_lb, np.zeros(k + 1)])
    ub = np.concatenate([v_ub, np.full(k + 1, np.inf)])
    sol = SimplexSolver().solve(LpProblem(c, G, ["<="] * (2 * n) + ["="], h, lb, ub))
    if sol.status != OPTIMAL:
        raise NumericalFailure(f"relative LP returned {sol.status}")
    v, lam = sol.x[:p], sol.x[p:p + k]
    return float(np.max(np.abs(M.T @ v + B.T @ lam), initial=0.0)), v, lam


def relative_cone_ineq(A, R: ConicReference) -> HoffmanResult:
    """H(A|R) for ``Ax <= b`` with solutions and points restricted to ``R``.

    Requires ``A(R) + R^m_+ = R^m``, checked as feasibility of
    ``{Ax <= -1, Bx <= 0}``.
    """
    t0 = time.perf_counter()
    A = as_matrix(A)
    m, n = A.shape
    B = R.rows_for(n)
    G = np.vstack([A, B])
    h = np.concatenate([-np.ones(m), np.zeros(B.shape[0])])
    if not _feasible(G, h):
        raise PreconditionFailed("A(R) + R^m_+ != R^m: {Ax <= -1, Bx <= 0} is infeasible")
    t, v, lam = _dual_lp(A, B, np.zeros(m), np.full(m, np.inf), np.ones(m))
    if t <= 0.0:
        raise NumericalFailure("relative LP returned t = 0 despite surjectivity")
    return HoffmanResult(1.0 / t, "relative-cone", witness=v, iterations=1, lp_solves=2,
                         wall_time=time.perf_counter() - t0,
                         extra={"lambda": lam, "t": t, "case": "inequality"})


def relative_cone_eq(C, R: ConicReference) -> HoffmanResult:
    """H~(C|R) for ``Cx = d`` restricted to ``R``, in the case ``C(R) = R^p``.

    The constraint ``||z||_1 = 1`` is linear on each sign orthant, so the
    minimum is taken over ``2**p`` LPs; ties keep the lexicographically first
    sign vector (``-1`` before ``+1``).
    """
    t0 = time.perf_counter()
    C = as_matrix(C)
    p, n = C.shape
    if p > ORTHANT_MAX_P:
        raise BudgetExceeded(f"p = {p} needs 2^{p} orthant LPs; limit is p <= {ORTHANT_MAX_P}")
    B = R.rows_for(n)
    zeros = np.zeros(B.shape[0])
    lp_solves = 0
    for j in range(p):
        for sgn in (1.0, -1.0):
            e = np.zeros(p)
            e[j] = sgn
            lp_solves += 1
            if not _feasible(B if B.shape[0] else None, zeros, C, e):
                raise PreconditionFailed(f"C(R) != R^p: Cx = {'+' if sgn > 0 else '-'}e_{j + 1} "
                                         "has no solution in R")
    best = (np.inf, None, None, None)
    for signs in itertools.product((-1.0, 1.0), repeat=p):
        sigma = np.array(signs)
        lb = np.where(sigma > 0, 0.0, -np.inf)
        ub = np.where(sigma > 0, np.inf, 0.0)
        t, z, lam = _dual_lp(C, B, lb, ub, sigma)
        lp_solves += 1
        if t < best[0]:
            best = (t, z, lam, sigma)
    t, z, lam, sigma = best
    if t <= 0.0:
        raise NumericalFailure("orthant LPs returned t = 0 despite C(R) = R^p")
    return HoffmanResult(1.0 / t, "relative-cone", witness=z, iterations=2 ** p,
                         lp_solves=lp_solves, wall_time=time.perf_counter() - t0,
                         extra={"lambda": lam, "t": t, "orthant": sigma, "case": "equality"})


def relative_distance(A, b, u, R: ConicReference) -> float:
    """l1 distance from ``u`` to ``{x in R : Ax <= b}``."""
    A = as_matrix(A)
    return distance_to_polyhedron(A, b, u, cone=R.rows_for(A.shape[1]))


def equation_distance(C, d, x, R: ConicReference) -> float:
    """l1 distance from ``x`` to ``{y in R : Cy = d}``."""
    C = as_matrix(C)
    x = np.asarray(x, dtype=float).ravel()
    d = np.asarray(d, dtype=float).ravel()
    B = R.rows_for(C.shape[1])
    G = B if B.shape[0] else None
    res = _min_l1_step(G, -B @ x, C, d - C @ x)
    if res is None:
        raise EmptyPolyhedronError("{y in R : Cy = d} is empty")
    return res[0]
