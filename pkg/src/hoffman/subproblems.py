"""LP building blocks: rho_J, membership in S(A), minimal null supports,
the surjective fast path, the primal H_J evaluation and l1 distances."""
from __future__ import annotations

import itertools
import time

import numpy as np

from .core import (TOL_ZERO, BudgetExceeded, EmptyPolyhedronError, EmptySetError,
                   HoffmanResult, IndexSet, InvalidWitnessError, Membership,
                   NumericalFailure, PreconditionFailed, as_index_set, as_matrix,
                   scale)
from .lp import INFEASIBLE, OPTIMAL, LpProblem, SimplexSolver

HJ_PRIMAL_MAX = 16


def _rho_rows(A: np.ndarray, rows: np.ndarray):
    """min ||A_rows^T v||_inf over the simplex; ``rows`` are 0-based."""
    AJ = A[rows]
    k, n = AJ.shape
    # variables (v_1..v_k, t)
    G = np.zeros((2 * n + 1, k + 1))
    G[:n, :k] = AJ.T
    G[:n, k] = -1.0
    G[n:2 * n, :k] = -AJ.T
    G[n:2 * n, k] = -1.0
    G[-1, :k] = 1.0
    h = np.zeros(2 * n + 1)
    h[-1] = 1.0
    c = np.zeros(k + 1)
    c[k] = 1.0
    sol = SimplexSolver().solve(LpProblem(c, G, ["<="] * (2 * n) + ["="], h))
    if sol.status != OPTIMAL:
        raise NumericalFailure(f"rho LP returned {sol.status}")
    v = np.maximum(sol.x[:k], 0.0)
    v /= v.sum()
    return float(np.max(np.abs(AJ.T @ v))), v


def rho(A, J):
    """Return ``(rho, v)`` with ``rho = min{||A_J^T v||_inf : v >= 0, 1^T v = 1}``.

    ``v`` is indexed like the sorted members of ``J``.
    """
    A = as_matrix(A)
    J = as_index_set(J, A.shape[0])
    if len(J) == 0:
        raise EmptySetError("rho is undefined on the empty set; H_J = 0 by convention")
    return _rho_rows(A, J.zero_based())


def _has_null_witness(A, rows, thresh):
    r, w = _rho_rows(A, rows)
    return r <= thresh, w


def minimal_support(A, v, J, tol_zero=TOL_ZERO):
    """Shrink the support of a null witness ``v`` to an inclusion-minimal set.

    Indices are dropped greedily from the largest down, keeping each removal
    for which the remaining rows still admit a simplex vector ``w`` with
    ``||A_I^T w||_inf <= tol_zero * scale(A)``.  At the fixed point no single
    index can be removed.

    Returns ``(I, w, lp_solves)``.
    """
    A = as_matrix(A)
    m = A.shape[0]
    J = as_index_set(J, m)
    v = np.asarray(v, dtype=float).ravel()
    if v.size != len(J):
        raise InvalidWitnessError("witness length does not match J")
    thresh = tol_zero * scale(A)
    if np.any(v < -1e-9) or abs(v.sum() - 1.0) > 1e-7:
        raise InvalidWitnessError("witness must lie on the simplex")
    rows = J.zero_based()
    if np.max(np.abs(A[rows].T @ v)) > thresh:
        raise InvalidWitnessError("A_J^T v is not zero within tolerance")

    lp_solves = 0
    support = rows[v > 1e-10]
    if support.size < rows.size:
        ok, w = _has_null_witness(A, support, thresh)
        lp_solves += 1
        if not ok:
            support = rows
            w = v
    else:
        w = v
    current = list(support)
    for i in reversed(list(support)):
        if len(current) == 1:
            break
        trial = [j for j in current if j != i]
        ok, wt = _has_null_witness(A, np.array(trial), thresh)
        lp_solves += 1
        if ok:
            current, w = trial, wt
    I = IndexSet(m, (j + 1 for j in current))
    if len(w) != len(I):
        _, w = _rho_rows(A, I.zero_based())
        lp_solves += 1
    return I, w, lp_solves


def membership(A, J, tol_zero=TOL_ZERO) -> Membership:
    """Decide whether ``J`` belongs to S(A), i.e. whether ``A_J x < 0`` is feasible.

    Members carry ``rho > 0`` (so ``H_J = 1/rho``); non-members carry an
    inclusion-minimal support of a Gordan certificate.
    """
    A = as_matrix(A)
    J = as_index_set(J, A.shape[0])
    if len(J) == 0:
        raise EmptySetError("membership of the empty set is decided by convention")
    s = scale(A)
    r, v = _rho_rows(A, J.zero_based())
    if r > tol_zero * s:
        return Membership(J, True, r, v)
    I, w, extra = minimal_support(A, v, J, tol_zero=tol_zero)
    return Membership(J, False, r, w, support=I, lp_solves=1 + extra)


def fast_path(A, tol_zero=TOL_ZERO):
    """H(A) from a single LP when ``Ax < 0`` is feasible, else ``None``."""
    t0 = time.perf_counter()
    A = as_matrix(A)
    m = A.shape[0]
    out = membership(A, IndexSet.full(m), tol_zero=tol_zero)
    if not out.member:
        return None
    return HoffmanResult(1.0 / out.rho, "fastpath", witness=out.witness,
                         argmax=IndexSet.full(m), iterations=1, lp_solves=1,
                         wall_time=time.perf_counter() - t0)


def _min_l1_step(G, h, C=None, d=None):
    """min ||x||_1 s.t. G x <= h (and C x = d); returns (value, x) or None."""
    n = G.shape[1] if G is not None else C.shape[1]
    blocks, senses, rhs = [], [], []
    if G is not None and G.shape[0]:
        blocks.append(np.hstack([G, -G]))
        senses += ["<="] * G.shape[0]
        rhs.append(h)
    if C is not None and C.shape[0]:
        blocks.append(np.hstack([C, -C]))
        senses += ["="] * C.shape[0]
        rhs.append(d)
    M = np.vstack(blocks) if blocks else np.zeros((0, 2 * n))
    r = np.concatenate(rhs) if rhs else np.zeros(0)
    sol = SimplexSolver().solve(LpProblem(np.ones(2 * n), M, senses, r))
    if sol.status == INFEASIBLE:
        return None
    if sol.status != OPTIMAL:
        raise NumericalFailure(f"distance LP returned {sol.status}")
    x = sol.x[:n] - sol.x[n:]
    return float(np.abs(x).sum()), x


def hj_vertex(A, J):
    """Worst right-hand side for ``H_J``: returns ``(value, y_J, x)``.

    Enumerates the vertices ``y_J`` of the unit l-infinity ball; the inner
    minimum is convex in ``y`` so the maximum sits at a vertex.
    """
    A = as_matrix(A)
    J = as_index_set(J, A.shape[0])
    if len(J) == 0:
        return 0.0, np.zeros(0), np.zeros(A.shape[1])
    if len(J) > HJ_PRIMAL_MAX:
        raise BudgetExceeded(f"|J| = {len(J)} exceeds the vertex budget {HJ_PRIMAL_MAX}")
    AJ = A[J.zero_based()]
    best = (-1.0, None, None)
    for signs in itertools.product((-1.0, 1.0), repeat=len(J)):
        y = np.array(signs)
        res = _min_l1_step(AJ, y)
        if res is None:
            raise PreconditionFailed(f"{J} is not in S(A): A_J x <= y infeasible")
        if res[0] > best[0] + 1e-12:
            best = (res[0], y, res[1])
    return best


def hj_primal(A, J) -> float:
    """``H_J(A) = max_{||y||_inf <= 1} min{||x||_1 : A_J x <= y_J}`` (0 for empty J)."""
    return hj_vertex(A, J)[0]


def distance_to_polyhedron(A, b, u, cone=None) -> float:
    """l1 distance from ``u`` to ``{x : A x <= b}`` (intersected with ``{x : cone x <= 0}``)."""
    A = as_matrix(A)
    b = np.asarray(b, dtype=float).ravel()
    u = np.asarray(u, dtype=float).ravel()
    if b.size != A.shape[0] or u.size != A.shape[1]:
        raise ValueError("dimension mismatch")
    G, h = A, b - A @ u
    if cone is not None and np.size(cone):
        B = np.asarray(cone, dtype=float).reshape(-1, A.shape[1])
        G = np.vstack([G, B])
        h = np.concatenate([h, -B @ u])
    res = _min_l1_step(G, h)
    if res is None:
        raise EmptyPolyhedronError("{x : Ax <= b} is empty")
    return res[0]


def residual(A, b, u) -> float:
    """``||(Au - b)_+||_inf``."""
    A = as_matrix(A)
    r = A @ np.asarray(u, dtype=float) - np.asarray(b, dtype=float)
    return float(np.max(np.maximum(r, 0.0), initial=0.0))


def bound_check(A, b, u, H) -> bool:
    A = as_matrix(A)
    dist = distance_to_polyhedron(A, b, u)
    return dist <= H * residual(A, b, u) + 1e-6 * (1.0 + scale(A))
