"""Full-row-rank enumeration and the exhaustive brute-force oracle."""
from __future__ import annotations

import time

import numpy as np

from .core import (TOL_ZERO, BudgetExceeded, CoverCertificate, HoffmanResult,
                   IndexSet, TooLargeError, as_index_set, as_matrix, scale)
from .cover import DEFAULT_MAX_STEPS, _full_witness, _Separator
from .subproblems import _rho_rows

BRUTE_FORCE_MAX_M = 20


def _rank_rows(A, rows, thresh):
    M = np.array(A[rows], dtype=float)
    k, n = M.shape
    rank = 0
    for col in range(n):
        if rank == k:
            break
        p = rank + int(np.argmax(np.abs(M[rank:, col])))
        if abs(M[p, col]) <= thresh:
            continue
        M[[rank, p]] = M[[p, rank]]
        M[rank + 1:] -= np.outer(M[rank + 1:, col] / M[rank, col], M[rank])
        rank += 1
    return rank


def row_rank(A, J) -> int:
    """Numerical rank of ``A_J`` by elimination with partial pivoting.

    Pivots at or below ``1e-10 * scale(A)`` count as zero.
    """
    A = as_matrix(A)
    J = as_index_set(J, A.shape[0])
    if len(J) == 0:
        raise ValueError("J must be nonempty")
    return _rank_rows(A, J.zero_based(), 1e-10 * scale(A))


def _circuit(A, J, thresh):
    """Inclusion-minimal dependent subset of a dependent ``J``."""
    current = list(J.zero_based())
    for i in reversed(list(current)):
        trial = [j for j in current if j != i]
        if trial and _rank_rows(A, np.array(trial), thresh) < len(trial):
            current = trial
    return IndexSet(J.m, (j + 1 for j in current))


def enum_solve(A, max_steps: int = DEFAULT_MAX_STEPS) -> HoffmanResult:
    """H(A) as the largest ``1/rho_J`` over maximal full-row-rank ``J``.

    Runs the covering loop with the rank test as oracle and the separation
    restricted to ``|J| <= rank(A)``.  Independent sets go to F, minimal
    dependent subsets (circuits) to I; ``iterations`` counts scanned sets.
    """
    t0 = time.perf_counter()
    A = as_matrix(A)
    thresh = 1e-10 * scale(A)
    m, n = A.shape
    r = _rank_rows(A, np.arange(m), thresh)
    sep = _Separator(m, max_size=r)
    F, I, rhos = [], [], []
    H, argmax, best_v = 0.0, None, None
    steps = lp_solves = 0
    while True:
        J = sep.next()
        if J is None:
            break
        if steps >= max_steps:
            raise BudgetExceeded(f"enum: step budget {max_steps} exhausted", lower=H)
        steps += 1
        rows = J.zero_based()
        if _rank_rows(A, rows, thresh) == len(J):
            val, v = _rho_rows(A, rows)
            lp_solves += 1
            # independent rows admit no null simplex combination
            assert val > 0.0, f"full-row-rank {J} produced rho = 0"
            F.append(J)
            rhos.append(val)
            sep.add_F(J)
            if 1.0 / val > H:
                H, argmax, best_v = 1.0 / val, J, v
        else:
            C = _circuit(A, J, thresh)
            I.append(C)
            sep.add_I(C)
    cert = CoverCertificate(m, n, tuple(F), tuple(I), H, argmax, tuple(rhos),
                            iterations=steps, lp_solves=lp_solves, method="enum")
    return HoffmanResult(H, "enum", certificate=cert, witness=_full_witness(m, argmax, best_v),
                         argmax=argmax, iterations=steps, lp_solves=lp_solves,
                         nodes=sep.nodes, wall_time=time.perf_counter() - t0,
                         extra={"rank": r})


def brute_force(A, tol_zero: float = TOL_ZERO) -> HoffmanResult:
    """Classify every nonempty ``J`` with one LP each (Gray-code order).

    The returned certificate holds the exact maximal members and minimal
    non-members of S(A).  Only for ``m <= 20``.
    """
    t0 = time.perf_counter()
    A = as_matrix(A)
    m, n = A.shape
    if m > BRUTE_FORCE_MAX_M:
        raise TooLargeError(f"brute force needs 2^{m} LPs; limit is m <= {BRUTE_FORCE_MAX_M}")
    thresh = tol_zero * scale(A)
    member = np.zeros(1 << m, dtype=bool)
    member[0] = True
    rho_of = {}
    best = (0.0, None, None)
    for k in range(1, 1 << m):
        mask = k ^ (k >> 1)
        rows = np.array([i for i in range(m) if mask >> i & 1])
        val, v = _rho_rows(A, rows)
        if val > thresh:
            member[mask] = True
            rho_of[mask] = val
            J = IndexSet.from_mask(m, mask)
            h = 1.0 / val
            if h > best[0] or (h == best[0] and best[1] is not None and J < best[1]):
                best = (h, J, v)

    maximal, minimal = [], []
    for mask in range(1, 1 << m):
        if member[mask]:
            if not any(member[mask | 1 << i] for i in range(m) if not mask >> i & 1):
                maximal.append(IndexSet.from_mask(m, mask))
        elif all(member[mask & ~(1 << i)] for i in range(m) if mask >> i & 1):
            minimal.append(IndexSet.from_mask(m, mask))
    maximal.sort()
    minimal.sort()
    H, argmax, v = best
    cert = CoverCertificate(m, n, tuple(maximal), tuple(minimal), H, argmax,
                            tuple(rho_of[S.mask] for S in maximal),
                            iterations=(1 << m) - 1, lp_solves=(1 << m) - 1,
                            method="bruteforce")
    return HoffmanResult(H, "bruteforce", certificate=cert, witness=_full_witness(m, argmax, v),
                         argmax=argmax, iterations=(1 << m) - 1, lp_solves=(1 << m) - 1,
                         wall_time=time.perf_counter() - t0)
