"""Covering-pair algorithm: build the maximal sets of S(A) and the minimal
sets outside it, and read H(A) off the maximal ones.

The separation problem asks for a largest ``J`` with ``J`` not inside any
``F`` and no ``I`` inside ``J``.  With ``E = [m] \\ J`` this is a smallest
``E`` hitting every ``I`` while leaving at least one element of each
``[m] \\ F`` outside.  Each ``I`` is a clause "some element in E" and each
``F`` is a clause "some element of its complement in J"; both are handled
with unit propagation over dense 0/1 incidence matrices.

The search has two stages:

1. a hitting-set branch and bound that branches on the elements of the
   unhit ``I`` with the fewest free elements and returns the optimal
   cardinality (or proves the covering property);
2. a depth-first scan in index order, trying "i in J" before "i in E", which
   returns the lexicographically smallest ``J`` of that cardinality.

Inside the algorithm loop stage 2 resumes from the previous answer: sets
earlier in scan order were already covered and stay covered because the
collections only grow.
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .core import (TOL_ZERO, BudgetExceeded, CoverCertificate, HoffmanResult,
                   IndexSet, as_index_set, as_matrix, scale)
from .subproblems import membership

DEFAULT_MAX_STEPS = 20000

_FREE, _IN_J, _IN_E = -1, 0, 1


class _Rows:
    """Growable 0/1 incidence matrix with cached Python bitmasks."""

    def __init__(self, m):
        self.m = m
        self.data = np.zeros((8, m))
        self.bits = []
        self.size = 0

    def append(self, mask_bool: np.ndarray):
        if self.size == self.data.shape[0]:
            grown = np.zeros((2 * self.size, self.m))
            grown[:self.size] = self.data
            self.data = grown
        self.data[self.size] = mask_bool
        self.bits.append(_to_int(mask_bool))
        self.size += 1

    @property
    def view(self):
        return self.data[:self.size]


def _to_int(mask_bool) -> int:
    return int.from_bytes(np.packbits(np.asarray(mask_bool, dtype=bool), bitorder="little").tobytes(), "little")


class _Separator:
    """Separation oracle over growing collections F and I.

    ``max_size`` caps |J|; the full-row-rank scan uses it with rank(A).
    """

    def __init__(self, m: int, max_size: Optional[int] = None):
        self.m = m
        self.max_size = m if max_size is None else min(m, max_size)
        self.I = _Rows(m)
        self.Fc = _Rows(m)
        self._cursor = None
        self._target = None
        self.nodes = 0
        if m + 50 > sys.getrecursionlimit():
            sys.setrecursionlimit(m + 200)

    def add_F(self, J: IndexSet):
        self.Fc.append(~J.to_bool())

    def add_I(self, I: IndexSet):
        self.I.append(I.to_bool())

    # -- propagation -----------------------------------------------------
    def _propagate(self, a):
        """Unit propagation in place.  Returns (ok, unhit I rows, free counts)."""
        Im, Fm = self.I.view, self.Fc.view
        unhit = np.zeros(0, dtype=int)
        free_in_I = np.zeros(0)
        while True:
            self.nodes += 1
            isU = (a == _FREE).astype(float)
            nJ = int(np.count_nonzero(a == _IN_J))
            if nJ > self.max_size:
                return False, unhit, free_in_I
            if nJ == self.max_size and isU.any():
                a[isU > 0] = _IN_E
                continue
            changed = False
            if Im.shape[0]:
                hit = Im @ (a == _IN_E).astype(float)
                free_in_I = Im @ isU
                open_ = hit < 0.5
                if np.any(open_ & (free_in_I < 0.5)):
                    return False, unhit, free_in_I
                unit = np.flatnonzero(open_ & (free_in_I < 1.5))
                if unit.size:
                    els = np.argmax(Im[unit] * isU, axis=1)
                    a[els] = _IN_E
                    continue
                unhit = np.flatnonzero(open_)
            if Fm.shape[0]:
                hit = Fm @ (a == _IN_J).astype(float)
                free_in_F = Fm @ isU
                open_ = hit < 0.5
                if np.any(open_ & (free_in_F < 0.5)):
                    return False, unhit, free_in_I
                unit = np.flatnonzero(open_ & (free_in_F < 1.5))
                if unit.size:
                    els = np.argmax(Fm[unit] * isU, axis=1)
                    a[els] = _IN_J
                    changed = True
            if not changed:
                return True, unhit, free_in_I

    def _upper_bound(self, a, unhit):
        """Upper bound on |J| over completions of ``a``."""
        free = a == _FREE
        nJ = int(np.count_nonzero(a == _IN_J))
        ub = nJ + int(np.count_nonzero(free))
        if unhit.size:
            umask = _to_int(free)
            used = 0
            packed = 0
            bits = self.I.bits
            for r in unhit[:64]:
                x = bits[r] & umask
                if not x & used:
                    used |= x
                    packed += 1
            ub -= packed
        return min(ub, self.max_size)

    def _open_F_rows(self, a):
        Fm = self.Fc.view
        if not Fm.shape[0]:
            return np.zeros(0, dtype=int), np.zeros(0)
        hit = Fm @ (a == _IN_J).astype(float)
        free = Fm @ (a == _FREE).astype(float)
        return np.flatnonzero(hit < 0.5), free

    # -- stage 1: optimal cardinality -----------------------------------
    def _optimize(self):
        best = [-1]

        def dfs(a):
            ok, unhit, free_in_I = self._propagate(a)
            if not ok or self._upper_bound(a, unhit) <= best[0]:
                return
            if unhit.size:
                row = unhit[np.argmin(free_in_I[unhit])]
                els = np.flatnonzero((self.I.view[row] > 0.5) & (a == _FREE))
                for k, e in enumerate(els):
                    b = a.copy()
                    b[els[:k]] = _IN_J
                    b[e] = _IN_E
                    dfs(b)
                return
            rows, free_in_F = self._open_F_rows(a)
            if rows.size:
                row = rows[np.argmin(free_in_F[rows])]
                els = np.flatnonzero((self.Fc.view[row] > 0.5) & (a == _FREE))
                for k, e in enumerate(els):
                    b = a.copy()
                    b[els[:k]] = _IN_E
                    b[e] = _IN_J
                    dfs(b)
                return
            nJ = int(np.count_nonzero(a == _IN_J))
            best[0] = min(self.max_size, nJ + int(np.count_nonzero(a == _FREE)))

        dfs(np.full(self.m, _FREE, dtype=np.int8))
        return None if best[0] < 0 else best[0]

    # -- stage 2: lexicographic scan ---------------------------------------
    def _lex_first(self, target, cursor):
        m = self.m

        def dfs(a, d, tight):
            ok, unhit, _ = self._propagate(a)
            if not ok or self._upper_bound(a, unhit) < target:
                return None
            free = np.flatnonzero(a[d:] == _FREE)
            nxt = d + int(free[0]) if free.size else m
            if tight:
                diff = np.flatnonzero(a[d:nxt] != cursor[d:nxt])
                if diff.size:
                    k = d + int(diff[0])
                    if a[k] < cursor[k]:
                        return None
                    tight = False
            if nxt == m:
                return None if tight else a
            for val in (_IN_J, _IN_E):
                if tight and val < cursor[nxt]:
                    continue
                b = a.copy()
                b[nxt] = val
                r = dfs(b, nxt + 1, tight and val == cursor[nxt])
                if r is not None:
                    return r
            return None

        return dfs(np.full(m, _FREE, dtype=np.int8), 0, cursor is not None)

    def next(self) -> Optional[IndexSet]:
        """Largest uncovered J (lexicographically smallest among ties), or None."""
        if self._cursor is not None:
            a = self._lex_first(self._target, self._cursor)
            if a is not None:
                self._cursor = a
                return IndexSet.from_mask(self.m, a == _IN_J)
        target = self._optimize()
        if target is None:
            self._cursor = None
            return None
        a = self._lex_first(target, None)
        if a is None:
            raise AssertionError("lexicographic scan missed an optimal set")
        self._target, self._cursor = target, a
        return IndexSet.from_mask(self.m, a == _IN_J)


@dataclass
class SeparationInstance:
    m: int
    F: list = field(default_factory=list)
    I: list = field(default_factory=list)


def separate(inst: SeparationInstance, max_size: Optional[int] = None) -> Optional[IndexSet]:
    """Largest J with J inside no F and containing no I; ``None`` iff (F, I) covers.

    Ties on |J| go to the lexicographically smallest set.
    """
    sep = _Separator(inst.m, max_size)
    for F in inst.F:
        sep.add_F(as_index_set(F, inst.m))
    for I in inst.I:
        sep.add_I(as_index_set(I, inst.m))
    return sep.next()


def _full_witness(m, J, v):
    w = np.zeros(m)
    if J is not None and len(J):
        w[J.zero_based()] = v
    return w


def cover_algorithm(A, max_steps: int = DEFAULT_MAX_STEPS, tol_zero: float = TOL_ZERO) -> HoffmanResult:
    """H(A) with a covering certificate.

    Each step takes a largest uncovered ``J`` and either stores it in F (when
    ``A_J x < 0`` is feasible) or stores a minimal infeasible subset of it in
    I.  On termination F and I are exactly the maximal members of S(A) and
    the minimal non-members, and the step count is ``|F| + |I|``.

    Raises :class:`BudgetExceeded` after ``max_steps`` steps; the exception
    carries the partial certificate and the lower bound found so far.
    """
    t0 = time.perf_counter()
    A = as_matrix(A)
    scale(A)
    m, n = A.shape
    sep = _Separator(m)
    F, I, rhos = [], [], []
    H, argmax, best_v = 0.0, None, None
    lp_solves = 0
    steps = 0

    def certificate():
        return CoverCertificate(m, n, tuple(F), tuple(I), H, argmax, tuple(rhos),
                                iterations=steps, lp_solves=lp_solves)

    while True:
        J = sep.next()
        if J is None:
            break
        if steps >= max_steps:
            raise BudgetExceeded(f"cover: step budget {max_steps} exhausted",
                                 lower=H, partial=certificate())
        steps += 1
        out = membership(A, J, tol_zero=tol_zero)
        lp_solves += out.lp_solves
        if out.member:
            F.append(J)
            rhos.append(out.rho)
            sep.add_F(J)
            if 1.0 / out.rho > H:
                H, argmax, best_v = 1.0 / out.rho, J, out.witness
        else:
            I.append(out.support)
            sep.add_I(out.support)

    cert = certificate()
    return HoffmanResult(H, "cover", certificate=cert, witness=_full_witness(m, argmax, best_v),
                         argmax=argmax, iterations=steps, lp_solves=lp_solves,
                         nodes=sep.nodes, wall_time=time.perf_counter() - t0)


class Verification(NamedTuple):
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_certificate(A, cert: CoverCertificate, tol_zero: float = TOL_ZERO) -> Verification:
    """Check a covering certificate without any brute force.

    Checks, in order: every F is in S(A), every I is outside S(A), the pair
    covers ``2^[m]`` (separation finds nothing), and H equals the largest
    ``1/rho_F``.
    """
    A = as_matrix(A)
    m = A.shape[0]
    if cert.m != m or cert.n != A.shape[1]:
        return Verification(False, "dimension mismatch")
    rhos = []
    for J in cert.F:
        if len(J) == 0:
            rhos.append(np.inf)
            continue
        out = membership(A, J, tol_zero=tol_zero)
        if not out.member:
            return Verification(False, "F member not in S(A)")
        rhos.append(out.rho)
    for J in cert.I:
        if len(J) == 0 or membership(A, J, tol_zero=tol_zero).member:
            return Verification(False, "I member in S(A)")
    if separate(SeparationInstance(m, list(cert.F), list(cert.I))) is not None:
        return Verification(False, "covering violated")
    H = max((1.0 / r for r in rhos), default=0.0)
    if abs(cert.H - H) > 1e-9 * max(H, 1e-300) or (H == 0.0 and cert.H != 0.0):
        return Verification(False, "value mismatch")
    if cert.rho_F and (len(cert.rho_F) != len(rhos) or any(
            abs(a - b) > 1e-9 * b for a, b in zip(cert.rho_F, rhos))):
        return Verification(False, "value mismatch")
    return Verification(True, "ok")
