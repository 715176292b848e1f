"""Dense two-phase primal simplex for the small LPs issued by the algorithms.

Problems are stated as::

    minimize    c^T x
    subject to  A_i x  (<=, =, >=)  b_i      for each row i
                lb <= x <= ub                (infinite bounds allowed)

Dual sign convention: ``y`` has one multiplier per row such that the reduced
costs are ``d = c - A^T y``.  In a minimization ``y_i <= 0`` for ``<=`` rows,
``y_i >= 0`` for ``>=`` rows and ``y_i`` is free for ``=`` rows.  The dual
objective is ``b^T y + sum_j (d_j * lb_j if d_j > 0 else d_j * ub_j)``; see
:func:`dual_objective`.

Pricing is Dantzig's rule with ties on the smallest column.  After
``2 * (rows + cols)`` consecutive degenerate pivots the solver switches to
Bland's rule until a pivot makes progress again.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import NumericalFailure

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_SENSES = {"<=": -1, "=": 0, "==": 0, ">=": 1}


@dataclass
class LpProblem:
    c: np.ndarray
    A: np.ndarray
    senses: Sequence[str]
    b: np.ndarray
    lb: np.ndarray = None
    ub: np.ndarray = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float).ravel()
        n = self.c.size
        self.A = np.asarray(self.A, dtype=float).reshape(-1, n)
        m = self.A.shape[0]
        self.b = np.asarray(self.b, dtype=float).ravel()
        self.senses = tuple(self.senses)
        if self.b.size != m or len(self.senses) != m:
            raise ValueError("rows of A, b and senses disagree")
        bad = [s for s in self.senses if s not in _SENSES]
        if bad:
            raise ValueError(f"unknown row senses {bad}")
        self.lb = np.zeros(n) if self.lb is None else np.asarray(self.lb, dtype=float).ravel()
        self.ub = np.full(n, np.inf) if self.ub is None else np.asarray(self.ub, dtype=float).ravel()
        if self.lb.size != n or self.ub.size != n:
            raise ValueError("bound vectors have the wrong length")
        for arr in (self.c, self.A, self.b):
            if not np.all(np.isfinite(arr)):
                raise ValueError("LP data must be finite")
        if np.any(self.lb == np.inf) or np.any(self.ub == -np.inf) or np.any(self.lb > self.ub):
            raise ValueError("inconsistent variable bounds")

    @property
    def shape(self):
        return self.A.shape


@dataclass
class LpSolution:
    status: str
    x: np.ndarray = None
    y: np.ndarray = None
    objective: float = float("nan")
    iterations: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def dual_objective(p: LpProblem, y: np.ndarray, tol=1e-9) -> float:
    """Lagrangian dual value of ``y``; equals the optimum at a dual-optimal ``y``.

    Reduced costs within ``tol`` of zero are treated as zero.
    """
    d = p.c - p.A.T @ y
    val = float(p.b @ y)
    for dj, lj, uj in zip(d, p.lb, p.ub):
        if abs(dj) <= tol:
            continue
        if dj > 0:
            val += dj * lj
        elif dj < 0:
            val += dj * uj
    return val


class SimplexSolver:
    """Holds the tableau workspace; one solve per instance at a time."""

    def __init__(self, tol=1e-9, pivot_tol=1e-9):
        self.tol = tol
        self.pivot_tol = pivot_tol
        self.T = None
        self.basis = None

    # -- standard form -------------------------------------------------
    def _standardize(self, p: LpProblem):
        m, n = p.A.shape
        x0 = np.zeros(n)
        cols = []  # (orig index, sign)
        upper_rows = []  # (std column, bound)
        for j in range(n):
            lj, uj = p.lb[j], p.ub[j]
            if np.isfinite(lj) and lj == uj:
                x0[j] = lj
            elif np.isfinite(lj):
                x0[j] = lj
                cols.append((j, 1.0))
                if np.isfinite(uj):
                    upper_rows.append((len(cols) - 1, uj - lj))
            elif np.isfinite(uj):
                x0[j] = uj
                cols.append((j, -1.0))
            else:
                cols.append((j, 1.0))
                cols.append((j, -1.0))
        nx = len(cols)
        idx = np.array([j for j, _ in cols], dtype=int)
        sgn = np.array([s for _, s in cols])
        rhs = p.b - p.A @ x0
        flip = np.ones(m)
        kinds = np.array([_SENSES[s] for s in p.senses])
        flip[kinds == 1] = -1.0
        rows = (p.A[:, idx] * sgn) if nx else np.zeros((m, 0))
        rows = rows * flip[:, None]
        rhs = rhs * flip
        ineq = kinds != 0
        nslack = int(ineq.sum()) + len(upper_rows)
        mt = m + len(upper_rows)
        S = np.zeros((mt, nx + nslack))
        S[:m, :nx] = rows
        b = np.zeros(mt)
        b[:m] = rhs
        slack_of_row = -np.ones(mt, dtype=int)
        k = nx
        for i in np.flatnonzero(ineq):
            S[i, k] = 1.0
            slack_of_row[i] = k
            k += 1
        for r, (jc, bound) in enumerate(upper_rows):
            S[m + r, jc] = 1.0
            S[m + r, k] = 1.0
            b[m + r] = bound
            slack_of_row[m + r] = k
            k += 1
        neg = b < 0
        S[neg] *= -1.0
        b[neg] *= -1.0
        flip[neg[:m]] *= -1.0
        cstd = np.zeros(nx + nslack)
        cstd[:nx] = p.c[idx] * sgn
        const = float(p.c @ x0)
        return dict(S=S, b=b, c=cstd, const=const, idx=idx, sgn=sgn, x0=x0,
                    flip=flip, m=m, nx=nx, neg=neg, slack_of_row=slack_of_row)

    # -- pivoting --------------------------------------------------------
    def _pivot(self, r, e):
        T = self.T
        T[r] /= T[r, e]
        col = T[:, e].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        T[:, e] = 0.0
        T[r, e] = 1.0
        self.basis[r] = e

    def _iterate(self, ncols, scale, max_iter, phase_one):
        T = self.T
        mrows = T.shape[0] - 1
        degenerate_run = 0
        bland = False
        bland_after = 2 * (mrows + ncols)
        tol_d = self.tol * scale
        for _ in range(max_iter):
            d = T[-1, :ncols]
            cand = d < -tol_d
            if not cand.any():
                return OPTIMAL
            if bland:
                e = int(np.argmax(cand))
            else:
                e = int(np.argmin(np.where(cand, d, np.inf)))
            col = T[:-1, e]
            pos = col > self.pivot_tol
            if not pos.any():
                if np.any(col > 1e-12 * scale):
                    raise NumericalFailure("no pivot above threshold in entering column")
                if phase_one:
                    raise NumericalFailure("phase one reported unbounded")
                return UNBOUNDED
            rhs = T[:-1, -1]
            ratios = np.full(mrows, np.inf)
            ratios[pos] = np.maximum(rhs[pos], 0.0) / col[pos]
            rmin = ratios.min()
            ties = np.flatnonzero(ratios <= rmin + 1e-12 * (1.0 + abs(rmin)))
            if bland:
                r = int(ties[np.argmin(np.asarray(self.basis)[ties])])
            else:
                r = int(ties[0])
            self.iterations += 1
            if rmin <= self.tol:
                degenerate_run += 1
                if degenerate_run >= bland_after:
                    bland = True
            else:
                degenerate_run = 0
                bland = False
            self._pivot(r, e)
            np.maximum(T[:-1, -1], 0.0, out=T[:-1, -1], where=T[:-1, -1] > -self.tol)
        raise NumericalFailure(f"simplex exceeded {max_iter} pivots")

    # -- driver ----------------------------------------------------------
    def solve(self, p: LpProblem) -> LpSolution:
        std = self._standardize(p)
        S, b, c = std["S"], std["b"], std["c"]
        mt, nt = S.shape
        scale = max(1.0, float(np.max(np.abs(S))) if S.size else 1.0)
        self.iterations = 0
        max_iter = max(1000, 10 * (mt + nt) ** 2)

        # rows whose slack can start in the basis
        slack = std["slack_of_row"]
        need_art = np.ones(mt, dtype=bool)
        for i in range(mt):
            k = slack[i]
            if k >= 0 and S[i, k] > 0:
                need_art[i] = False
        arts = np.flatnonzero(need_art)
        na = arts.size
        T = np.zeros((mt + 1, nt + na + 1))
        T[:mt, :nt] = S
        T[:mt, -1] = b
        basis = [int(slack[i]) if not need_art[i] else -1 for i in range(mt)]
        for a, i in enumerate(arts):
            T[i, nt + a] = 1.0
            basis[i] = nt + a
        self.T, self.basis = T, basis

        keep = np.ones(mt, dtype=bool)
        if na:
            T[-1, :] = 0.0
            T[-1, nt:nt + na] = 1.0
            T[-1] -= T[arts].sum(axis=0)
            self._iterate(nt + na, scale, max_iter, phase_one=True)
            T = self.T
            infeas = -T[-1, -1]
            if infeas > 1e-9 * (1.0 + float(np.max(np.abs(b), initial=0.0))):
                return LpSolution(INFEASIBLE, iterations=self.iterations)
            for r in range(mt):
                if self.basis[r] >= nt:
                    row = T[r, :nt]
                    js = np.flatnonzero(np.abs(row) > self.pivot_tol)
                    if js.size:
                        self._pivot(r, int(js[np.argmax(np.abs(row[js]))]))
                    else:
                        keep[r] = False
            T = self.T
            rows = np.flatnonzero(keep)
            self.T = np.vstack([T[rows][:, list(range(nt)) + [-1]], np.zeros((1, nt + 1))])
            self.basis = [self.basis[r] for r in rows]
        T = self.T
        T[-1, :nt] = c
        T[-1, -1] = 0.0
        for r, j in enumerate(self.basis):
            if c[j] != 0.0:
                T[-1] -= c[j] * T[r]
        status = self._iterate(nt, scale, max_iter, phase_one=False)
        if status == UNBOUNDED:
            return LpSolution(UNBOUNDED, iterations=self.iterations)

        rows = np.flatnonzero(keep)
        bas = np.array(self.basis, dtype=int)
        xs = np.zeros(nt)
        ys = np.zeros(mt)
        B = S[np.ix_(rows, bas)]
        try:
            xb = np.linalg.solve(B, b[rows])
            yk = np.linalg.solve(B.T, c[bas])
        except np.linalg.LinAlgError:
            xb = self.T[:-1, -1].copy()
            yk = np.linalg.lstsq(B.T, c[bas], rcond=None)[0]
        xs[bas] = xb
        ys[rows] = yk

        m = std["m"]
        x = std["x0"].copy()
        np.add.at(x, std["idx"], std["sgn"] * xs[:std["nx"]])
        y = std["flip"] * ys[:m]
        obj = float(p.c @ x)
        return LpSolution(OPTIMAL, x=x, y=y, objective=obj, iterations=self.iterations)


def solve(p: LpProblem) -> LpSolution:
    """Solve ``p`` with a fresh :class:`SimplexSolver`."""
    return SimplexSolver().solve(p)
