"""1/H(A) as a linear program with complementarity constraints, solved by
branch and bound on the pairs ``s_i * v_i = 0``::

    min t  s.t.  -t 1 <= A^T v <= t 1,  A x - s <= -1,  1^T v = 1,
                 s >= 0, v >= 0,  s_i v_i = 0 for all i.

A node fixes ``s_i = 0`` for ``i`` in ``Zs`` and ``v_i = 0`` for ``i`` in
``Zv`` and drops the remaining complementarity conditions.
"""
from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass

import numpy as np

from .core import (BudgetExceeded, HoffmanResult, IndexSet, NumericalFailure,
                   as_matrix, scale)
from .lp import INFEASIBLE, OPTIMAL, LpProblem, LpSolution, SimplexSolver

DEFAULT_NODE_BUDGET = 100000


@dataclass(frozen=True)
class BnbNode:
    Zs: IndexSet
    Zv: IndexSet
    lower_bound: float = 0.0
    depth: int = 0

    def __post_init__(self):
        if self.Zs.mask & self.Zv.mask:
            raise ValueError("an index cannot fix both s and v")


def root_node(m: int) -> BnbNode:
    return BnbNode(IndexSet(m), IndexSet(m))


def _split(sol: LpSolution, m: int, n: int):
    """(t, x, s, v) views of a node LP solution."""
    z = sol.x
    return z[0], z[1:1 + n], z[1 + n:1 + n + m], z[1 + n + m:]


def node_relaxation(A, node: BnbNode) -> LpSolution:
    """LP relaxation at ``node``; variables are ordered (t, x, s, v)."""
    A = as_matrix(A)
    m, n = A.shape
    N = 1 + n + 2 * m
    G = np.zeros((2 * n + m + 1, N))
    h = np.zeros(2 * n + m + 1)
    vs = slice(1 + n + m, N)
    G[:n, 0] = -1.0
    G[:n, vs] = A.T
    G[n:2 * n, 0] = -1.0
    G[n:2 * n, vs] = -A.T
    G[2 * n:2 * n + m, 1:1 + n] = A
    G[2 * n:2 * n + m, 1 + n:1 + n + m] = -np.eye(m)
    h[2 * n:2 * n + m] = -1.0
    G[-1, vs] = 1.0
    h[-1] = 1.0
    c = np.zeros(N)
    c[0] = 1.0
    lb = np.zeros(N)
    lb[1:1 + n] = -np.inf
    ub = np.full(N, np.inf)
    for i in node.Zs.zero_based():
        ub[1 + n + i] = 0.0
    for i in node.Zv.zero_based():
        ub[1 + n + m + i] = 0.0
    senses = ["<="] * (2 * n + m) + ["="]
    return SimplexSolver().solve(LpProblem(c, G, senses, h, lb, ub))


def lpcc_solve(A, node_budget: int = DEFAULT_NODE_BUDGET) -> HoffmanResult:
    """H(A) = 1/t* by best-first branch and bound over complementarity pairs.

    Branches on the index with the largest ``min(s_i, v_i)``: one child fixes
    ``s_i = 0``, the other ``v_i = 0``.  A relaxation whose complementarity
    violation is within ``1e-7 * (1 + scale)`` is turned into an exactly
    complementary point by fixing every pair and re-solving; that leaf value
    is the incumbent.  Nodes are processed by lower bound, then deeper first,
    then creation order.
    """
    t0 = time.perf_counter()
    A = as_matrix(A)
    m, n = A.shape
    sc = scale(A)
    comp_tol = 1e-7 * (1.0 + sc)
    counter = itertools.count()

    incumbent = np.inf
    inc_v = None
    inc_J = None
    incumbents = []  # (t, complementarity violation) history
    nodes = 0
    lp_solves = 0

    def evaluate(node):
        nonlocal lp_solves
        lp_solves += 1
        sol = node_relaxation(A, node)
        if sol.status == INFEASIBLE:
            return None
        if sol.status != OPTIMAL:
            raise NumericalFailure(f"node relaxation returned {sol.status}")
        return sol

    def try_leaf(node, s, v):
        """Fix every pair according to ``s <= v`` and solve the resulting LP."""
        nonlocal incumbent, inc_v, inc_J
        zs = set(node.Zs) | {i + 1 for i in range(m)
                             if (i + 1) not in node.Zv and s[i] <= max(v[i], comp_tol)}
        leaf = BnbNode(IndexSet(m, zs), IndexSet(m, set(range(1, m + 1)) - zs),
                       node.lower_bound, node.depth + 1)
        sol = evaluate(leaf)
        if sol is None:
            return None
        t, _, ls, lv = _split(sol, m, n)
        t = float(np.max(np.abs(A.T @ lv)))
        viol = float(np.max(np.minimum(ls, lv)))
        if t < incumbent:
            incumbent, inc_v, inc_J = t, lv.copy(), leaf.Zs
            incumbents.append((t, viol))
        return t

    root = root_node(m)
    sol = evaluate(root)
    if sol is None:
        raise NumericalFailure("root relaxation infeasible")
    heap = [(sol.objective, 0, next(counter), root, sol)]
    lower = sol.objective
    while heap:
        bound, negdepth, _, node, sol = heapq.heappop(heap)
        lower = bound
        if bound >= incumbent - 1e-9:
            break
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"lpcc: node budget {node_budget} exhausted",
                                 lower=1.0 / incumbent if incumbent < np.inf else 0.0,
                                 upper=1.0 / bound if bound > 0 else np.inf)
        t, _, s, v = _split(sol, m, n)
        comp = np.minimum(s, v)
        worst = int(np.argmax(comp))
        if comp[worst] <= comp_tol:
            leaf_t = try_leaf(node, s, v)
            if leaf_t is not None and leaf_t <= bound + 1e-9 * (1.0 + bound):
                continue
            if comp[worst] <= 0.0:
                continue
        i = worst + 1
        for child in (BnbNode(node.Zs.union(IndexSet(m, [i])), node.Zv, bound, node.depth + 1),
                      BnbNode(node.Zs, node.Zv.union(IndexSet(m, [i])), bound, node.depth + 1)):
            csol = evaluate(child)
            if csol is None:
                continue
            cb = max(csol.objective, 0.0)
            if cb < bound - 1e-7 * (1.0 + bound):
                raise NumericalFailure(f"child bound {cb} below parent bound {bound}")
            cb = max(cb, bound)
            if cb < incumbent - 1e-9:
                child = BnbNode(child.Zs, child.Zv, cb, child.depth)
                heapq.heappush(heap, (cb, -child.depth, next(counter), child, csol))

    if not np.isfinite(incumbent) or incumbent <= 0:
        raise NumericalFailure("branch and bound ended without a positive incumbent")
    w = np.zeros(m)
    w[:] = inc_v
    return HoffmanResult(1.0 / incumbent, "lpcc", witness=w, argmax=inc_J,
                         iterations=nodes, lp_solves=lp_solves, nodes=nodes,
                         wall_time=time.perf_counter() - t0,
                         extra={"incumbents": incumbents, "lower_bound": lower,
                                "t": incumbent})
