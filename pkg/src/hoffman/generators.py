"""Structured test matrices and reproducible random instances."""
from __future__ import annotations

import itertools

import numpy as np

from .core import TooLargeError


def box(n: int) -> np.ndarray:
    """``[I_n; -I_n]``: the box ``-1 <= x <= 1`` written as ``Ax <= b``."""
    if n < 1:
        raise ValueError("n must be positive")
    I = np.eye(n)
    return np.vstack([I, -I])


def simplex(n: int) -> np.ndarray:
    """``[I_n; -1^T]``."""
    if n < 1:
        raise ValueError("n must be positive")
    return np.vstack([np.eye(n), -np.ones((1, n))])


def l1ball(n: int) -> np.ndarray:
    """All ``2**n`` sign vectors, lexicographic with -1 before +1."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > 20:
        raise TooLargeError("l1ball is limited to n <= 20")
    return np.array(list(itertools.product((-1.0, 1.0), repeat=n)))


_SPAN = 5  # values -2..2
_LIMIT = (1 << 64) - ((1 << 64) % _SPAN)


def random_instance(m: int, n: int, seed: int) -> np.ndarray:
    """m x n matrix with entries uniform on {-2, ..., 2}.

    Draws come from the raw 64-bit output of PCG64 (O'Neill's permuted
    congruential generator, 128-bit state) seeded with ``seed``, mapped to
    the five values by rejection sampling.  Only the bit stream is used, so
    results do not depend on numpy's higher-level sampling routines.  An
    all-zero draw is discarded and redrawn from the same stream.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    bitgen = np.random.PCG64(seed)
    while True:
        vals = []
        while len(vals) < m * n:
            for r in bitgen.random_raw(m * n - len(vals) + 4).tolist():
                if r < _LIMIT:
                    vals.append(r % _SPAN - 2)
        A = np.array(vals[:m * n], dtype=float).reshape(m, n)
        if np.any(A != 0):
            return A


def strictly_feasible_instance(m: int, n: int, seed: int) -> np.ndarray:
    """Random instance for which ``Ax < 0`` is feasible.

    Draws ``A`` and an integer direction ``d`` and flips the sign of every
    row with ``A_i d > 0``; rows orthogonal to ``d`` are redrawn.
    """
    k = 0
    while True:
        A = random_instance(m, n, seed * 7919 + k)
        d = random_instance(n, 1, seed * 7919 + k + 1).ravel()
        k += 2
        s = A @ d
        if np.all(s != 0):
            return A * np.where(s > 0, -1.0, 1.0)[:, None]
