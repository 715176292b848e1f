"""Shared types, tolerances and error classes.

Norms are fixed: l1 on the domain (x-space) and l-infinity on the residual
space, so the dual norms are l-infinity on ``A^T v`` and l1 on ``v``.  Every
subproblem under this pair is a linear program.

Row indices exposed by the public API are 1-based, matching ``[m] = {1..m}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

#: relative threshold below which rho_J is declared zero (times scale(A))
TOL_ZERO = 1e-7
#: relative LP feasibility tolerance (times 1 + scale(A))
TOL_FEAS = 1e-9

NORMS = {"domain": "l1", "codomain": "linf"}

METHODS = ("cover", "lpcc", "enum", "bruteforce", "fastpath", "relative-cone")


class HoffmanError(Exception):
    """Base class for all errors raised by this package."""


class ZeroMatrixError(HoffmanError):
    pass


class EmptySetError(HoffmanError):
    pass


class InvalidWitnessError(HoffmanError):
    pass


class TooLargeError(HoffmanError):
    pass


class EmptyPolyhedronError(HoffmanError):
    pass


class PreconditionFailed(HoffmanError):
    pass


class NumericalFailure(HoffmanError):
    pass


class BudgetExceeded(HoffmanError):
    """Raised when an iteration, node or enumeration budget runs out.

    ``lower`` and ``upper`` bracket H(A) as far as the search got;
    ``partial`` holds whatever certificate was built so far.
    """

    def __init__(self, message, lower=0.0, upper=float("inf"), partial=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.partial = partial


def as_matrix(A) -> np.ndarray:
    """Validate and copy ``A`` into a 2-d float array with finite entries."""
    M = np.array(A, dtype=float)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise ValueError(f"expected a nonempty 2-d matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    M.setflags(write=False)
    return M


def scale(A) -> float:
    """Largest absolute entry of ``A``; the anchor for all relative tolerances."""
    s = float(np.max(np.abs(np.asarray(A, dtype=float))))
    if s == 0.0:
        raise ZeroMatrixError("A is the zero matrix")
    return s


class IndexSet:
    """Immutable subset of ``{1, ..., m}``.

    Members are stored sorted and 1-based.  Equality, hashing and ordering
    only look at the members; ordering is lexicographic on the sorted tuple.
    """

    __slots__ = ("m", "members", "_mask")

    def __init__(self, m: int, members: Iterable[int] = ()):
        members = tuple(sorted({int(i) for i in members}))
        if m < 0:
            raise ValueError("universe size must be nonnegative")
        if members and (members[0] < 1 or members[-1] > m):
            raise ValueError(f"indices {members} outside 1..{m}")
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "members", members)
        mask = 0
        for i in members:
            mask |= 1 << (i - 1)
        object.__setattr__(self, "_mask", mask)

    def __setattr__(self, key, value):
        raise AttributeError("IndexSet is immutable")

    @classmethod
    def full(cls, m: int) -> "IndexSet":
        return cls(m, range(1, m + 1))

    @classmethod
    def from_mask(cls, m: int, mask) -> "IndexSet":
        """Build from a boolean vector (0-based positions) or an int bitmask."""
        if isinstance(mask, (int, np.integer)):
            mask = int(mask)
            return cls(m, (i + 1 for i in range(m) if mask >> i & 1))
        return cls(m, (int(i) + 1 for i in np.flatnonzero(mask)))

    @property
    def mask(self) -> int:
        return self._mask

    def zero_based(self) -> np.ndarray:
        return np.array(self.members, dtype=int) - 1

    def to_bool(self) -> np.ndarray:
        out = np.zeros(self.m, dtype=bool)
        out[self.zero_based()] = True
        return out

    def complement(self) -> "IndexSet":
        return IndexSet(self.m, (i for i in range(1, self.m + 1) if not self._mask >> (i - 1) & 1))

    def union(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(max(self.m, other.m), self.members + other.members)

    def intersection(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.m, (i for i in self.members if other._mask >> (i - 1) & 1))

    def difference(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.m, (i for i in self.members if not other._mask >> (i - 1) & 1))

    def issubset(self, other: "IndexSet") -> bool:
        return self._mask & ~other._mask == 0

    def issuperset(self, other: "IndexSet") -> bool:
        return other.issubset(self)

    def __lt__(self, other):
        # lexicographic, so sorted() gives a deterministic order
        return self.members < other.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, i):
        return 1 <= i <= self.m and bool(self._mask >> (i - 1) & 1)

    def __eq__(self, other):
        if isinstance(other, IndexSet):
            return self.members == other.members
        return NotImplemented

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return "{" + ",".join(map(str, self.members)) + "}"


def as_index_set(J, m: int) -> IndexSet:
    if isinstance(J, IndexSet):
        if J.m != m:
            return IndexSet(m, J.members)
        return J
    return IndexSet(m, J)


@dataclass(frozen=True)
class Membership:
    """Outcome of testing ``J in S(A)``.

    When ``member`` is true, ``rho > 0`` and ``witness`` attains it.  Otherwise
    ``support`` is an inclusion-minimal set carrying a simplex vector with
    ``A_support^T w = 0``; ``witness`` is that vector, indexed like ``support``.
    """

    J: IndexSet
    member: bool
    rho: float
    witness: np.ndarray
    support: Optional[IndexSet] = None
    lp_solves: int = 1


@dataclass(frozen=True)
class CoverCertificate:
    """Covering pair (F, I) together with the value it certifies."""

    m: int
    n: int
    F: tuple
    I: tuple
    H: float
    argmax: Optional[IndexSet]
    rho_F: tuple
    iterations: int = 0
    lp_solves: int = 0
    method: str = "cover"


@dataclass
class HoffmanResult:
    value: float
    method: str
    certificate: Optional[CoverCertificate] = None
    witness: Optional[np.ndarray] = None
    argmax: Optional[IndexSet] = None
    iterations: int = 0
    lp_solves: int = 0
    nodes: int = 0
    wall_time: float = 0.0
    norms: dict = field(default_factory=lambda: dict(NORMS))
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if not self.value >= 0:
            raise ValueError("Hoffman constant must be nonnegative")


def index_sets(m: int, sets: Sequence) -> tuple:
    return tuple(as_index_set(S, m) for S in sets)
