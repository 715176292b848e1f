import itertools

import numpy as np
import pytest

from hoffman import (BudgetExceeded, EmptyPolyhedronError, EmptySetError, IndexSet,
                     InvalidWitnessError, bound_check, distance_to_polyhedron,
                     fast_path, hj_primal, membership, minimal_support,
                     random_instance, residual, rho, simplex)
from hoffman.lp import LpProblem, solve

from conftest import rel_close


def test_rho_symmetric_pair_is_zero():
    r, v = rho([[1.0], [-1.0]], IndexSet(2, [1, 2]))
    assert r == pytest.approx(0.0, abs=1e-12)
    assert v == pytest.approx([0.5, 0.5])


def test_rho_identity():
    r, v = rho(np.eye(2), [1, 2])
    assert r == pytest.approx(0.5)
    assert v == pytest.approx([0.5, 0.5])


def test_rho_single_row():
    r, v = rho([[2.0]], [1])
    assert r == pytest.approx(2.0) and v == pytest.approx([1.0])


def test_rho_empty():
    with pytest.raises(EmptySetError):
        rho(np.eye(2), [])


def test_membership_pair_not_in_s():
    out = membership([[1.0], [-1.0]], [1, 2])
    assert not out.member and out.support == IndexSet(2, [1, 2])


def test_membership_single_row():
    out = membership([[1.0], [-1.0]], [1])
    assert out.member and out.rho == pytest.approx(1.0)


def test_membership_zero_row():
    out = membership([[0.0], [1.0]], [1])
    assert not out.member and out.support == IndexSet(2, [1])


def test_membership_witness_invariants():
    A = random_instance(6, 3, 4)
    for k in range(1, 1 << 6):
        J = IndexSet.from_mask(6, k)
        out = membership(A, J)
        if out.member:
            assert np.max(np.abs(A[J.zero_based()].T @ out.witness)) == pytest.approx(out.rho)
        else:
            w = out.witness
            assert np.all(w >= -1e-12) and w.sum() == pytest.approx(1.0)
            assert np.max(np.abs(A[out.support.zero_based()].T @ w)) <= 1e-7 * 2
            assert out.support.issubset(J)


def test_minimal_support_tie_lexicographic():
    I, w, _ = minimal_support([[1.0], [-1.0], [1.0]], [0.25, 0.5, 0.25], [1, 2, 3])
    assert I == IndexSet(3, [1, 2])


def test_minimal_support_zero_row():
    I, _, _ = minimal_support([[0.0], [1.0]], [1.0, 0.0], [1, 2])
    assert I == IndexSet(2, [1])


def test_minimal_support_pair():
    I, _, _ = minimal_support([[1.0], [-1.0]], [0.5, 0.5], [1, 2])
    assert I == IndexSet(2, [1, 2])


@pytest.mark.parametrize("v", [[0.5, 0.6], [-0.5, 1.5], [1.0]])
def test_minimal_support_bad_witness(v):
    with pytest.raises(InvalidWitnessError):
        minimal_support([[1.0], [-1.0]], v, [1, 2])


def test_minimal_support_not_null():
    with pytest.raises(InvalidWitnessError):
        minimal_support([[1.0], [-1.0]], [1.0, 0.0], [1, 2])


def test_minimal_support_fixed_point():
    for seed in range(8):
        A = random_instance(6, 2, seed)
        for k in range(1, 1 << 6):
            out = membership(A, IndexSet.from_mask(6, k))
            if out.member:
                continue
            I = out.support
            for i in I:
                rest = I.difference(IndexSet(6, [i]))
                if len(rest):
                    assert membership(A, rest).member


def _lp_feasible_strict(A, J):
    rows = J.zero_based()
    n = A.shape[1]
    sol = solve(LpProblem(np.zeros(n), A[rows], ["<="] * len(rows), -np.ones(len(rows)),
                          np.full(n, -np.inf), np.full(n, np.inf)))
    return sol.optimal


def test_gordan_consistency():
    for seed in range(10):
        m = 3 + seed % 4
        A = random_instance(m, 1 + seed % 3, 100 + seed)
        for k in range(1, 1 << m):
            J = IndexSet.from_mask(m, k)
            assert membership(A, J).member == _lp_feasible_strict(A, J)


@pytest.mark.parametrize("c", [0.5, 3.0])
def test_rho_positive_homogeneity(c):
    A = random_instance(6, 3, 2)
    for k in range(1, 1 << 6, 5):
        J = IndexSet.from_mask(6, k)
        r, _ = rho(A, J)
        rc, _ = rho(c * A, J)
        assert abs(rc - c * r) <= 1e-9 * max(c * r, 1e-12)


def test_monotone_in_j():
    A = random_instance(6, 3, 9)
    H = {}
    for k in range(1, 1 << 6):
        out = membership(A, IndexSet.from_mask(6, k))
        if out.member:
            H[k] = 1 / out.rho
    for a, b in itertools.product(H, H):
        if a & b == a:
            assert H[a] <= H[b] + 1e-9


def test_fast_path_identity():
    assert fast_path(np.eye(2)).value == pytest.approx(2.0)


def test_fast_path_column():
    res = fast_path([[1.0], [2.0]])
    assert res.value == pytest.approx(1.0) and res.method == "fastpath"


def test_fast_path_none():
    assert fast_path([[1.0], [-1.0]]) is None


def test_hj_primal_examples():
    assert hj_primal([[1.0], [-1.0]], [1]) == pytest.approx(1.0)
    assert hj_primal(simplex(2), [1, 3]) == pytest.approx(3.0)
    assert hj_primal(simplex(2), []) == 0.0


def test_hj_primal_budget():
    with pytest.raises(BudgetExceeded):
        hj_primal(np.eye(17), range(1, 18))


def test_hj_duality_random():
    rng = np.random.default_rng(1)
    checked = 0
    for seed in range(40):
        A = random_instance(6, 3, 300 + seed)
        k = int(rng.integers(1, 1 << 6))
        J = IndexSet.from_mask(6, k)
        if len(J) > 5:
            continue
        out = membership(A, J)
        if out.member:
            assert rel_close(hj_primal(A, J), 1 / out.rho, 1e-7)
            checked += 1
    assert checked >= 10


def test_distance_examples():
    assert distance_to_polyhedron(np.eye(2), [0, 0], [1, 1]) == pytest.approx(2.0)
    assert distance_to_polyhedron([[1.0]], [-1.0], [0.0]) == pytest.approx(1.0)
    with pytest.raises(EmptyPolyhedronError):
        distance_to_polyhedron([[1.0], [-1.0]], [-1.0, -1.0], [0.0])


def test_residual():
    assert residual(np.eye(2), [0, 0], [1, -1]) == 1.0
    assert residual(np.eye(2), [0, 0], [-1, -1]) == 0.0


def test_bound_check_examples():
    assert bound_check([[1.0]], [-1.0], [0.0], 1.0)
    assert bound_check(np.eye(2), [0, 0], [1, 1], 2.0)
    assert not bound_check([[1.0]], [-1.0], [0.0], 0.5)
