import numpy as np
import pytest

from hoffman import (BnbNode, BudgetExceeded, IndexSet, box, brute_force, l1ball,
                     lpcc_solve, node_relaxation, random_instance)
from hoffman.lpcc import root_node

from conftest import rel_close


def test_root_single_row():
    sol = node_relaxation([[1.0]], root_node(1))
    assert sol.objective == pytest.approx(1.0)


def test_root_symmetric_pair_relaxed():
    assert node_relaxation([[1.0], [-1.0]], root_node(2)).objective == pytest.approx(0.0, abs=1e-12)


def test_fixed_v_forces_value():
    node = BnbNode(IndexSet(2), IndexSet(2, [2]))
    assert node_relaxation([[1.0], [-1.0]], node).objective == pytest.approx(1.0)


def test_infeasible_fixing():
    # s_1 = s_2 = 0 forces x <= -1 and -x <= -1
    node = BnbNode(IndexSet(2, [1, 2]), IndexSet(2))
    assert not node_relaxation([[1.0], [-1.0]], node).optimal


def test_node_disjoint():
    with pytest.raises(ValueError):
        BnbNode(IndexSet(2, [1]), IndexSet(2, [1]))


def test_box2():
    assert lpcc_solve(box(2)).value == pytest.approx(2.0)


def test_single_entry():
    assert lpcc_solve([[1.0]]).value == pytest.approx(1.0)


def test_l1ball3():
    assert lpcc_solve(l1ball(3)).value == pytest.approx(3.0)


@pytest.mark.parametrize("seed", range(20))
def test_matches_brute_force(seed):
    A = random_instance(3 + seed % 6, 1 + seed % 4, 1000 + seed)
    assert rel_close(lpcc_solve(A).value, brute_force(A).value, 1e-7)


def test_incumbents_complementary():
    A = random_instance(8, 3, 77)
    res = lpcc_solve(A)
    scale = np.max(np.abs(A))
    assert res.extra["incumbents"]
    for t, viol in res.extra["incumbents"]:
        assert viol <= 1e-7 * (1 + scale)
    ts = [t for t, _ in res.extra["incumbents"]]
    assert ts == sorted(ts, reverse=True)
    assert res.nodes >= 1


def test_argmax_attains_value():
    from hoffman import rho
    A = random_instance(7, 3, 12)
    res = lpcc_solve(A)
    r, _ = rho(A, res.argmax)
    assert rel_close(1 / r, res.value, 1e-7)


def test_budget():
    with pytest.raises(BudgetExceeded) as info:
        lpcc_solve(box(5), node_budget=3)
    assert info.value.lower <= 5 + 1e-9 <= info.value.upper + 1e-9
