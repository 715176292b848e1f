import itertools

import numpy as np
import pytest

from hoffman import (CoverCertificate, HoffmanResult, IndexSet, ZeroMatrixError,
                     box, scale)
from hoffman.core import as_matrix


def test_scale_identity():
    assert scale(np.eye(2)) == 1.0


def test_scale_max_abs_entry():
    assert scale([[1, -3], [2, 0]]) == 3.0


def test_scale_box():
    assert scale(box(5)) == 1.0


def test_scale_zero_matrix():
    with pytest.raises(ZeroMatrixError):
        scale(np.zeros((2, 3)))


@pytest.mark.parametrize("bad", [np.zeros((0, 2)), np.zeros((2, 2, 2)), [[1.0, np.nan]], [[np.inf]]])
def test_as_matrix_rejects(bad):
    with pytest.raises(ValueError):
        as_matrix(bad)


def test_as_matrix_vector_is_one_row():
    assert as_matrix([1.0, 2.0, 3.0]).shape == (1, 3)


def test_as_matrix_read_only():
    A = as_matrix([[1, 2]])
    with pytest.raises(ValueError):
        A[0, 0] = 5


def test_index_set_basics():
    J = IndexSet(5, [4, 2, 2])
    assert J.members == (2, 4)
    assert list(J) == [2, 4] and len(J) == 2 and 4 in J and 1 not in J
    assert repr(J) == "{2,4}"
    assert list(J.zero_based()) == [1, 3]
    assert J.complement() == IndexSet(5, [1, 3, 5])
    assert IndexSet.from_mask(5, J.mask) == J
    assert IndexSet.from_mask(5, J.to_bool()) == J
    assert IndexSet(0).members == ()


@pytest.mark.parametrize("members", [[0], [6], [-1]])
def test_index_set_range(members):
    with pytest.raises(ValueError):
        IndexSet(5, members)


def test_index_set_immutable():
    J = IndexSet(3, [1])
    with pytest.raises(AttributeError):
        J.m = 4


def test_index_set_lexicographic():
    assert IndexSet(4, [1, 2]) < IndexSet(4, [1, 3]) < IndexSet(4, [2])
    assert IndexSet(4, [1]) < IndexSet(4, [1, 2])


@pytest.mark.parametrize("m", range(0, 7))
def test_index_set_laws_exhaustive(m):
    subsets = [IndexSet.from_mask(m, k) for k in range(1 << m)]
    full = IndexSet.full(m)
    for A in subsets:
        assert A.complement().complement() == A
        assert A.union(A.complement()) == full
        assert len(A.intersection(A.complement())) == 0
    # pairwise laws on a stride to keep m = 6 fast
    for A, B in itertools.product(subsets[::3], subsets[::2]):
        assert A.union(B) == B.union(A)
        assert A.intersection(B) == B.intersection(A)
        assert A.issubset(A.union(B)) and A.intersection(B).issubset(A)
        assert A.union(B).complement() == A.complement().intersection(B.complement())
        assert A.issubset(B) == (A.union(B) == B) == B.issuperset(A)
        assert A.difference(B) == A.intersection(B.complement())
        assert (A == B) == (A.mask == B.mask)


def test_hoffman_result_validation():
    with pytest.raises(ValueError):
        HoffmanResult(-1.0, "cover")
    with pytest.raises(ValueError):
        HoffmanResult(1.0, "simplex-magic")
    r = HoffmanResult(2.0, "lpcc")
    assert r.norms == {"domain": "l1", "codomain": "linf"}


def test_certificate_is_frozen():
    c = CoverCertificate(1, 1, (), (), 0.0, None, ())
    with pytest.raises(Exception):
        c.H = 3.0
