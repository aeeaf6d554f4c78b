import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from schemelab.exceptions import CapExceededError, GroupError, NotASubgroupError
from schemelab.groups import FiniteAbelianGroup, Subgroup, dual_subgroup

orders_st = st.lists(st.integers(2, 6), min_size=1, max_size=3)


@given(orders_st, st.data())
def test_index_coords_roundtrip(orders, data):
    X = FiniteAbelianGroup(orders)
    i = data.draw(st.integers(0, X.size - 1))
    assert X.index(X.coords(i)) == i


@given(orders_st, st.data())
def test_group_laws(orders, data):
    X = FiniteAbelianGroup(orders)
    a, b, c = (data.draw(st.integers(0, X.size - 1)) for _ in range(3))
    assert X.add(a, b) == X.add(b, a)
    assert X.add(X.add(a, b), c) == X.add(a, X.add(b, c))
    assert X.add(a, X.neg(a)) == 0
    assert X.sub(X.add(a, b), b) == a


@given(orders_st, st.data())
def test_pairing_is_a_bicharacter(orders, data):
    X = FiniteAbelianGroup(orders)
    a, b, y = (data.draw(st.integers(0, X.size - 1)) for _ in range(3))
    assert np.isclose(X.pairing(X.add(a, b), y), X.pairing(a, y) * X.pairing(b, y))
    assert np.isclose(X.pairing(a, y), X.pairing(y, a))


def test_character_orthogonality():
    X = FiniteAbelianGroup((4, 2, 3))
    allx = np.arange(X.size)
    V = X.pairing(allx[:, None], allx[None, :])
    assert np.allclose(V @ V.conj().T, X.size * np.eye(X.size))


def test_difference_table():
    X = FiniteAbelianGroup((5, 5))
    T = X.difference_table()
    assert T[3, 7] == X.sub(7, 3)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 1), st.integers(0, 5)), min_size=1, max_size=3))
@hsettings(max_examples=40)
def test_dual_subgroup_sizes_and_double_dual(gens):
    X = FiniteAbelianGroup((4, 2, 6))
    Y = Subgroup.generated_by(X, gens)
    Y0 = dual_subgroup(Y)
    assert Y.order * Y0.order == X.size
    assert dual_subgroup(Y0) == Y


def test_twisted_pairing_still_a_duality():
    form = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    X = FiniteAbelianGroup((2, 2, 2), form=form)
    Y = Subgroup.generated_by(X, [(1, 0, 0)])
    Y0 = dual_subgroup(Y)
    assert Y0.order == 4
    assert (1, 0, 0) in Y0 and (0, 1, 0) not in Y0


def test_errors():
    with pytest.raises(GroupError):
        FiniteAbelianGroup((1, 3))
    with pytest.raises(CapExceededError):
        FiniteAbelianGroup((10, 10, 10), cap=999)
    with pytest.raises(GroupError):
        FiniteAbelianGroup((2, 2), form=[[1, 1], [0, 1]])
    with pytest.raises(GroupError):
        FiniteAbelianGroup((2, 3), form=[[1, 1], [1, 1]])
    X = FiniteAbelianGroup((4,))
    with pytest.raises(NotASubgroupError):
        Subgroup.from_elements(X, [0, 1])
