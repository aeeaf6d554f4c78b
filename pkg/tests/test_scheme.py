import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from schemelab import zoo
from schemelab.exceptions import AxiomError
from schemelab.groups import FiniteAbelianGroup
from schemelab.scheme import (check_projectors, characteristic_matrix, direct_product, eigen,
                              is_F_partition, is_self_dual, scheme_from_matrix, scheme_from_partition,
                              scheme_from_relation, verify_axioms)


def test_cycle_intersection_numbers():
    X = FiniteAbelianGroup((5,))
    s = scheme_from_partition(X, [[0], [1, 4], [2, 3]])
    p = s.intersection_numbers
    assert p[1, 1, 2] == 1 and p[1, 1, 0] == 2
    assert list(s.valencies) == [1, 2, 2]


def test_character_and_algebra_paths_agree():
    s = zoo.lee(1, 7).scheme
    a = eigen(s, method="characters")
    b = eigen(s, method="algebra")
    assert np.allclose(a.P, b.P, atol=1e-9)
    assert np.allclose(a.mu, b.mu)


def test_generic_scheme_from_relation():
    pts = [(i, j) for i in range(3) for j in range(3)]
    s = scheme_from_relation(pts, lambda x, y: sum(a != b for a, b in zip(x, y)))
    e = eigen(s)
    assert s.class_count == 3
    assert np.allclose(e.P @ e.Q, 9 * np.eye(3))
    assert is_self_dual(e)


def test_axiom_witnesses():
    with pytest.raises(AxiomError) as ex:
        scheme_from_relation(range(4), lambda x, y: 0)
    assert ex.value.axiom == "A1"
    X = FiniteAbelianGroup((6,))
    with pytest.raises(AxiomError) as ex:
        scheme_from_partition(X, [[0], [1, 5], [2, 3, 4]])
    # closed under negation, so the failure is in the intersection numbers
    assert ex.value.axiom == "A3"
    assert ex.value.witness
    R = np.array([[0, 1, 2, 2], [1, 0, 1, 2], [2, 1, 0, 1], [2, 2, 1, 0]])
    with pytest.raises(AxiomError) as ex:
        scheme_from_matrix(R)
    assert ex.value.axiom == "A3"


def test_self_duality_and_F_partition():
    X = FiniteAbelianGroup((8,))
    parts = [[0], [1, 3, 5, 7], [2, 6], [4]]
    assert is_F_partition(X, parts)
    s = scheme_from_partition(X, parts)
    assert is_self_dual(eigen(s))
    assert not zoo.johnson_q(4, 2, 3).self_duality()


def test_direct_product_matches_characters():
    a, b = zoo.hamming(1, 3), zoo.lee(1, 5)
    s, e = direct_product([(a.scheme, a.eigen), (b.scheme, b.eigen)])
    c = eigen(s, method="characters")
    ys = np.arange(s.n_points)
    assert np.allclose(e.P[:, e.dual_class_of[ys]], c.P[:, c.dual_class_of[ys]])
    verify_axioms(s)


def test_characteristic_matrix_gram():
    b = zoo.hamming(3, 2)
    cm = characteristic_matrix(b.scheme, b.eigen, 1)
    H = cm.H
    assert H.shape == (8, 3)
    assert np.allclose(H.conj().T @ H, 8 * np.eye(3))


BUNDLES = [("hamming", {"n": 2, "q": 3}), ("lee", {"n": 2, "q": 5}), ("homogeneous", {"n": 1, "k": 3}),
           ("mixed", {"blocks": [(1, 2), (1, 3)]}), ("nrt", {"n_blocks": 2, "r": 2, "q": 2}),
           ("johnson", {"n": 4, "w": 2, "q": 3}), ("sumrank", {"blocks": [(2, 2)], "q": 2})]


@pytest.mark.parametrize("name,params", BUNDLES)
def test_eigen_invariants(name, params):
    b = zoo.build(name, params)
    e = b.eigen
    N = b.n_points
    n = b.scheme.class_count
    assert np.allclose(e.P @ e.Q, N * np.eye(n))
    assert np.isclose(e.v.sum(), N) and np.isclose(e.mu.sum(), N)
    assert check_projectors(e) < 1e-8
    assert np.allclose(e.P[:, 0], e.v)
    assert np.allclose(e.Q[:, 0], e.mu)


@given(st.integers(1, 3), st.sampled_from([2, 3, 4, 5]))
@hsettings(max_examples=20, deadline=None)
def test_hamming_krawtchouk(n, q):
    from math import comb
    b = zoo.hamming(n, q)
    d = b.relation_distances.astype(int)
    g = b.idempotent_distances.astype(int)
    for i in range(n + 1):
        for j in range(n + 1):
            k = sum((-1) ** h * (q - 1) ** (i - h) * comb(j, h) * comb(n - j, i - h) for h in range(i + 1))
            assert np.isclose(b.eigen.P[list(d).index(i), list(g).index(j)], k)
