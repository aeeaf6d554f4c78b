from math import comb

import numpy as np
import pytest

from schemelab import zoo
from schemelab.exceptions import CapExceededError, SchemeLabError
from schemelab.config import settings
from schemelab.scheme import eigen


def test_lee_labels_and_class_count():
    b = zoo.lee(2, 13)
    assert b.scheme.class_count == 28
    assert b.labeling.weights == tuple(range(1, 7))
    b = zoo.lee(2, 5)
    # classes are Lee compositions; the distance is the Lee weight
    for x in range(b.n_points):
        c = b.scheme.group.coords(x)
        assert b.distance_from_zero()[x] == sum(min(v, 5 - v) for v in c)


def test_homogeneous_parts():
    b = zoo.homogeneous(1, 3)
    assert b.scheme.class_count == 4
    labels = sorted(tuple(x) for x in b.labeling.relation_labels)
    assert labels == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]
    b = zoo.homogeneous(1, 2)
    assert b.labeling.ell == 2


def test_johnson_multiplicities():
    n, w, q = 5, 2, 3
    b = zoo.johnson_q(n, w, q)
    assert b.n_points == comb(n, w) * (q - 1) ** w
    assert b.scheme.class_count == 6
    # multiplicities from the labelled bundle agree with a plain algebra diagonalisation
    plain = eigen(b.scheme, method="algebra")
    assert np.allclose(np.sort(b.eigen.mu), np.sort(plain.mu))
    assert np.isclose(b.eigen.mu.sum(), b.n_points)


def test_nrt_distance_is_sum_of_block_heights():
    b = zoo.nrt(2, 3, 2)
    C = b.scheme.group.all_coords
    want = []
    for c in C:
        d = 0
        for blk in b.blocks:
            nz = [i for i, col in enumerate(blk) if c[col]]
            d += max(nz) + 1 if nz else 0
        want.append(d)
    assert np.array_equal(b.distance_from_zero(), want)


def test_sum_rank_distance_is_rank():
    b = zoo.sum_rank([(2, 3)], 2)
    C = b.scheme.group.all_coords
    ranks = zoo.rank_mod_p(C.reshape(-1, 2, 3), 2)
    assert np.array_equal(b.distance_from_zero(), ranks)


@pytest.mark.parametrize("name,params", [("hamming", "n=2,q=4"), ("lee", "n=2,q=6"), ("homogeneous", "n=2,k=2"),
                                         ("mixed", "blocks=2:2,1:3"), ("sumrank", "q=2;blocks=1x2,2x2")])
def test_self_dual_families(name, params):
    b = zoo.build(name, params)
    sd = b.self_duality()
    assert sd
    # labels are ordered so that P equals Q directly
    assert np.allclose(b.eigen.P, b.eigen.Q, atol=1e-9)


def test_build_errors():
    with pytest.raises(SchemeLabError):
        zoo.build("nope", {})
    with pytest.raises(SchemeLabError):
        zoo.johnson_q(4, 3, 3)
    old = settings.translation_cap
    settings.translation_cap = 100
    try:
        with pytest.raises(CapExceededError):
            zoo.hamming(3, 5)
    finally:
        settings.translation_cap = old


def test_bundle_json():
    d = zoo.lee(2, 5).to_json()
    assert d["classes"] == 6 and d["ell"] == 2 and "P" in d
