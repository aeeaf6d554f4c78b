import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from schemelab import codes, designs, zoo
from schemelab.codes import Code
from schemelab.exceptions import AnnihilatorError, SchemeLabError


def test_lee_c2(lee25):
    Y = Code.from_generators(lee25.scheme, [(1, 2)])
    prof = codes.profile(Y, lee25)
    assert Y.size == 5 and prof.distance_degree == 1
    assert codes.bound_M(1, lee25) == 5
    g = codes.gram_identity_check(Y, lee25, "distance")
    assert g["tight"] and g["tight_identity_holds"]
    # the literal product annihilator does not truncate in the Lee scheme
    with pytest.raises(AnnihilatorError):
        codes.annihilator(Y, lee25, "distance", strict=True)


def test_mixed_code_gram(mixed_code):
    b, Y = mixed_code
    g = codes.gram_identity_check(Y, b, "distance")
    assert g["shape"] == [8, 26] and g["identity_holds"] and not g["tight"]


def test_external_bound_readings(mixed_code):
    b, Y = mixed_code
    r = codes.gh_and_external_bound(Y, b)
    assert r["dual_external"]["bound"] == 48 and r["dual_external"]["holds"]
    assert r["distance_count"]["mu_prime"] == -2


def test_lee_cn_profiles():
    for q in (5, 7, 9):
        p = codes.lee_cn_profile(q)
        assert p["weights_match"] and p["count_matches"] and p["gcd_rule"]


def test_perfect_kernels():
    for t in (1, 2):
        q = 2 * t * t + 2 * t + 1
        b = zoo.lee(2, q)
        Y = Code.kernel(b.scheme, [[1, 2 * t + 1]])
        assert codes.is_perfect(Y, b, t)
        assert not codes.is_perfect(Y, b, t + 1)


def test_lee_ball_size_matches_scheme():
    b = zoo.lee(3, 7)
    for r in range(4):
        assert codes.ball_size(b, r) == codes.lee_ball_size(3, 7, r)


def test_code_errors(lee25):
    with pytest.raises(SchemeLabError):
        Code(lee25.scheme, [])
    with pytest.raises(SchemeLabError):
        Code(lee25.scheme, [0, 1], additive=True)


def test_singleton_radii(h32):
    dmin, e, r = codes.radii(Code(h32.scheme, [0]), h32)
    assert dmin is None and e == 3 and r == 3


BUNDLES = {"h32": zoo.hamming(3, 2), "lee27": zoo.lee(2, 7), "mixed": zoo.mixed([(2, 2), (1, 3)]),
           "nrt": zoo.nrt(2, 2, 2), "johnson": zoo.johnson_q(4, 2, 3)}


@given(st.sampled_from(sorted(BUNDLES)), st.data())
@hsettings(max_examples=60, deadline=None)
def test_inner_distribution_properties(name, data):
    b = BUNDLES[name]
    N = b.n_points
    idx = data.draw(st.lists(st.integers(0, N - 1), min_size=1, max_size=N, unique=True))
    Y = Code(b.scheme, idx)
    a = codes.inner_distribution(Y, b.scheme)
    assert np.isclose(a[0], 1) and np.isclose(a.sum(), Y.size)
    assert a.min() >= 0
    aQ = designs.macwilliams(a, b.eigen)
    assert np.isclose(aQ[0], Y.size)
    assert aQ.min() >= -1e-7


@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=2))
@hsettings(max_examples=30, deadline=None)
def test_additive_macwilliams_counts_dual(gens):
    b = BUNDLES["lee27"]
    Y = Code.from_generators(b.scheme, gens)
    Y0 = Y.dual()
    assert Y.size * Y0.size == b.n_points
    assert Y0.dual() == Y
    aQ = designs.macwilliams(codes.inner_distribution(Y, b.scheme), b.eigen)
    counts = np.bincount(b.eigen.dual_class_of[Y0.elements], minlength=b.scheme.class_count)
    assert np.allclose(aQ, Y.size * counts)


@given(st.data())
@hsettings(max_examples=20, deadline=None)
def test_gram_identity_random_hamming(data):
    b = BUNDLES["h32"]
    idx = data.draw(st.lists(st.integers(0, 7), min_size=2, max_size=8, unique=True))
    r = codes.gram_identity_check(Code(b.scheme, idx), b, "degree")
    assert r["identity_holds"]
    assert Code(b.scheme, idx).size <= r["M_of_s"]
