import numpy as np
from hypothesis import given, settings as hsettings, strategies as st

from schemelab import codes, designs, zoo
from schemelab.codes import Code


def test_lee_c2_tight_design(lee25):
    Y = Code.from_generators(lee25.scheme, [(1, 2)])
    r = designs.distance_rao(Y, lee25, 2)
    assert r.is_design and r.tight and r.bound == 5
    assert designs.duality_check(Y.dual(), lee25)["biconditional"]


def test_mixed_code_strength(mixed_code):
    b, Y = mixed_code
    assert designs.design_strength(Y, b) == 2
    assert designs.oa_strength(Y, b) == 2
    assert designs.combinatorial_verdict(Y, b, 2)
    assert not designs.combinatorial_verdict(Y, b, 3)


def test_degree_rao_order():
    b = zoo.hamming(3, 2)
    deg = b.degrees
    T = [int(g) for g in np.flatnonzero((deg > 0) & (deg <= 2))]
    assert designs.order_of_T(b, T) == 1
    assert designs.order_of_T(b, []) == -1
    Y = Code(b.scheme, [0, 3, 5, 6])
    r = designs.degree_rao(Y, b, T)
    assert r.bound == 4 and r.tight and r.is_design


def test_wilson_values_vanish_on_tight_code(lee25):
    Y = Code.from_generators(lee25.scheme, [(1, 2)])
    psi = designs.wilson_values(lee25, 1)
    a = codes.inner_distribution(Y, lee25.scheme)
    occ = codes.occupied(a)
    assert np.allclose(psi[occ], 0, atol=1e-9)


def test_johnson_design_report():
    b = zoo.johnson_q(5, 2, 3)
    Y = Code(b.scheme, np.arange(b.n_points))
    rep = designs.design_report(Y, b, t=2)
    assert rep["combinatorial"] and rep["oracle_agreement"]


def test_subspace_count():
    # Gaussian binomials [4,2]_2 = 35, [3,1]_3 = 13
    assert len(designs.subspaces(4, 2, 2)) == 35
    assert len(designs.subspaces(3, 1, 3)) == 13


ORACLES = {"nrt": (zoo.nrt(2, 2, 2), designs.ooa_verdicts, (1, 2, 3)),
           "nrt3": (zoo.nrt(2, 3, 2), designs.ooa_verdicts, (1, 2, 3)),
           "mixed": (zoo.mixed([(2, 2), (1, 4)]), designs.oa_verdicts, (1, 2)),
           "sumrank": (zoo.sum_rank([(1, 2), (1, 2)], 2), designs.sumrank_verdicts, (1, 2)),
           "johnson": (zoo.johnson_q(4, 2, 3), designs.johnson_tt_verdicts, (1, 2))}


@given(st.sampled_from(sorted(ORACLES)), st.data())
@hsettings(max_examples=60, deadline=None)
def test_oracles_agree_on_random_codes(name, data):
    b, verdict, ts = ORACLES[name]
    N = b.n_points
    idx = data.draw(st.lists(st.integers(0, N - 1), min_size=1, max_size=N, unique=True))
    W = designs.indicators([idx], N)
    for t in ts:
        assert designs.t_design_verdicts(W, b, t)[0] == verdict(W, b, t)[0]


@given(st.data())
@hsettings(max_examples=40, deadline=None)
def test_additive_codes_oracles_agree(data):
    # subgroups hit the designs that random subsets almost never do
    b, verdict, ts = ORACLES["nrt3"]
    gens = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=6, max_size=6), min_size=1, max_size=4))
    Y = Code.from_generators(b.scheme, [tuple(g) for g in gens])
    W = designs.indicators([Y], b.n_points)
    for t in ts:
        assert designs.t_design_verdicts(W, b, t)[0] == verdict(W, b, t)[0]


def test_batch_matches_scalar(h32):
    rng = np.random.default_rng(1)
    sets = [rng.choice(8, k, replace=False) for k in (1, 2, 4, 4, 8)]
    W = designs.indicators(sets, 8)
    batch = designs.t_design_verdicts(W, h32, 1)
    scalar = [designs.is_t_design(Code(h32.scheme, s), h32, 1) for s in sets]
    assert list(batch) == scalar
