from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from schemelab import lp
from schemelab.exceptions import InfeasibleError, LPError, UnboundedError


@pytest.mark.parametrize("M,opt", [((0,), 1), ((0, 3), 2), ((0, 1, 2, 3), 8), ((0, 2), 4)])
def test_hamming_optima_and_certificates(h32, M, opt):
    prob = lp.build_primal(h32.eigen, M)
    assert prob.exact
    primal = lp.solve(prob)
    dual = lp.solve(lp.build_dual(h32.eigen, M))
    assert primal.objective == pytest.approx(opt)
    assert dual.objective == pytest.approx(opt)
    assert all(isinstance(v, Fraction) for v in primal.exact_values)
    assert lp.slackness_check(primal, dual, prob.A, prob.M)


def test_full_M_dual_is_all_ones(h32):
    dual = lp.solve(lp.build_dual(h32.eigen, (0, 1, 2, 3)))
    assert np.allclose(dual.values, 1)


def test_code_lp_orientation(h32):
    # Q orientation bounds codes: distance set {3} gives at most 2 words in H(3,2)
    d = h32.relation_distances
    M = (0, int(np.flatnonzero(d == 3)[0]))
    assert lp.solve(lp.build_primal(h32.eigen, M, use="Q")).objective == pytest.approx(2)


def test_rao_dual_program(lee25):
    beta = lp.rao_dual_program(lee25, 1, "distance", t=2)
    assert beta.objective == pytest.approx(5)
    assert lp.is_program(beta, np.real(lee25.eigen.P), beta.problem.M, "dual")


def test_problem_validation():
    with pytest.raises(LPError):
        lp.LPProblem(np.ones((2, 3)), (0,))
    with pytest.raises(LPError):
        lp.LPProblem(np.array([[2.0, 1.0], [1.0, -1.0]]), (0,))
    with pytest.raises(LPError):
        lp.LPProblem(np.array([[1.0, 1.0], [1.0, -1.0]]), (1,))


def test_simplex_statuses():
    with pytest.raises(UnboundedError):
        lp.simplex_max([1, 1], [[1, -1]], [1])
    with pytest.raises(InfeasibleError):
        lp.simplex_max([1], [[1], [-1]], [1, -2])
    x, v = lp.simplex_max([3, 2], [[1, 1], [1, 3]], [4, 6], exact=True)
    assert v == 12 and x == [4, 0]


small = st.integers(-4, 4)


@given(st.integers(1, 3), st.integers(1, 3), st.data())
@hsettings(max_examples=80, deadline=None)
def test_random_lp_strong_duality(n, m, data):
    c = data.draw(st.lists(small, min_size=n, max_size=n))
    G = [data.draw(st.lists(small, min_size=n, max_size=n)) for _ in range(m)]
    h = data.draw(st.lists(st.integers(-3, 6), min_size=m, max_size=m))
    try:
        x, val = lp.simplex_max(c, G, h, exact=True)
    except (InfeasibleError, UnboundedError):
        return
    # feasibility of the primal point
    for r in range(m):
        assert sum(G[r][j] * x[j] for j in range(n)) <= h[r]
    assert all(v >= 0 for v in x)
    # dual: min h y s.t. G^T y >= c, y >= 0
    Gt = [[-G[r][j] for r in range(m)] for j in range(n)]
    y, dval = lp.simplex_max([-v for v in h], Gt, [-v for v in c], exact=True)
    assert -dval == val
