"""Every acceptance criterion, one test each, at its stated tolerance.

Each test runs the matching check groups of :mod:`schemelab.repro` and fails
with the list of failing checks.  The per-criterion pass/fail lines are printed
by the terminal summary hook in ``conftest.py``.
"""

from schemelab import repro


def _run(*groups):
    checks = [c for g in groups for c in repro.GROUPS[g]()]
    assert checks, "no checks ran"
    bad = [f"{c.id}: computed {c.computed!r}, expected {c.expected!r}" for c in checks if not c.passed]
    assert not bad, "\n".join(bad)
    return checks


def test_criterion_1_lee_cn_weights():
    checks = _run("lee-cn")
    assert len(checks) == 14


def test_criterion_2_prime_constant_weight():
    _run("lee-prime")


def test_criterion_3_lee_m1():
    _run("lee-m1")


def test_criterion_4_length2_lee():
    _run("lee-length2")


def test_criterion_5_perfect_lee_kernels():
    _run("lee-perfect")


def test_criterion_6_mixed_code():
    _run("mixed-code")


def test_criterion_7_range_of_metricity():
    _run("metricity")


def test_criterion_8_self_duality():
    _run("self-duality")


def test_criterion_9_duality_proposition():
    _run("duality")


def test_criterion_10_rao_dual_programs():
    _run("rao-lp")


def test_criterion_11_property_suites():
    checks = _run("axioms", "macwilliams", "gram", "oracles")
    assert sum(c.id.startswith("axioms-") for c in checks) >= 6
    assert sum(c.id.startswith("macwilliams-") for c in checks) >= 6
    assert sum(c.id.startswith("gram-") for c in checks) == 10
