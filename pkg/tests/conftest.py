"""Shared fixtures and the per-criterion summary printed after the acceptance run."""

import re

import pytest

from schemelab import codes, zoo

CRITERIA = {
    1: "Lee C_n weight counts and weight set",
    2: "constant Lee weight for prime q",
    3: "M(1) = q in L(n, q)",
    4: "length-2 Lee codes",
    5: "perfect Lee kernels",
    6: "the 8-word mixed code",
    7: "range-of-metricity table",
    8: "self-duality and product eigenmatrices",
    9: "perfect codes and tight designs",
    10: "explicit Rao dual programs",
    11: "property suites",
}

_outcomes = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_", report.nodeid)
    if not m or report.when not in ("setup", "call"):
        return
    k = int(m.group(1))
    if report.failed or k not in _outcomes:
        _outcomes[k] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_outcomes):
        status = "PASS" if _outcomes[k] == "passed" else "FAIL"
        tr.write_line(f"criterion {k:2d}: {status}  {CRITERIA.get(k, '')}")


@pytest.fixture(scope="session")
def lee25():
    return zoo.lee(2, 5)


@pytest.fixture(scope="session")
def h32():
    return zoo.hamming(3, 2)


@pytest.fixture(scope="session")
def mixed_code():
    return codes.mixed_perfect_code()
