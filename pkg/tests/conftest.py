import random
import re

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lsk.h_engine import h_from_alexander_link, unknot
from lsk.poly import LaurentPoly, unlink_tilde, whitehead_tilde
from lsk.synthetic import random_knot_h, random_link_h

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def whitehead():
    return h_from_alexander_link(whitehead_tilde())


@pytest.fixture(scope="session")
def unlink():
    return h_from_alexander_link(unlink_tilde())


@pytest.fixture(scope="session")
def O():
    return unknot()


def poly1(max_exp=3, max_terms=4):
    """Small one-variable polynomials with integer exponents (stored doubled)."""
    return st.dictionaries(
        st.integers(-max_exp, max_exp).map(lambda e: 2 * e),
        st.integers(-3, 3),
        max_size=max_terms,
    ).map(lambda d: LaurentPoly(d, 1))


def poly2(max_exp=2, max_terms=4, half=False):
    step = 1 if half else 2
    exps = st.tuples(st.integers(-2 * max_exp, 2 * max_exp), st.integers(-2 * max_exp, 2 * max_exp))
    exps = exps.map(lambda e: (e[0] - e[0] % step, e[1] - e[1] % step))
    return st.dictionaries(exps, st.integers(-3, 3), max_size=max_terms).map(lambda d: LaurentPoly(d, 2))


seeds = st.integers(0, 2**32 - 1)


def synthetic_link(seed, knotted=None):
    rng = random.Random(seed)
    if knotted is None:
        knotted = rng.random() < 0.5
    return random_link_h(rng, radius=rng.choice([2, 3, 4]), knotted=knotted)


def synthetic_knot(seed):
    rng = random.Random(seed)
    return random_knot_h(rng, radius=rng.choice([1, 2, 3, 4]))


_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")
_acceptance: dict[int, bool] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or report.outcome != "passed":
        n = int(m.group(1))
        _acceptance[n] = _acceptance.get(n, True) and report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _acceptance[n] else 'FAIL'}")
