import os
import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from drinfeld_heights.field_arith.polya import PolyA, poly_ring
from drinfeld_heights.field_arith.ratfunc import RatFunc

settings.register_profile(
    "repo", deadline=None, derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


def polys(q, max_degree=6, nonzero=False, monic=False):
    A = poly_ring(q)

    def build(cs):
        if monic:
            cs = cs + [1]
        return PolyA(A.F, cs)

    s = st.lists(st.integers(0, q - 1), min_size=0, max_size=max_degree + 1).map(build)
    if nonzero:
        s = s.filter(bool)
    return s


def ratfuncs(q, max_degree=4):
    return st.tuples(polys(q, max_degree), polys(q, max_degree, nonzero=True)).map(
        lambda t: RatFunc(*t))


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
