import time
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from spinforge.radical import QuadraticScalar
from spinforge.spin import Permutation, SpinState

SESSION_START = time.perf_counter()

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_int = st.integers(min_value=-12, max_value=12)


@st.composite
def scalars(draw, nonzero=False):
    a, b, c, d = (draw(small_int) for _ in range(4))
    den = draw(st.integers(min_value=1, max_value=9))
    x = QuadraticScalar(a, b, c, d, den)
    if nonzero and x.is_zero():
        x = QuadraticScalar(1)
    return x


@st.composite
def spin_states(draw, n=3, sparse=True):
    amps = []
    for _ in range(1 << n):
        if sparse and draw(st.booleans()):
            amps.append(QuadraticScalar(0))
        else:
            amps.append(draw(scalars()))
    return SpinState(n, tuple(amps))


def permutations(n=3):
    return st.sampled_from(Permutation.all(n))


@pytest.fixture
def half():
    return Fraction(1, 2)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criteria gate")


def pytest_collection_modifyitems(config, items):
    # acceptance runs last so the infrastructure criterion can time the whole suite
    items.sort(key=lambda item: item.get_closest_marker("acceptance") is not None)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
