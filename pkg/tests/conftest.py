import numpy as np
import pytest
from hypothesis import settings

from sucalc import make_commuting_tuple

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def diag_tuple():
    """Build a tuple of diagonal matrices (unitary = identity)."""

    def build(*diagonals):
        return make_commuting_tuple(None, [list(d) for d in diagonals])

    return build


def assert_close(a, b, tol=1e-10):
    a = np.asarray(a)
    b = np.asarray(b)
    assert a.shape == b.shape
    assert np.max(np.abs(a - b), initial=0.0) <= tol


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[number])
