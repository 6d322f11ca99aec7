import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


def random_state(n, seed):
    from kagome_vqe.statevec import StateVector

    rng = np.random.default_rng(seed)
    v = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return StateVector(n, v / np.linalg.norm(v))


def equal_up_to_phase(a, b, tol=1e-12):
    ov = np.vdot(a, b)
    return abs(1 - abs(ov)) < tol and np.allclose(a * ov / abs(ov), b, atol=1e-10)


@pytest.fixture
def rstate():
    return random_state


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE
    except ImportError:
        return
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
