import numpy as np
import pytest

from steroid.symtensor import from_orbit_values, new_symmetric, orbit_map

ACCEPTANCE_LINES = []


def random_symmetric(n, d, rng, integers=None):
    """One random value per permutation orbit (exactly symmetric)."""
    count = len(orbit_map(n, d).reps)
    if integers is None:
        vals = rng.standard_normal(count)
    else:
        vals = rng.integers(integers[0], integers[1], size=count, endpoint=True).astype(float)
    return from_orbit_values(vals, n, d)


def planted(n, d, r, rng):
    """``sum_k lam_k v_k^{∘d}`` with random unit ``v_k``; returns (tensor, lams, vs)."""
    vs = rng.standard_normal((r, n))
    vs /= np.linalg.norm(vs, axis=1, keepdims=True)
    lams = rng.uniform(0.5, 3.0, size=r) * rng.choice([-1, 1], size=r)
    t = np.zeros((n,) * d)
    for lam, v in zip(lams, vs):
        term = np.asarray(lam)
        for _ in range(d):
            term = np.multiply.outer(term, v)
        t = t + term
    return t, lams, vs


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def example1():
    return new_symmetric(3, 2, {(1, 1, 1): 24, (2, 1, 1): 18, (2, 2, 1): 12, (2, 2, 2): 6})


@pytest.fixture
def comon():
    return new_symmetric(3, 2, {(1, 1, 1): -1, (2, 2, 1): 1})


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
