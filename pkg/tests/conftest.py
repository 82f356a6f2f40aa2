import numpy as np
import pytest

from entlab.linalg import expm_hermitian_generator
from entlab.tensor import DensityMatrix


def random_hermitian(rng, n, scale=1.0):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (a + a.conj().T) / 2


def random_unitary(rng, n):
    return expm_hermitian_generator(random_hermitian(rng, n), 1.0)


def random_state(rng, n, rank=None):
    rank = rank or n
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def random_separable(rng, d=3, terms=4):
    """Convex mixture of random product states on d x d."""
    weights = rng.dirichlet(np.ones(terms))
    rho = sum(w * np.kron(random_state(rng, d), random_state(rng, d)) for w in weights)
    return DensityMatrix(rho, (d, d))


@pytest.fixture
def rng():
    return np.random.default_rng(20161018)


def pytest_terminal_summary(terminalreporter):
    lines = [
        value
        for reports in terminalreporter.stats.values()
        for rep in reports
        for key, value in getattr(rep, "user_properties", ())
        if key == "acceptance" and getattr(rep, "when", "call") == "call"
    ]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(':'))):
            terminalreporter.write_line(line)
