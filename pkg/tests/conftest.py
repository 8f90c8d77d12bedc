import math

import numpy as np
import pytest

from cohorder import ordering

T2 = 2 / math.sqrt(6)


def oracle_entropy(eigs):
    """Base-2 entropy computed independently of the package."""
    eigs = np.clip(np.asarray(eigs, dtype=float), 0.0, None)
    eigs = eigs[eigs > 0]
    return float(-np.sum(eigs * np.log2(eigs)))


def oracle_cr(m):
    """S(diag) - S(rho) via numpy.linalg.eigvalsh."""
    m = np.asarray(m)
    return oracle_entropy(np.diag(m).real) - oracle_entropy(np.linalg.eigvalsh(m))


def oracle_cl1(m):
    m = np.asarray(m)
    return float(sum(abs(m[i, j]) for i in range(m.shape[0]) for j in range(m.shape[0]) if i != j))


def random_pure(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_rho(rng, d, rank=None):
    rank = rng.integers(1, d + 1) if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_bloch(rng):
    """Uniform point in the (t >= 0, z) half-disc."""
    while True:
        t, z = rng.uniform(0, 1), rng.uniform(-1, 1)
        if t * t + z * z <= 1:
            return t, z


@pytest.fixture
def rng():
    return np.random.default_rng(20161016)


@pytest.fixture
def qubit_pair():
    return ordering.reference_qubit_pair()


@pytest.fixture
def qutrit_pair():
    return ordering.reference_qutrit_pair()
