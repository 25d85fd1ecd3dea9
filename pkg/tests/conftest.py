import numpy as np
import pytest

from clockchain import ClockSpec, DensityMatrix


def wishart_density(spec: ClockSpec, rng: np.random.Generator) -> DensityMatrix:
    """Full-rank random density matrix (normalised complex Wishart)."""
    d = spec.dimension
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    w = a @ a.conj().T
    return DensityMatrix(spec, w / np.trace(w).real)


def haar_pure_density(spec: ClockSpec, rng: np.random.Generator) -> DensityMatrix:
    """Rank-one random density matrix (Haar-random pure state)."""
    d = spec.dimension
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    v /= np.linalg.norm(v)
    return DensityMatrix(spec, np.outer(v, v.conj()))


def random_density(spec: ClockSpec, rng: np.random.Generator) -> DensityMatrix:
    return wishart_density(spec, rng) if rng.random() < 0.5 else haar_pure_density(spec, rng)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
