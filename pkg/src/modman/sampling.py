"""Seeded random instances used by the CLI, the verify suite and the tests."""

from __future__ import annotations

import numpy as np

from .matfun import DensityMatrix, density, hermitian_part

# Regularization added before normalizing a random Wishart factor; keeps the
# spectrum comfortably above the faithfulness floor at every dimension.
_RIDGE = 1e-3


def complex_gaussian(n: int, rng: np.random.Generator) -> np.ndarray:
    """n x n matrix of i.i.d. standard complex Gaussians."""
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)


def random_density(n: int, rng: np.random.Generator) -> DensityMatrix:
    """Random faithful density matrix, normalized A A† + (1e-3/n) I."""
    a = complex_gaussian(n, rng)
    m = a @ a.conj().T + (_RIDGE / n) * np.eye(n)
    m = m / np.trace(m).real
    return density(m)


def random_hermitian(n: int, rng: np.random.Generator, norm: float = 1.0) -> np.ndarray:
    """Random Gaussian Hermitian matrix scaled to the given operator norm."""
    h = hermitian_part(complex_gaussian(n, rng))
    scale = np.linalg.norm(h, 2)
    if scale == 0.0:  # measure zero, but keep the contract total
        h = np.eye(n)
        scale = 1.0
    return h * (norm / scale)


def random_traceless_hermitian(n: int, rng: np.random.Generator,
                               norm: float = 1.0) -> np.ndarray:
    """Random Hermitian matrix with exactly zero trace, given operator norm."""
    h = random_hermitian(n, rng)
    h = h - (np.trace(h).real / n) * np.eye(n)
    scale = np.linalg.norm(h, 2)
    if scale == 0.0:
        d = np.zeros(n)
        d[0], d[-1] = 1.0, -1.0
        h = np.diag(d)
        scale = 1.0
    return h * (norm / scale)
