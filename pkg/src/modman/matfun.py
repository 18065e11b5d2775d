"""Functions of Hermitian matrices.

Everything downstream (modular operators, divergences, exponential arcs,
metrics) reduces to spectral calculus of Hermitian matrices: exp, log,
real and complex powers, and the first divided difference of exp that
gives the derivative of the matrix exponential.  All routines work on
plain complex ``numpy`` arrays and never materialize anything larger
than n x n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, NamedTuple

import numpy as np

from .errors import (
    DomainError,
    FaithfulnessError,
    InputError,
    OverflowError,
)

# Skew part larger than this is treated as corrupt input, not rounding noise.
HERMITIZE_REJECT = 1e-8
# Eigenvalues of a density matrix below this floor break faithfulness.
FAITHFULNESS_FLOOR = 1e-12
# Largest exponent magnitude accepted before exp() would overflow doubles.
EXP_OVERFLOW_GUARD = 700.0

_TRACE_TOL = 1e-12


def hermitian_part(m: np.ndarray) -> np.ndarray:
    """Return (m + m†)/2 without any validation."""
    return 0.5 * (m + m.conj().T)


def hermitization_defect(m) -> float:
    """Operator norm of the skew part removed by :func:`as_hermitian`."""
    a = np.asarray(m, dtype=complex)
    return float(np.linalg.norm(a - hermitian_part(a), 2))


def as_hermitian(m, reject: float = HERMITIZE_REJECT) -> np.ndarray:
    """Validate and symmetrize a square matrix.

    The input is replaced by its Hermitian part.  If the correction is
    larger than ``reject`` the matrix is considered genuinely
    non-Hermitian (not just noisy, e.g. from JSON round-trips) and an
    :class:`InputError` is raised.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    h = hermitian_part(a)
    defect = np.linalg.norm(a - h, 2)
    if defect > reject:
        raise InputError(
            f"matrix is not Hermitian: skew part has norm {defect:.3e} > {reject:.1e}"
        )
    return h


class SpectralDecomposition(NamedTuple):
    """Eigenvalues (ascending) and the unitary of eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def spectral_decompose(m) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    Returns ascending real eigenvalues and a unitary ``U`` with
    ``U @ diag(w) @ U† == m`` up to rounding.
    """
    h = as_hermitian(m)
    w, u = np.linalg.eigh(h)
    return SpectralDecomposition(w, u)


def matrix_function(m, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum.

    Parameters
    ----------
    m : array_like
        Hermitian matrix.
    f : callable
        Vectorized real function, applied to the eigenvalue vector.

    Returns
    -------
    numpy.ndarray
        ``U diag(f(w)) U†``, hermitized.

    Raises
    ------
    DomainError
        If ``f`` returns a non-finite value on some eigenvalue
        (for example ``log`` of a non-positive eigenvalue).
    """
    w, u = spectral_decompose(m)
    with np.errstate(all="ignore"):
        fw = np.asarray(f(w), dtype=float)
    if not np.all(np.isfinite(fw)):
        bad = w[~np.isfinite(fw)]
        raise DomainError(f"scalar function undefined on eigenvalues {bad}")
    return hermitian_part((u * fw) @ u.conj().T)


def exp_divided_difference(x, y) -> np.ndarray:
    """First divided difference of exp, elementwise on broadcast arrays.

    Computes ``(e^x - e^y) / (x - y)`` with the value ``e^x`` on the
    diagonal ``x == y``.  Evaluated as ``e^{(x+y)/2} * sinh(d)/d`` with
    ``d = (x-y)/2``; for ``|d| < 1e-5`` the quotient is replaced by its
    Taylor polynomial to avoid catastrophic cancellation.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    mid = 0.5 * (x + y)
    d = 0.5 * (x - y)
    small = np.abs(d) < 1e-5
    d_safe = np.where(small, 1.0, d)
    with np.errstate(over="ignore"):
        sinhc = np.where(small, 1.0 + d**2 / 6.0 + d**4 / 120.0 + d**6 / 5040.0,
                         np.sinh(d_safe) / d_safe)
    return np.exp(mid) * sinhc


def frechet_exp(a, b) -> np.ndarray:
    """Derivative of the matrix exponential at ``a`` in direction ``b``.

    Equals ``d/dt exp(a + t b)`` at ``t = 0``, i.e. the integral of
    ``e^{ua} b e^{(1-u)a}`` over ``u`` in [0, 1].  In the eigenbasis of
    ``a`` the entries of ``b`` are scaled by the first divided
    differences of exp on the spectrum.
    """
    w, u = spectral_decompose(a)
    bh = as_hermitian(b)
    if bh.shape != u.shape:
        raise InputError(f"dimension mismatch: {u.shape} vs {bh.shape}")
    kernel = exp_divided_difference(w[:, None], w[None, :])
    bt = u.conj().T @ bh @ u
    return hermitian_part(u @ (bt * kernel) @ u.conj().T)


def is_psd(m, tol: float = 1e-10) -> bool:
    """True when the smallest eigenvalue of the Hermitian part is >= -tol."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    h = as_hermitian(m)
    return bool(np.linalg.eigvalsh(h)[0] >= -tol)


@dataclass(frozen=True)
class DensityMatrix:
    """A faithful density matrix with cached spectral data.

    Invariants (enforced by :func:`density`): Hermitian, unit trace,
    all eigenvalues at or above the faithfulness floor so that the
    matrix is strictly positive definite and every log / negative
    power downstream stays finite.
    """

    mat: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @cached_property
    def log_mat(self) -> np.ndarray:
        """Matrix logarithm, from the cached spectrum."""
        u = self.eigenvectors
        return hermitian_part((u * np.log(self.eigenvalues)) @ u.conj().T)

    @cached_property
    def sqrt_mat(self) -> np.ndarray:
        u = self.eigenvectors
        return hermitian_part((u * np.sqrt(self.eigenvalues)) @ u.conj().T)

    @cached_property
    def inv_sqrt_mat(self) -> np.ndarray:
        u = self.eigenvectors
        return hermitian_part((u / np.sqrt(self.eigenvalues)) @ u.conj().T)

    def power(self, z: complex) -> np.ndarray:
        """Complex matrix power; see :func:`matrix_power_complex`."""
        return matrix_power_complex(self, z)

    def expect(self, x) -> float:
        """Expectation Tr(rho x) of a Hermitian observable."""
        return float(np.trace(self.mat @ np.asarray(x)).real)


def density(mat, floor: float = FAITHFULNESS_FLOOR) -> DensityMatrix:
    """Construct a validated :class:`DensityMatrix`.

    Raises
    ------
    FaithfulnessError
        If some eigenvalue is below ``floor``; near-singular states are
        rejected rather than regularized so every divergence stays finite.
    InputError
        If the matrix is not Hermitian within tolerance or the trace is
        not 1 within 1e-12.
    """
    h = as_hermitian(mat)
    w, u = np.linalg.eigh(h)
    if w[0] < floor:
        raise FaithfulnessError(
            f"density matrix is not faithful: min eigenvalue {w[0]:.3e} < {floor:.1e}"
        )
    tr = float(w.sum())
    if abs(tr - 1.0) > _TRACE_TOL:
        raise InputError(f"density matrix trace is {tr!r}, expected 1")
    return DensityMatrix(h, w, u)


def _density_from_spectrum(p: np.ndarray, u: np.ndarray,
                           floor: float = FAITHFULNESS_FLOOR) -> DensityMatrix:
    """Assemble a DensityMatrix from a known spectral form (ascending p)."""
    if p[0] < floor:
        raise FaithfulnessError(
            f"state left the faithful manifold: min eigenvalue {p[0]:.3e} < {floor:.1e}"
        )
    mat = hermitian_part((u * p) @ u.conj().T)
    return DensityMatrix(mat, p, u)


def matrix_power_complex(rho: DensityMatrix, z: complex) -> np.ndarray:
    """Complex power ``rho^z = U diag(p^z) U†`` of a faithful density matrix.

    For purely imaginary ``z`` the result is unitary; for real ``z`` it
    is the usual positive power.  Faithfulness makes every ``p^z``
    well defined via ``exp(z log p)``.
    """
    u = rho.eigenvectors
    pz = np.exp(z * np.log(rho.eigenvalues.astype(complex)))
    return (u * pz) @ u.conj().T


def normalized_exponential(exponent) -> tuple[DensityMatrix, float]:
    """Normalize ``exp(exponent)`` to unit trace.

    Returns the density matrix ``exp(exponent - logZ)`` together with
    ``logZ = log Tr exp(exponent)``, evaluated through the spectrum with
    a log-sum-exp shift so the normalization itself cannot overflow.

    Raises
    ------
    OverflowError
        If the exponent's spectral radius exceeds the double-precision
        guard (700).
    FaithfulnessError
        If the normalized spectrum falls below the faithfulness floor.
    """
    w, u = spectral_decompose(exponent)
    if np.abs(w).max() > EXP_OVERFLOW_GUARD:
        raise OverflowError(
            f"exponent norm {np.abs(w).max():.3e} exceeds the overflow guard"
        )
    wmax = w[-1]
    log_z = float(wmax + np.log(np.exp(w - wmax).sum()))
    p = np.exp(w - log_z)
    return _density_from_spectrum(p, u), log_z
