"""Standard (GNS) representation of the matrix algebra acting on itself.

A faithful density matrix ``rho`` turns the n x n matrices into a
Hilbert space with the Hilbert-Schmidt inner product.  Vectors are kept
as n x n matrices ``M`` throughout; the identification with column
vectors is ``vec`` with the conventions

    (A (x) I) vec(M) = vec(A M)        left action of the algebra,
    (I (x) B^T) vec(M) = vec(M B)      right action of the commutant,

so every operator below is an n x n matrix product and nothing of size
n^2 x n^2 is ever formed.  The cyclic vector is ``vec(rho^{1/2})``.

Key objects: the modular operator ``vec(M) -> vec(rho M rho^{-1})``,
the modular conjugation ``vec(M) -> vec(M†)``, the modular flow on the
algebra, the family of positivity cones indexed by alpha in [0, 1/2]
(alpha = 1/4 is the natural self-dual cone, realized by the positive
semidefinite matrices), and the Radon-Nikodym elements of vector states
majorized by a multiple of the reference state.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    FaithfulnessError,
    InputError,
    MajorizationError,
)
from .matfun import (
    DensityMatrix,
    as_hermitian,
    density,
    hermitian_part,
    is_psd,
    matrix_power_complex,
)

_TRACELESS_TOL = 1e-12


@dataclass(frozen=True)
class ConeVector:
    """A Hilbert-space vector stored as its n x n matrix carrier.

    A cone vector *represents a state* when the carrier is positive
    semidefinite with unit Hilbert-Schmidt norm; arbitrary carriers are
    accepted because modular powers and conjugations move vectors out
    of the cone.
    """

    mat: np.ndarray

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def hs_norm(self) -> float:
        return float(np.linalg.norm(self.mat))

    def represents_state(self, tol: float = 1e-10) -> bool:
        """PSD carrier with unit norm, i.e. the vector of a state."""
        return is_psd(self.mat, tol) and abs(self.hs_norm - 1.0) <= tol


def cone_vector(mat) -> ConeVector:
    m = np.asarray(mat, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"cone vector carrier must be square, got shape {m.shape}")
    return ConeVector(m)


def _carrier(v) -> np.ndarray:
    """Accept either a ConeVector or a bare matrix carrier."""
    if isinstance(v, ConeVector):
        return v.mat
    return np.asarray(v, dtype=complex)


@dataclass(frozen=True)
class TangentFunctional:
    """Hermitian linear functional x -> Tr(c x) with traceless c.

    These are the tangent vectors of the manifold of faithful states:
    Hermitian functionals vanishing on the identity.
    """

    mat: np.ndarray

    def __call__(self, x) -> complex:
        return complex(np.trace(self.mat @ np.asarray(x)))

    def pair(self, x) -> float:
        """Real pairing with a Hermitian observable."""
        return float(np.trace(self.mat @ np.asarray(x)).real)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def tangent_functional(c) -> TangentFunctional:
    """Validate and wrap a traceless Hermitian matrix as a functional."""
    h = as_hermitian(c)
    tr = np.trace(h).real
    if abs(tr) > _TRACELESS_TOL:
        raise InputError(f"tangent functional must be traceless, got trace {tr:.3e}")
    n = h.shape[0]
    h = h - (tr / n) * np.eye(n)  # kill the rounding residue exactly
    return TangentFunctional(h)


@dataclass(frozen=True)
class GnsSpace:
    """Standard form built on a faithful reference density matrix."""

    rho: DensityMatrix

    @property
    def dim(self) -> int:
        return self.rho.dim

    @cached_property
    def omega(self) -> ConeVector:
        """The cyclic vector, carrier rho^{1/2}."""
        return ConeVector(self.rho.sqrt_mat)

    def state(self, x) -> float:
        """Reference expectation Tr(rho x) of a Hermitian observable."""
        return self.rho.expect(x)

    # -- modular machinery -------------------------------------------------

    def apply_modular_power(self, z: complex, v) -> np.ndarray:
        """Apply the z-th modular power: vec(M) -> vec(rho^z M rho^{-z}).

        Purely imaginary z gives the unitary one-parameter group, z = 1/2
        the square root entering the closure of x Omega -> x* Omega.
        """
        m = _carrier(v)
        left = matrix_power_complex(self.rho, z)
        right = matrix_power_complex(self.rho, -z)
        return left @ m @ right

    def modular_flow(self, x, w: complex) -> np.ndarray:
        """Heisenberg evolution rho^{-iw} x rho^{iw} of an algebra element.

        Real ``w`` is a unitary similarity that leaves the reference
        expectation invariant; complex ``w`` is the finite-dimensional
        analytic continuation.
        """
        xm = np.asarray(x, dtype=complex)
        left = matrix_power_complex(self.rho, -1j * w)
        right = matrix_power_complex(self.rho, 1j * w)
        return left @ xm @ right

    def kms_residual(self, x, y, t: float) -> float:
        """Boundary-value identity of equilibrium at inverse temperature 1.

        Returns |omega(flow_{t-i}(x) y) - omega(y flow_t(x))|, which is an
        exact identity in finite dimension, so the residual is rounding
        noise only.
        """
        xm = np.asarray(x, dtype=complex)
        ym = np.asarray(y, dtype=complex)
        shifted = self.modular_flow(xm, t - 1j)
        evolved = self.modular_flow(xm, t)
        lhs = np.trace(self.rho.mat @ shifted @ ym)
        rhs = np.trace(self.rho.mat @ ym @ evolved)
        return float(abs(lhs - rhs))

    # -- cones and states ---------------------------------------------------

    def cone_membership(self, v, alpha: float, tol: float = 1e-10) -> bool:
        """Membership of a vector in the alpha-cone, alpha in [0, 1/2].

        vec(M) lies in the closure of {Delta^alpha x Omega : x >= 0}
        exactly when rho^{-alpha} M rho^{alpha - 1/2} is positive
        semidefinite; alpha = 1/4 is the natural cone (M itself PSD),
        alpha = 1/2 the cone of the commutant.
        """
        if not 0.0 <= alpha <= 0.5:
            raise InputError(f"alpha must lie in [0, 1/2], got {alpha}")
        m = _carrier(v)
        probe = (matrix_power_complex(self.rho, -alpha) @ m
                 @ matrix_power_complex(self.rho, alpha - 0.5))
        if np.linalg.norm(probe - probe.conj().T, 2) > max(tol, 1e-10):
            return False
        return is_psd(hermitian_part(probe), tol)

    # -- Radon-Nikodym elements ----------------------------------------------

    def majorization_bound(self, phi) -> float:
        """Smallest lambda with omega_phi(x*x) <= lambda omega(x*x) for all x.

        Collapses to the squared operator norm of the commutant element
        rho^{-1/2} M; always finite here because the reference state is
        faithful.
        """
        m = _carrier(phi)
        return float(np.linalg.norm(self.rho.inv_sqrt_mat @ m, 2) ** 2)

    def commutant_rn(self, phi, max_bound: float | None = None) -> np.ndarray:
        """The unique commutant element carrying Omega onto phi.

        Returns the matrix ``B`` of the right multiplication
        vec(M) -> vec(M B); it satisfies vec(rho^{1/2} B) = phi and
        commutes with every left multiplication.

        ``max_bound`` optionally caps the majorization constant; the
        bound itself is returned by :meth:`majorization_bound` so callers
        can pick their own threshold.
        """
        m = _carrier(phi)
        if max_bound is not None and self.majorization_bound(phi) > max_bound:
            raise MajorizationError(
                f"state exceeds majorization bound {max_bound}"
            )
        return self.rho.inv_sqrt_mat @ m

    def algebra_rn(self, phi, max_bound: float | None = None) -> np.ndarray:
        """The algebra element ``a`` with a Omega = phi and omega(a* x a) = omega_phi(x).

        For phi in the natural cone (PSD carrier) this is the mirror
        J a' J of the commutant element; it plays the role of the square
        root of the Radon-Nikodym derivative.
        """
        m = _carrier(phi)
        if max_bound is not None and self.majorization_bound(phi) > max_bound:
            raise MajorizationError(
                f"state exceeds majorization bound {max_bound}"
            )
        return m @ self.rho.inv_sqrt_mat

    # -- tangent split --------------------------------------------------------

    def tangent_split(self, chi: TangentFunctional):
        """Write a tangent functional as a scaled difference of two states.

        Returns ``(lam, phi, psi)`` with phi + psi = 2 rho, both faithful,
        and lam * (phi - psi) equal to the functional's matrix.  The step
        is half the largest admissible one, found from the extreme
        generalized eigenvalue of the pencil (c, rho).  A zero functional
        degenerates to (0, rho, rho).
        """
        c = chi.mat
        if np.linalg.norm(c, 2) <= 1e-15:
            return 0.0, self.rho, self.rho
        pencil = hermitian_part(self.rho.inv_sqrt_mat @ c @ self.rho.inv_sqrt_mat)
        radius = float(np.abs(np.linalg.eigvalsh(pencil)).max())
        s = 0.5 / radius
        phi = density(self.rho.mat + s * c)
        psi = density(self.rho.mat - s * c)
        return 1.0 / (2.0 * s), phi, psi


def build_standard_form(rho: DensityMatrix) -> GnsSpace:
    """Construct the GNS space of a faithful density matrix.

    Raises FaithfulnessError if the spectrum sits below the floor, and
    InputError if the cyclic vector fails to be normalized (trace off).
    """
    if rho.eigenvalues[0] < 1e-12:
        raise FaithfulnessError(
            f"reference state not faithful: min eigenvalue {rho.eigenvalues[0]:.3e}"
        )
    g = GnsSpace(rho)
    if abs(g.omega.hs_norm - 1.0) > 1e-12:
        raise InputError("cyclic vector is not normalized; density trace must be 1")
    return g


def modular_conjugate(v) -> np.ndarray:
    """Modular conjugation: vec(M) -> vec(M†), a conjugate-linear involution.

    Fixes every vector of the natural cone and in particular the cyclic
    vector of any standard form.
    """
    return _carrier(v).conj().T


def state_of_vector(v) -> DensityMatrix:
    """Density matrix M M† of the vector state defined by a normalized carrier."""
    m = _carrier(v)
    return density(m @ m.conj().T)


def vector_of_state(sigma: DensityMatrix) -> ConeVector:
    """The unique natural-cone vector vec(sigma^{1/2}) representing a state.

    Inverse of :func:`state_of_vector` on the natural cone.
    """
    return ConeVector(sigma.sqrt_mat)
