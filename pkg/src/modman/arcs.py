"""Exponential arcs of faithful density matrices.

An arc with base ``rho`` and Hermitian generator ``h`` is the path

    t -> exp(log rho + t h - zeta(t)),    zeta(t) = log Tr exp(log rho + t h),

a one-parameter exponential family through ``rho``.  Its defining
property, checked by :meth:`ExponentialArc.definition_residual`, is that
moving the second argument of the relative entropy along the arc is
affine in t up to divergences between arc points.  The normalization
``zeta`` doubles as the scalar potential of the arc; its Legendre
transform, the energy along the arc and the derivative functional give
the full dual structure in one place.

The arc parameter is accepted on all of R (the identity-based checks
are analytic in t), with the overflow guard of
:func:`modman.matfun.normalized_exponential` as the only restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .divergence import umegaki_divergence
from .errors import ConstantGeneratorError, DimensionMismatch
from .matfun import (
    DensityMatrix,
    as_hermitian,
    exp_divided_difference,
    hermitian_part,
    normalized_exponential,
)
from .standard_form import TangentFunctional


@dataclass(frozen=True)
class ExponentialArc:
    """Arc through ``rho`` with generator ``h``; immutable, cheap to sample."""

    rho: DensityMatrix
    generator: np.ndarray

    @property
    def dim(self) -> int:
        return self.rho.dim

    @cached_property
    def _log_rho(self) -> np.ndarray:
        return self.rho.log_mat

    def point(self, t: float) -> DensityMatrix:
        """The state at parameter t."""
        if t == 0.0:
            return self.rho
        state, _ = normalized_exponential(self._log_rho + t * self.generator)
        return state

    def log_partition(self, t: float) -> float:
        """Normalization zeta(t); zero at t = 0, convex in t."""
        if t == 0.0:
            return 0.0
        _, log_z = normalized_exponential(self._log_rho + t * self.generator)
        return log_z

    def energy(self, t: float) -> float:
        """Expectation of the generator at the point t.

        Strictly increasing in t whenever the generator is not a
        multiple of the identity; it is the coordinate dual to t.
        """
        return self.point(t).expect(self.generator)

    def potential(self, t: float) -> float:
        """Scalar potential D(gamma_0 || gamma_t) + t * energy(0).

        Computed through the trace-formula divergence, deliberately not
        through zeta: the equality of the two routes is a theorem, and
        keeping both paths makes it checkable.
        """
        return umegaki_divergence(self.rho, self.point(t)) + t * self.energy(0.0)

    def definition_residual(self, psi: DensityMatrix, s: float, t: float) -> float:
        """Residual of the arc identity between parameters s and t.

        |D(psi||gamma_t) - D(psi||gamma_s) - D(gamma_s||gamma_t)
          - (t-s) (energy(s) - Tr(psi h))|, which vanishes identically
        for a true exponential arc.
        """
        gs, gt = self.point(s), self.point(t)
        lhs = umegaki_divergence(psi, gt)
        rhs = (umegaki_divergence(psi, gs) + umegaki_divergence(gs, gt)
               + (t - s) * (gs.expect(self.generator)
                            - psi.expect(self.generator)))
        return abs(lhs - rhs)

    def derivative(self, t: float) -> TangentFunctional:
        """Tangent functional of the arc at parameter t.

        The matrix of the functional is the integral of
        gamma^u (h - energy) gamma^{1-u} over u in [0, 1], evaluated by
        divided differences of exp on the spectrum of log gamma_t; it is
        traceless by construction and matches the finite-difference
        derivative of :meth:`point` to second order.
        """
        g = self.point(t)
        centered = self.generator - g.expect(self.generator) * np.eye(self.dim)
        u = g.eigenvectors
        log_p = np.log(g.eigenvalues)
        kernel = exp_divided_difference(log_p[:, None], log_p[None, :])
        bt = u.conj().T @ centered @ u
        c = hermitian_part(u @ (bt * kernel) @ u.conj().T)
        c = c - (np.trace(c).real / self.dim) * np.eye(self.dim)
        return TangentFunctional(c)

    def legendre_dual(self, alpha: float, tol: float = 1e-12) -> float:
        """Legendre transform sup{alpha t - potential(t) : t in [0, 1]}.

        The objective is strictly concave (the potential is strictly
        convex for a non-constant generator), so golden-section search
        converges unconditionally; ``tol`` is the bracket width in t.
        """
        def objective(t: float) -> float:
            return alpha * t - self.log_partition(t)

        return _golden_max(objective, 0.0, 1.0, tol)


def _golden_max(f, lo: float, hi: float, tol: float) -> float:
    """Golden-section maximum of a concave function on [lo, hi]."""
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return max(fc, fd, f(lo), f(hi))


def exponential_arc(rho: DensityMatrix, h) -> ExponentialArc:
    """Build an arc from a faithful base state and a Hermitian generator."""
    hm = as_hermitian(h)
    if hm.shape[0] != rho.dim:
        raise DimensionMismatch(f"dimension mismatch: {rho.dim} vs {hm.shape[0]}")
    return ExponentialArc(rho, hm)


def generator_between(rho: DensityMatrix, sigma: DensityMatrix) -> np.ndarray:
    """The centered generator whose arc from rho reaches sigma at t = 1.

    Returns log sigma - log rho shifted so its expectation in rho
    vanishes; generators are unique only up to additive constants and
    this fixes the gauge.  Equal inputs give the zero matrix.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    h = sigma.log_mat - rho.log_mat
    h = h - rho.expect(h) * np.eye(rho.dim)
    if np.linalg.norm(h, 2) <= 1e-12:
        if np.linalg.norm(rho.mat - sigma.mat, 2) <= 1e-10:
            return np.zeros((rho.dim, rho.dim), dtype=complex)
        raise ConstantGeneratorError(
            "centered generator vanishes although the states differ"
        )
    return h


def composition_residual(rho: DensityMatrix, h, k) -> float:
    """Additivity check for composed arcs.

    Follow the arc with generator h to its endpoint, continue with
    generator k, and compare against the single arc with generator
    h + k; the norm of the endpoint difference is returned and is
    rounding noise even for non-commuting generators, because the
    normalizations are scalars.
    """
    hm, km = as_hermitian(h), as_hermitian(k)
    first = exponential_arc(rho, hm).point(1.0)
    two_step = exponential_arc(first, km).point(1.0)
    one_step = exponential_arc(rho, hm + km).point(1.0)
    return float(np.linalg.norm(two_step.mat - one_step.mat, 2))
