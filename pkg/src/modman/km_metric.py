"""Kubo-Mori (Bogoliubov) scalar product on tangent spaces.

At a base state ``rho`` the scalar product of two generator directions
h, k is

    <h, k> = sum_ij L(p_i, p_j) conj(h_c[i,j]) k_c[i,j]

in the eigenbasis of rho, where L is the logarithmic mean of the
eigenvalues and h_c, k_c are the generators centered to zero
expectation.  The same number is produced two more ways for
cross-checking: as the squared-norm form of the operator that rescales
carrier entries by sqrt((p_i/p_j - 1)/log(p_i/p_j)), and as the mixed
second derivative of the divergence along two exponential arcs
(evaluated by finite differences here).  This is the metric of linear
response theory and the Hessian metric of the log-partition potential.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .arcs import exponential_arc
from .divergence import umegaki_divergence
from .errors import InputError
from .matfun import (
    DensityMatrix,
    as_hermitian,
    exp_divided_difference,
    hermitian_part,
)
from .standard_form import TangentFunctional, _carrier


def log_mean(p, q) -> np.ndarray:
    """Logarithmic mean (p - q) / (log p - log q), equal to p on the diagonal.

    Shares the guarded divided-difference kernel of the matrix
    exponential: L(p, q) = exp-divided-difference(log p, log q).
    """
    return exp_divided_difference(np.log(p), np.log(q))


@dataclass(frozen=True)
class MetricContext:
    """Base point of the metric with its cached spectral grids."""

    rho: DensityMatrix

    @property
    def dim(self) -> int:
        return self.rho.dim

    @cached_property
    def _log_mean_grid(self) -> np.ndarray:
        p = self.rho.eigenvalues
        return log_mean(p[:, None], p[None, :])

    def _center(self, h) -> np.ndarray:
        hm = as_hermitian(h)
        return hm - self.rho.expect(hm) * np.eye(self.dim)

    def _to_basis(self, m) -> np.ndarray:
        u = self.rho.eigenvectors
        return u.conj().T @ m @ u

    def _from_basis(self, m) -> np.ndarray:
        u = self.rho.eigenvectors
        return u @ m @ u.conj().T

    def km_inner(self, h, k) -> float:
        """Kubo-Mori scalar product of two generator directions.

        Symmetric, bilinear over the reals, positive definite on
        centered directions; multiples of the identity pair to zero.
        """
        ht = self._to_basis(self._center(h))
        kt = self._to_basis(self._center(k))
        return float(np.sum(self._log_mean_grid * np.conj(ht) * kt).real)

    def norm(self, h) -> float:
        return float(np.sqrt(max(self.km_inner(h, h), 0.0)))

    def t_operator_apply(self, v) -> np.ndarray:
        """Apply the symmetric square root of the integrated modular powers.

        In the eigenbasis of rho, carrier entries are multiplied by
        sqrt((p_i/p_j - 1)/log(p_i/p_j)); the squared norm of the result
        equals the integral over u in [0, 1] of the squared norm of the
        (u/2)-modular power of the vector.
        """
        m = self._to_basis(_carrier(v))
        p = self.rho.eigenvalues
        factor = np.sqrt(self._log_mean_grid / p[None, :])
        return self._from_basis(m * factor)

    def eguchi_fd_inner(self, h, k, step: float = 1e-3) -> float:
        """Metric from second derivatives of the divergence, by differencing.

        Central mixed second difference of -D(arc(rho,k)_s || arc(rho,h)_t)
        at s = t = 0; converges to :meth:`km_inner` at rate step^2.
        """
        if not 0.0 < step <= 0.1:
            raise InputError(f"step must lie in (0, 0.1], got {step}")
        eta = exponential_arc(self.rho, as_hermitian(k))
        gamma = exponential_arc(self.rho, as_hermitian(h))
        ep, em = eta.point(step), eta.point(-step)
        gp, gm = gamma.point(step), gamma.point(-step)
        mixed = (umegaki_divergence(ep, gp) - umegaki_divergence(ep, gm)
                 - umegaki_divergence(em, gp) + umegaki_divergence(em, gm))
        return float(-mixed / (4.0 * step * step))

    def tangent_of_generator(self, h) -> TangentFunctional:
        """Tangent functional of the arc generated by h at the base point.

        The matrix is the integral of rho^u h_c rho^{1-u} over u in
        [0, 1]; the map is linear in h and injective on centered
        generators, so it identifies generator directions with tangent
        vectors.
        """
        ht = self._to_basis(self._center(h))
        c = self._from_basis(ht * self._log_mean_grid)
        c = hermitian_part(c)
        c = c - (np.trace(c).real / self.dim) * np.eye(self.dim)
        return TangentFunctional(c)

    def generator_of_tangent(self, chi: TangentFunctional) -> np.ndarray:
        """Inverse identification: the centered generator of a tangent vector.

        Divides by the logarithmic-mean grid in the eigenbasis; the
        result is automatically centered because the input is traceless.
        """
        ct = self._to_basis(chi.mat)
        return hermitian_part(self._from_basis(ct / self._log_mean_grid))


def metric_context(rho: DensityMatrix) -> MetricContext:
    """Metric at the given faithful base state."""
    return MetricContext(rho)
