"""Dually flat parametric families of faithful density matrices.

A model is a reference state ``rho`` with a linearly independent tuple
of centered Hermitian generators h_1..h_m.  Natural coordinates theta
parametrize the states

    state(theta) = exp(log rho + theta^i h_i - logZ(theta)),

the expectation coordinates are eta_i(theta) = Tr(state(theta) h_i),
and the convex potential logZ(theta) links the two: its gradient is
eta and its Hessian is the Kubo-Mori Gram matrix of the generators at
state(theta).  Straight lines in theta are the geodesics of one affine
structure, convex mixtures of density matrices those of the dual one.
The coordinate inversion eta -> theta is a damped Newton iteration on
the convex gap logZ(theta) - theta . eta.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .arcs import ExponentialArc, exponential_arc
from .divergence import umegaki_divergence
from .errors import (
    FaithfulnessError,
    InputError,
    NotAttainedError,
    OverflowError,
    PreconditionError,
)
from .km_metric import metric_context
from .matfun import (
    DensityMatrix,
    as_hermitian,
    density,
    normalized_exponential,
)

_GRAM_FLOOR = 1e-10


@dataclass(frozen=True)
class SubmanifoldModel:
    """Reference state plus centered, independent generator directions."""

    rho: DensityMatrix
    generators: tuple

    @property
    def dim(self) -> int:
        return self.rho.dim

    @property
    def order(self) -> int:
        """Number of generators, i.e. the manifold dimension."""
        return len(self.generators)

    @cached_property
    def _log_rho(self) -> np.ndarray:
        return self.rho.log_mat

    def _exponent(self, theta: np.ndarray) -> np.ndarray:
        total = self._log_rho.copy()
        for coeff, h in zip(theta, self.generators):
            total = total + coeff * h
        return total

    def _theta(self, theta) -> np.ndarray:
        v = np.asarray(theta, dtype=float).reshape(-1)
        if v.shape[0] != self.order:
            raise InputError(f"theta must have length {self.order}, got {v.shape[0]}")
        if not np.all(np.isfinite(v)):
            raise InputError("theta entries must be finite")
        return v

    def state_at(self, theta) -> DensityMatrix:
        """The faithful state with natural coordinates theta."""
        t = self._theta(theta)
        if not t.any():
            return self.rho
        state, _ = normalized_exponential(self._exponent(t))
        return state

    def arc_towards(self, theta) -> ExponentialArc:
        """The exponential arc from the reference state to state_at(theta)."""
        t = self._theta(theta)
        h = sum((c * g for c, g in zip(t, self.generators)),
                np.zeros((self.dim, self.dim), dtype=complex))
        return exponential_arc(self.rho, h)

    def dual_coords(self, theta) -> np.ndarray:
        """Expectation coordinates eta_i = Tr(state(theta) h_i)."""
        state = self.state_at(theta)
        return np.array([state.expect(h) for h in self.generators])

    def log_partition(self, theta) -> float:
        """Convex potential logZ(theta); gradient eta, Hessian the metric."""
        t = self._theta(theta)
        if not t.any():
            return 0.0
        _, log_z = normalized_exponential(self._exponent(t))
        return log_z

    def potential(self, theta) -> float:
        """The potential by its divergence form, an independent route.

        D(rho || state(theta)) + theta . (reference expectations); equal
        to :meth:`log_partition` because the generators are centered.
        """
        t = self._theta(theta)
        ref = np.array([self.rho.expect(h) for h in self.generators])
        return umegaki_divergence(self.rho, self.state_at(t)) + float(t @ ref)

    def metric_at(self, theta) -> np.ndarray:
        """Gram matrix of the generators in the Kubo-Mori product at theta."""
        ctx = metric_context(self.state_at(theta))
        m = self.order
        g = np.empty((m, m))
        for i in range(m):
            for j in range(i, m):
                g[i, j] = g[j, i] = ctx.km_inner(self.generators[i],
                                                 self.generators[j])
        return g

    def solve_theta(self, eta, tol: float = 1e-11, max_iter: int = 200,
                    max_halvings: int = 60) -> np.ndarray:
        """Invert the expectation coordinates by damped Newton iteration.

        Minimizes the strictly convex gap logZ(theta) - theta . eta whose
        gradient is eta(theta) - eta, taking Newton steps through the
        metric with Armijo backtracking.  Raises NotAttainedError when
        the target lies outside the open set of expectations reachable
        by faithful states (detected by iteration overrun, a stalled
        line search, or the iterate leaving the trust region).
        """
        target = np.asarray(eta, dtype=float).reshape(-1)
        if target.shape[0] != self.order:
            raise InputError(f"eta must have length {self.order}")
        if not np.all(np.isfinite(target)):
            raise InputError("eta entries must be finite")
        theta = np.zeros(self.order)

        def gap(t):
            return self.log_partition(t) - float(t @ target)

        current = gap(theta)
        for _ in range(max_iter):
            residual = self.dual_coords(theta) - target
            if np.abs(residual).max() <= tol:
                return theta
            step_dir = np.linalg.solve(self.metric_at(theta), -residual)
            if np.abs(residual).max() <= 1e-6:
                # quadratic-convergence regime: the gap decrease is below
                # float resolution, so sufficient-decrease tests would stall;
                # take the raw Newton step instead
                theta = theta + step_dir
                continue
            slope = float(residual @ step_dir)  # gradient . direction < 0
            step = 1.0
            for _ in range(max_halvings):
                candidate = theta + step * step_dir
                try:
                    value = gap(candidate)
                except (OverflowError, FaithfulnessError):
                    step *= 0.5
                    continue
                if value <= current + 1e-4 * step * slope:
                    break
                step *= 0.5
            else:
                raise NotAttainedError(
                    "line search stalled; expectation target appears unattainable"
                )
            theta, current = theta + step * step_dir, value
            if np.linalg.norm(theta) > 1e3:
                raise NotAttainedError(
                    "natural coordinates diverged; expectation target on or "
                    "outside the attainable boundary"
                )
        raise NotAttainedError("no convergence within the iteration budget")

    def e_geodesic(self, theta_a, theta_b, t: float) -> DensityMatrix:
        """Geodesic of the natural-coordinate affine structure."""
        a, b = self._theta(theta_a), self._theta(theta_b)
        return self.state_at((1.0 - t) * a + t * b)

    def pythagorean_residual(self, psi: DensityMatrix, theta, s: float,
                             t: float) -> float:
        """Orthogonality defect |D(psi||g_t) - D(psi||g_s) - D(g_s||g_t)|.

        Requires psi to have the same generator expectation as the arc
        point at s; then the point at s is the divergence projection of
        psi onto the arc and the three divergences close exactly.
        """
        arc = self.arc_towards(theta)
        gs, gt = arc.point(s), arc.point(t)
        mismatch = abs(psi.expect(arc.generator) - gs.expect(arc.generator))
        if mismatch > 1e-8:
            raise PreconditionError(
                f"psi is not energy-matched to the arc point: mismatch {mismatch:.3e}"
            )
        return abs(umegaki_divergence(psi, gt) - umegaki_divergence(psi, gs)
                   - umegaki_divergence(gs, gt))


def m_geodesic(sigma_a: DensityMatrix, sigma_b: DensityMatrix,
               t: float) -> DensityMatrix:
    """Mixture geodesic (1 - t) sigma_a + t sigma_b of the dual structure."""
    return density((1.0 - t) * sigma_a.mat + t * sigma_b.mat)


def submanifold_model(rho: DensityMatrix, generators,
                      orthonormalize: bool = False) -> SubmanifoldModel:
    """Build a model from a reference state and generator directions.

    Generators are hermitized and centered to zero expectation in rho.
    Their Gram matrix under the Kubo-Mori product must be positive
    definite (the operational meaning of linear independence); with
    ``orthonormalize`` they are additionally Gram-Schmidt-orthonormalized
    in that product, which makes the metric at theta = 0 the identity.
    """
    ctx = metric_context(rho)
    n = rho.dim
    cleaned = []
    for h in generators:
        hm = as_hermitian(h)
        if hm.shape[0] != n:
            raise InputError(f"generator dimension {hm.shape[0]} != state dimension {n}")
        cleaned.append(hm - rho.expect(hm) * np.eye(n))
    if not cleaned:
        raise InputError("a model needs at least one generator")

    if orthonormalize:
        ortho = []
        for h in cleaned:
            for e in ortho:
                h = h - ctx.km_inner(e, h) * e
            scale = ctx.norm(h)
            if scale <= np.sqrt(_GRAM_FLOOR):
                raise InputError("generators are linearly dependent")
            ortho.append(h / scale)
        cleaned = ortho

    m = len(cleaned)
    gram = np.empty((m, m))
    for i in range(m):
        for j in range(i, m):
            gram[i, j] = gram[j, i] = ctx.km_inner(cleaned[i], cleaned[j])
    if np.linalg.eigvalsh(gram)[0] <= _GRAM_FLOOR:
        raise InputError(
            "generators are linearly dependent: Kubo-Mori Gram matrix is singular"
        )
    return SubmanifoldModel(rho, tuple(cleaned))
