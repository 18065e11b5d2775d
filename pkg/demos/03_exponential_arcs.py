"""Exponential arcs: the defining identity and the dual structure.

Samples an arc through a random state, verifies the divergence identity
that defines it, and walks the scalar potential: convexity, the tangent
lines with slope equal to the energy, and the Legendre-transform
identity at matched points.  The symmetric qubit arc is included as a
closed-form anchor (log cosh potential, tanh energy).
"""

import numpy as np

from modman import (
    composition_residual,
    density,
    exponential_arc,
    generator_between,
    random_density,
    random_hermitian,
)

rng = np.random.default_rng(11)
n = 4

rho = random_density(n, rng)
h = random_hermitian(n, rng)
arc = exponential_arc(rho, h)

print("defining identity residuals over a (s, t) grid:")
psi = random_density(n, rng)
worst = max(arc.definition_residual(psi, s, t)
            for s in (0.0, 0.5, 1.0) for t in (0.25, 0.75))
print("  worst:", worst)

print("\npotential along the arc (two routes) and energy:")
for t in (0.0, 0.25, 0.5, 0.75, 1.0):
    print(f"  t={t:4.2f}  zeta={arc.log_partition(t): .6f}"
          f"  divergence route={arc.potential(t): .6f}"
          f"  energy={arc.energy(t): .6f}")

s = 0.4
alpha = arc.energy(s)
print("\nLegendre identity at s=0.4:",
      arc.potential(s) + arc.legendre_dual(alpha) - s * alpha)

print("derivative vs finite difference at t=0.4:",
      np.linalg.norm(arc.derivative(0.4).mat
                     - (arc.point(0.4 + 1e-4).mat
                        - arc.point(0.4 - 1e-4).mat) / 2e-4, 2))

# generators compose additively even when they do not commute
k = random_hermitian(n, rng)
print("composition residual (non-commuting):",
      composition_residual(rho, h, k))

# reaching a prescribed endpoint
sigma = random_density(n, rng)
bridge = generator_between(rho, sigma)
print("endpoint error with the connecting generator:",
      np.linalg.norm(exponential_arc(rho, bridge).point(1.0).mat - sigma.mat, 2))

# closed-form qubit anchor
qubit = exponential_arc(density(np.eye(2) / 2), np.diag([1.0, -1.0]))
print("\nsymmetric qubit arc: zeta(1) =", qubit.log_partition(1.0),
      " log cosh 1 =", np.log(np.cosh(1.0)))
print("                     energy(1) =", qubit.energy(1.0),
      " tanh 1 =", np.tanh(1.0))
