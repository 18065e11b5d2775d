"""Relative entropy of two faithful states, computed three ways.

The spectral route goes through the relative modular operator whose
eigenvalues are the ratios of the two spectra; the trace route is
Tr sigma (log sigma - log tau); the mirrored route uses the operator of
the swapped pair.  All three agree to rounding, here and for every
random pair.
"""

import numpy as np

from modman import (
    araki_divergence,
    araki_dual_form,
    density,
    random_density,
    relative_modular,
    umegaki_divergence,
)

# classical sanity anchor: two diagonal qubits reduce to a scalar
# Kullback-Leibler divergence 0.5 ln(4/3)
sigma = density(np.diag([0.5, 0.5]))
tau = density(np.diag([0.25, 0.75]))
print("diagonal pair:")
print("  spectral  :", araki_divergence(sigma, tau))
print("  trace     :", umegaki_divergence(sigma, tau))
print("  mirrored  :", araki_dual_form(sigma, tau))
print("  0.5 ln 4/3:", 0.5 * np.log(4.0 / 3.0))

rng = np.random.default_rng(7)
print("\nrandom pairs, worst three-way disagreement per dimension:")
for n in (2, 4, 8):
    worst = 0.0
    for _ in range(50):
        s, t = random_density(n, rng), random_density(n, rng)
        vals = (araki_divergence(s, t), umegaki_divergence(s, t),
                araki_dual_form(s, t))
        worst = max(worst, max(vals) - min(vals))
    print(f"  n={n}: {worst:.3e}")

# the operator behind the spectral route
s, t = random_density(3, rng), random_density(3, rng)
op = relative_modular(s, t)
print("\neigenvalue grid of the relative modular operator (n=3):")
print(np.round(op.eigenvalue_grid, 3))
v = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
tau_inv = np.linalg.inv(t.mat)
print("spectral action vs direct sigma M tau^{-1}:",
      np.linalg.norm(op.apply(v) - s.mat @ v @ tau_inv))
