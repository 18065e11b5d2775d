"""Tour of the standard representation built on a random faithful state.

Builds the GNS space of a 4x4 density matrix and walks through the
operators living on it: modular powers, the conjugation, the modular
flow with its equilibrium boundary identity, the positivity cones and
the Radon-Nikodym elements of a second state.
"""

import numpy as np

from modman import (
    build_standard_form,
    modular_conjugate,
    random_density,
    random_hermitian,
    state_of_vector,
    vector_of_state,
)

rng = np.random.default_rng(2024)
n = 4

rho = random_density(n, rng)
g = build_standard_form(rho)
print("spectrum of the reference state:", np.round(rho.eigenvalues, 4))

# The cyclic vector reproduces the state as a vector state.
x = random_hermitian(n, rng)
print("Tr(rho x)          =", rho.expect(x))
print("(x Omega, Omega)   =",
      np.trace((x @ g.omega.mat) @ g.omega.mat.conj().T).real)

# Tomita identities, all exact in finite dimension.
omega = g.omega.mat
print("\n|J Omega - Omega|      =",
      np.linalg.norm(modular_conjugate(omega) - omega))
print("|Delta Omega - Omega|  =",
      np.linalg.norm(g.apply_modular_power(1.0, omega) - omega))
closure = modular_conjugate(g.apply_modular_power(0.5, x @ omega))
print("|S x Omega - x* Omega| =", np.linalg.norm(closure - x.conj().T @ omega))

# The flow leaves the reference expectation invariant; the boundary
# identity ties the flow at t - i to operator reordering.
t = 0.7
y = random_hermitian(n, rng)
print("\nflow invariance residual:",
      abs(np.trace(rho.mat @ g.modular_flow(x, t)).real - rho.expect(x)))
print("boundary identity residual:", g.kms_residual(x, y, t))

# Cones: the natural cone (alpha = 1/4) consists of PSD carriers.
a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
cone_sample = a @ omega @ a.conj().T
print("\nx J x Omega in natural cone:", g.cone_membership(cone_sample, 0.25))
print("cyclic vector in every cone:",
      all(g.cone_membership(g.omega, al) for al in (0.0, 0.25, 0.5)))

# Radon-Nikodym elements of a second faithful state.
sigma = random_density(n, rng)
phi = vector_of_state(sigma)
b = g.commutant_rn(phi)
a_el = g.algebra_rn(phi)
print("\nmajorization constant lambda:", g.majorization_bound(phi))
print("|a Omega - Phi|:", np.linalg.norm(a_el @ omega - phi.mat))
print("|a - mirror of commutant element|:",
      np.linalg.norm(a_el - b.conj().T))
print("round trip state_of_vector(vector_of_state(sigma)) error:",
      np.linalg.norm(state_of_vector(phi).mat - sigma.mat))
