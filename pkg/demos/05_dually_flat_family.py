"""A two-parameter dually flat family with Newton coordinate inversion.

Builds a family over a random 4x4 state, checks the Legendre structure
(gradient of the potential = expectation coordinates, Hessian = metric),
inverts eta -> theta by damped Newton, samples both kinds of geodesic
and closes with the equal-energy Pythagorean identity.
"""

import numpy as np

from modman import (
    build_standard_form,
    density,
    m_geodesic,
    random_density,
    random_hermitian,
    random_traceless_hermitian,
    submanifold_model,
    tangent_functional,
    umegaki_divergence,
)

rng = np.random.default_rng(3)
n, m = 4, 2

rho = random_density(n, rng)
model = submanifold_model(rho, [random_hermitian(n, rng) for _ in range(m)])

theta = np.array([0.6, -0.4])
eta = model.dual_coords(theta)
print("theta           :", theta)
print("eta(theta)      :", np.round(eta, 6))
print("potential       :", model.potential(theta))
print("log partition   :", model.log_partition(theta))
print("metric at theta :")
print(np.round(model.metric_at(theta), 6))

# Legendre structure: numerical gradient and Hessian of the potential
delta = 1e-3
grad = np.array([
    (model.log_partition(theta + delta * e) - model.log_partition(theta - delta * e))
    / (2 * delta)
    for e in np.eye(m)
])
print("\n|grad potential - eta| :", np.abs(grad - eta).max())

# Newton inversion back to theta
recovered = model.solve_theta(eta)
print("Newton round trip error:", np.abs(recovered - theta).max())

# scalar benchmark: eta = tanh(theta) on the symmetric qubit family
qubit = submanifold_model(density(np.eye(2) / 2), [np.diag([1.0, -1.0])])
print("solve(eta=0.5) =", qubit.solve_theta([0.5])[0],
      "  atanh(0.5) =", np.arctanh(0.5))

# geodesics of the two affine structures
other = np.array([-0.5, 0.3])
mid_e = model.e_geodesic(theta, other, 0.5)
print("\nmidpoint of the theta-line, divergence to endpoints:",
      round(umegaki_divergence(mid_e, model.state_at(theta)), 6),
      round(umegaki_divergence(mid_e, model.state_at(other)), 6))
mid_m = m_geodesic(model.state_at(theta), model.state_at(other), 0.5)
print("midpoint of the mixture line, divergence to endpoints:",
      round(umegaki_divergence(mid_m, model.state_at(theta)), 6),
      round(umegaki_divergence(mid_m, model.state_at(other)), 6))

# Pythagoras at equal energy: project a perturbed state onto the arc
arc = model.arc_towards(theta)
s, t = 0.35, 0.9
gs = arc.point(s)
h = arc.generator
e = h - (np.trace(h).real / n) * np.eye(n)
d = random_traceless_hermitian(n, rng)
d = d - (np.trace(d @ h).real / np.trace(e @ h).real) * e
_, psi, _ = build_standard_form(gs).tangent_split(tangent_functional(d))
print("\nequal-energy probe, Pythagorean residual:",
      model.pythagorean_residual(psi, theta, s, t))
print("decomposed:",
      round(umegaki_divergence(psi, arc.point(t)), 6), "=",
      round(umegaki_divergence(psi, gs), 6), "+",
      round(umegaki_divergence(gs, arc.point(t)), 6))
