"""Runnable consistency checks over seeded random instances.

Every identity the library is built on is packaged here as a check
that draws random instances, evaluates a residual and compares the
worst case against a fixed tolerance.  The registry drives both the
``verify`` CLI subcommand and the acceptance test suite; check names
are stable identifiers and each carries its anchor string so reports
stay traceable to the underlying statement.

Residual conventions: identity checks report |lhs - rhs|; inequality
checks report the violation magnitude (zero when satisfied).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .arcs import composition_residual, exponential_arc
from .divergence import araki_divergence, araki_dual_form, umegaki_divergence
from .km_metric import metric_context
from .matfun import density, matrix_power_complex
from .sampling import (
    complex_gaussian,
    random_density,
    random_hermitian,
    random_traceless_hermitian,
)
from .standard_form import (
    build_standard_form,
    modular_conjugate,
    tangent_functional,
    vector_of_state,
)
from .submanifold import submanifold_model

DEFAULT_DIMS = (2, 3, 4, 5, 6, 7, 8)
DEFAULT_TRIALS = 100

_ARC_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


def _gl64():
    nodes, weights = np.polynomial.legendre.leggauss(64)
    return 0.5 * (nodes + 1.0), 0.5 * weights

_GL_NODES, _GL_WEIGHTS = _gl64()


def _centered_norm(h, rho) -> float:
    hc = h - rho.expect(h) * np.eye(rho.dim)
    return float(np.linalg.norm(hc, 2))


def _unit_generator(n, rng, rho, min_centered=0.0):
    for _ in range(20):
        h = random_hermitian(n, rng)
        if _centered_norm(h, rho) >= min_centered:
            return h
    return random_traceless_hermitian(n, rng)


# -- individual trial functions (rng, dim) -> worst residual -----------------


def _trial_divergence_agreement(rng, n):
    sigma, tau = random_density(n, rng), random_density(n, rng)
    values = (araki_divergence(sigma, tau),
              umegaki_divergence(sigma, tau),
              araki_dual_form(sigma, tau))
    return max(abs(a - b) for a in values for b in values)


def _trial_arc_definition(rng, n):
    rho = random_density(n, rng)
    arc = exponential_arc(rho, random_hermitian(n, rng))
    psi = random_density(n, rng)
    return max(arc.definition_residual(psi, s, t)
               for s in _ARC_GRID for t in _ARC_GRID)


def _trial_energy_monotone(rng, n):
    rho = random_density(n, rng)
    arc = exponential_arc(rho, _unit_generator(n, rng, rho, min_centered=0.1))
    energies = np.array([arc.energy(t) for t in np.linspace(0.0, 1.0, 6)])
    return max(0.0, -float(np.diff(energies).min()))


def _trial_tangent_line(rng, n):
    rho = random_density(n, rng)
    arc = exponential_arc(rho, random_hermitian(n, rng))
    grid = np.linspace(0.0, 1.0, 6)
    pot = {s: arc.potential(s) for s in grid}
    worst = 0.0
    for s in grid:
        slope = arc.energy(s)
        for t in grid:
            gap = pot[t] - pot[s] - (t - s) * slope
            worst = max(worst, -gap)
    return worst


def _trial_legendre_identity(rng, n):
    rho = random_density(n, rng)
    arc = exponential_arc(rho, _unit_generator(n, rng, rho, min_centered=0.1))
    worst = 0.0
    for s in np.arange(0.0, 1.01, 0.1):
        alpha = arc.energy(s)
        worst = max(worst, abs(arc.potential(s) + arc.legendre_dual(alpha)
                               - s * alpha))
    return worst


def _trial_potential_identity(rng, n):
    rho = random_density(n, rng)
    arc = exponential_arc(rho, random_hermitian(n, rng))
    return max(abs(arc.potential(t) - arc.log_partition(t))
               for t in (0.0, 0.25, 0.5, 0.75, 1.0))


def _trial_metric_quadrature(rng, n):
    rho = random_density(n, rng)
    ctx = metric_context(rho)
    h, k = random_hermitian(n, rng), random_hermitian(n, rng)
    hc = h - rho.expect(h) * np.eye(n)
    kc = k - rho.expect(k) * np.eye(n)
    quad = 0.0
    for u, w in zip(_GL_NODES, _GL_WEIGHTS):
        quad += w * np.trace(matrix_power_complex(rho, u) @ hc
                             @ matrix_power_complex(rho, 1 - u) @ kc).real
    return abs(ctx.km_inner(h, k) - quad)


def _trial_eguchi_agreement(rng, n):
    rho = random_density(n, rng)
    ctx = metric_context(rho)
    h, k = random_hermitian(n, rng), random_hermitian(n, rng)
    return abs(ctx.eguchi_fd_inner(h, k, step=1e-3) - ctx.km_inner(h, k))


def _trial_eguchi_order(rng, n):
    rho = random_density(n, rng)
    ctx = metric_context(rho)
    h, k = random_hermitian(n, rng), random_hermitian(n, rng)
    exact = ctx.km_inner(h, k)
    errors = [abs(ctx.eguchi_fd_inner(h, k, step=s) - exact)
              for s in (4e-3, 2e-3, 1e-3)]
    worst = 0.0
    for bigger, smaller in zip(errors, errors[1:]):
        # halving the step must quarter the error, up to a noise floor
        worst = max(worst, smaller - max(0.45 * bigger, 5e-10))
    return max(0.0, worst)


def _check_metric_closed_form(rng, n):
    ctx = metric_context(density(np.diag([0.75, 0.25])))
    pauli_x = np.array([[0.0, 1.0], [1.0, 0.0]])
    return abs(ctx.km_inner(pauli_x, pauli_x) - 1.0 / np.log(3.0))


def _trial_divergence_derivative(rng, n):
    rho = random_density(n, rng)
    h = random_hermitian(n, rng)
    psi = random_density(n, rng)
    arc = exponential_arc(rho, h)
    eps = 1e-4
    fd = (umegaki_divergence(psi, arc.point(eps))
          - umegaki_divergence(psi, arc.point(-eps))) / (2 * eps)
    return abs(fd - (rho.expect(h) - psi.expect(h)))


def _trial_generator_additivity(rng, n):
    rho = random_density(n, rng)
    return composition_residual(rho, random_hermitian(n, rng),
                                random_hermitian(n, rng))


def _trial_kms(rng, n):
    g = build_standard_form(random_density(n, rng))
    x, y = random_hermitian(n, rng), random_hermitian(n, rng)
    return max(g.kms_residual(x, y, t)
               for t in (0.0, 0.3, 1.7, float(rng.uniform(-2.0, 2.0))))


def _trial_tomita(rng, n):
    g = build_standard_form(random_density(n, rng))
    omega = g.omega.mat
    worst = float(np.linalg.norm(modular_conjugate(omega) - omega, 2))
    worst = max(worst, float(np.linalg.norm(
        g.apply_modular_power(1.0, omega) - omega, 2)))
    v = complex_gaussian(n, rng)
    worst = max(worst, float(np.linalg.norm(
        modular_conjugate(modular_conjugate(v)) - v, 2)))
    x = complex_gaussian(n, rng)
    closure = modular_conjugate(g.apply_modular_power(0.5, x @ omega))
    worst = max(worst, float(np.linalg.norm(closure - x.conj().T @ omega, 2)))
    cone = x @ omega @ x.conj().T  # natural-cone sample, must be J-fixed
    worst = max(worst, float(np.linalg.norm(modular_conjugate(cone) - cone, 2)))
    if not g.cone_membership(cone, 0.25):
        worst = max(worst, 1.0)
    return worst


def _trial_radon_nikodym(rng, n):
    g = build_standard_form(random_density(n, rng))
    sigma = random_density(n, rng)
    phi = vector_of_state(sigma)
    b = g.commutant_rn(phi)
    a = g.algebra_rn(phi)
    worst = float(np.linalg.norm(g.rho.sqrt_mat @ b - phi.mat, 2))
    worst = max(worst, float(np.linalg.norm(a @ g.rho.sqrt_mat - phi.mat, 2)))
    worst = max(worst, float(np.linalg.norm(a - b.conj().T, 2)))
    for _ in range(3):
        x = complex_gaussian(n, rng)
        lhs = np.trace(g.rho.mat @ a.conj().T @ x @ a)
        rhs = np.trace(sigma.mat @ x)
        worst = max(worst, float(abs(lhs - rhs)))
    lam = g.majorization_bound(phi)
    for _ in range(3):
        x = complex_gaussian(n, rng)
        num = np.linalg.norm(x @ phi.mat) ** 2
        den = np.linalg.norm(x @ g.rho.sqrt_mat) ** 2
        worst = max(worst, max(0.0, (num / den - lam) / max(lam, 1.0)))
    u = np.linalg.svd(b)[0][:, 0]
    witness = np.outer(u, u.conj()) @ g.rho.inv_sqrt_mat
    num = np.linalg.norm(witness @ phi.mat) ** 2
    den = np.linalg.norm(witness @ g.rho.sqrt_mat) ** 2
    worst = max(worst, abs(num / den - lam) / max(lam, 1.0))
    return worst


def _random_model(rng, n, m=2):
    rho = random_density(n, rng)
    return submanifold_model(rho, [random_hermitian(n, rng) for _ in range(m)])


def _trial_flatness_fd(rng, n):
    model = _random_model(rng, n)
    theta = 0.3 * rng.standard_normal(2)
    delta = 1e-3
    worst = 0.0
    eta = model.dual_coords(theta)
    g = model.metric_at(theta)
    for j in range(2):
        e = np.zeros(2)
        e[j] = delta
        grad_fd = (model.log_partition(theta + e)
                   - model.log_partition(theta - e)) / (2 * delta)
        worst = max(worst, abs(grad_fd - eta[j]))
        jac_fd = (model.dual_coords(theta + e)
                  - model.dual_coords(theta - e)) / (2 * delta)
        worst = max(worst, float(np.abs(jac_fd - g[:, j]).max()))
    return worst


def _trial_newton_round_trip(rng, n):
    model = _random_model(rng, n)
    theta_star = rng.standard_normal(2)
    recovered = model.solve_theta(model.dual_coords(theta_star))
    return float(np.abs(recovered - theta_star).max())


def _check_scalar_inversion(rng, n):
    model = submanifold_model(density(np.eye(2) / 2), [np.diag([1.0, -1.0])])
    theta = model.solve_theta([0.5])
    return abs(float(theta[0]) - float(np.arctanh(0.5)))


def _trial_pythagoras(rng, n):
    rho = random_density(n, rng)
    h = random_hermitian(n, rng)
    model = submanifold_model(rho, [h])
    s, t = 0.35, 0.9
    arc = model.arc_towards([1.0])
    gs = arc.point(s)
    hm = arc.generator
    d = random_traceless_hermitian(n, rng)
    e = hm - (np.trace(hm).real / n) * np.eye(n)
    d = d - (np.trace(d @ hm).real / np.trace(e @ hm).real) * e
    _, psi, _ = build_standard_form(gs).tangent_split(tangent_functional(d))
    return model.pythagorean_residual(psi, [1.0], s, t)


def _trial_nondegeneracy(rng, n):
    ctx = metric_context(random_density(n, rng))
    # probe an exactly degenerate direction, a barely tilted one (which
    # must trigger the tiny-norm branch) and a natural-scale one (which
    # must not); report the centered norm whenever the form is tiny
    probes = (
        float(rng.standard_normal()) * np.eye(n),
        float(rng.standard_normal()) * np.eye(n)
        + 10.0 ** rng.uniform(-8.0, -6.5) * random_hermitian(n, rng),
        random_hermitian(n, rng),
    )
    worst = 0.0
    for h in probes:
        if ctx.km_inner(h, h) <= 1e-12:
            worst = max(worst, float(np.linalg.norm(ctx._center(h), 2)))
    return worst


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    tolerance: float
    trial: Callable
    deterministic: bool = False


CHECKS = (
    Check("divergence-three-way-agreement", "sec12.divergence-equality",
          1e-9, _trial_divergence_agreement),
    Check("arc-definition-identity", "sec8.def.arc-identity",
          1e-9, _trial_arc_definition),
    Check("arc-energy-strictly-increasing", "sec9.prop.a-monotone",
          0.0, _trial_energy_monotone),
    Check("arc-tangent-line-inequality", "sec9.prop.c-tangent",
          1e-10, _trial_tangent_line),
    Check("arc-legendre-identity", "sec9.prop.d-legendre",
          1e-8, _trial_legendre_identity),
    Check("arc-potential-equals-log-partition", "sec10.potential-identity",
          1e-10, _trial_potential_identity),
    Check("metric-quadrature-agreement", "sec13.t-operator-quadrature",
          1e-10, _trial_metric_quadrature),
    Check("metric-eguchi-agreement", "sec14.eguchi-second-derivative",
          1e-5, _trial_eguchi_agreement),
    Check("metric-eguchi-order", "sec14.eguchi-convergence-order",
          0.0, _trial_eguchi_order),
    Check("metric-qubit-closed-form", "sec14.logmean-closed-form",
          1e-10, _check_metric_closed_form, deterministic=True),
    Check("divergence-derivative-along-arc", "sec13.thm.derivative",
          1e-6, _trial_divergence_derivative),
    Check("generator-additivity", "sec13.prop.additive",
          1e-10, _trial_generator_additivity),
    Check("kms-boundary-identity", "sec2.kms-boundary",
          1e-10, _trial_kms),
    Check("tomita-identity-suite", "sec3.tomita-identities",
          1e-10, _trial_tomita),
    Check("radon-nikodym-suite", "sec7.radon-nikodym",
          1e-10, _trial_radon_nikodym),
    Check("flatness-finite-difference", "sec16.dual-coordinates",
          1e-5, _trial_flatness_fd),
    Check("flatness-newton-round-trip", "sec16.theta-eta-inversion",
          1e-9, _trial_newton_round_trip),
    Check("flatness-scalar-benchmark", "sec16.scalar-inversion",
          1e-9, _check_scalar_inversion, deterministic=True),
    Check("pythagorean-equal-energy", "sec8.pythagoras",
          1e-9, _trial_pythagoras),
    Check("metric-nondegeneracy", "sec14.prop.nondegenerate",
          1e-6, _trial_nondegeneracy),
)


def check_names() -> tuple:
    return tuple(c.name for c in CHECKS)


def run_check(check: Check, seed: int, trials: int, dims,
              check_index: int = 0, workers: int = 1) -> float:
    """Worst residual of a check over seeded trials.

    Trial k uses an rng seeded by (seed, check_index, k) and dimension
    dims[k mod len(dims)], so the result does not depend on execution
    order and threads are safe to use.
    """
    if check.deterministic:
        trials = 1

    def one(k: int) -> float:
        rng = np.random.default_rng([seed, check_index, k])
        return float(check.trial(rng, dims[k % len(dims)]))

    if workers > 1 and trials > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            residuals = list(pool.map(one, range(trials)))
    else:
        residuals = [one(k) for k in range(trials)]
    return max(residuals)


def _thread_count(explicit=None) -> int:
    if explicit is not None:
        return max(1, int(explicit))
    env = os.environ.get("MODMAN_THREADS", "1")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def run_verify(dim=None, seed: int = 7, trials: int = DEFAULT_TRIALS,
               tol_overrides=None, threads=None) -> dict:
    """Run the full check registry and assemble a report dictionary.

    ``dim`` fixes a single dimension; by default trials cycle through
    dimensions 2..8.  ``tol_overrides`` maps check names (or the key
    ``"*"``) to replacement tolerances.  Thread count comes from the
    MODMAN_THREADS environment variable unless given explicitly; the
    report is byte-stable for a fixed (config, seed) regardless.
    """
    dims = DEFAULT_DIMS if dim is None else (int(dim),)
    overrides = dict(tol_overrides or {})
    workers = _thread_count(threads)
    records = []
    for idx, check in enumerate(CHECKS):
        tol = float(overrides.get(check.name, overrides.get("*", check.tolerance)))
        n_trials = 1 if check.deterministic else trials
        worst = run_check(check, seed, trials, dims, check_index=idx,
                          workers=workers)
        records.append({
            "name": check.name,
            "anchor": check.anchor,
            "trials": n_trials,
            "max_residual": worst,
            "tolerance": tol,
            "pass": bool(worst <= tol),
        })
    return {
        "command": "verify",
        "config": {
            "dim": None if dim is None else int(dim),
            "dims": list(dims),
            "seed": int(seed),
            "trials": int(trials),
            "tol_overrides": {k: float(v) for k, v in sorted(overrides.items())},
        },
        "generator": "numpy-pcg64",
        "checks": records,
        "all_pass": all(r["pass"] for r in records),
    }
