"""Stress tests: ill-conditioned spectra and the largest supported dimension."""

import numpy as np

from modman import (
    araki_divergence,
    araki_dual_form,
    build_standard_form,
    density,
    exponential_arc,
    matrix_function,
    metric_context,
    random_density,
    random_hermitian,
    umegaki_divergence,
)


def haar_unitary(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def graded_density(exponent_low, n, rng):
    p = np.logspace(exponent_low, 0.0, n)
    p = p / p.sum()
    u = haar_unitary(n, rng)
    return density(u @ np.diag(p) @ u.conj().T)


class TestIllConditioned:
    def test_exp_log_roundtrip_at_condition_1e8(self):
        rng = np.random.default_rng(0)
        u = haar_unitary(5, rng)
        m = u @ np.diag(np.logspace(-8, 0, 5)) @ u.conj().T
        back = matrix_function(matrix_function(m, np.log), np.exp)
        assert np.linalg.norm(back - m, 2) <= 1e-10

    def test_divergence_routes_agree_on_graded_spectra(self):
        rng = np.random.default_rng(1)
        sigma = graded_density(-9, 6, rng)
        tau = graded_density(-9, 6, rng)
        vals = (araki_divergence(sigma, tau), umegaki_divergence(sigma, tau),
                araki_dual_form(sigma, tau))
        assert max(vals) - min(vals) <= 1e-10

    def test_arc_potential_identity_on_graded_base(self):
        rng = np.random.default_rng(2)
        arc = exponential_arc(graded_density(-9, 6, rng), random_hermitian(6, rng))
        for t in (0.25, 0.75):
            assert abs(arc.potential(t) - arc.log_partition(t)) <= 1e-10

    def test_modular_closure_on_graded_base(self):
        rng = np.random.default_rng(3)
        g = build_standard_form(graded_density(-6, 5, rng))
        x = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        out = g.apply_modular_power(0.5, x @ g.rho.sqrt_mat).conj().T
        assert np.linalg.norm(out - x.conj().T @ g.rho.sqrt_mat, 2) <= 1e-9


class TestLargestDimension:
    def test_dim_64_core_identities(self):
        rng = np.random.default_rng(4)
        rho, sigma = random_density(64, rng), random_density(64, rng)
        vals = (araki_divergence(rho, sigma), umegaki_divergence(rho, sigma),
                araki_dual_form(rho, sigma))
        assert max(vals) - min(vals) <= 1e-9
        g = build_standard_form(rho)
        x, y = random_hermitian(64, rng), random_hermitian(64, rng)
        assert g.kms_residual(x, y, 0.4) <= 1e-10
        ctx = metric_context(rho)
        assert abs(ctx.km_inner(x, y) - ctx.eguchi_fd_inner(x, y, 1e-3)) <= 1e-5
        arc = exponential_arc(rho, x)
        assert abs(np.trace(arc.point(1.0).mat).real - 1.0) <= 1e-12
