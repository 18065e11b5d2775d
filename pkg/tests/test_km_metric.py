"""Tests for the Kubo-Mori scalar product and its three evaluation routes."""

import numpy as np
import pytest

from modman.errors import InputError
from modman.km_metric import log_mean, metric_context
from modman.matfun import density, matrix_power_complex
from modman.sampling import (
    complex_gaussian,
    random_density,
    random_hermitian,
    random_traceless_hermitian,
)

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
# frozen oracle: two off-diagonal terms L(3/4, 1/4) = (1/2)/ln 3 each
PAULI_X_METRIC = 0.9102392266268373  # 1/ln 3


def opnorm(m):
    return np.linalg.norm(m, 2)


@pytest.fixture
def ctx4():
    rng = np.random.default_rng(100)
    return metric_context(random_density(4, rng)), rng


class TestLogMean:
    def test_diagonal_value(self):
        assert log_mean(0.3, 0.3) == pytest.approx(0.3, abs=1e-15)

    def test_symmetric(self):
        assert log_mean(0.7, 0.1) == pytest.approx(log_mean(0.1, 0.7), abs=1e-15)

    def test_between_geometric_and_arithmetic(self):
        p, q = 0.6, 0.05
        val = log_mean(p, q)
        assert np.sqrt(p * q) <= val <= 0.5 * (p + q)

    def test_near_equal_arguments_stable(self):
        val = log_mean(0.5, 0.5 * (1 + 1e-9))
        assert abs(val - 0.5) <= 1e-9


class TestKmInner:
    def test_identity_directions_vanish(self, ctx4):
        ctx, _ = ctx4
        assert abs(ctx.km_inner(np.eye(4), np.eye(4))) <= 1e-14

    def test_pauli_x_closed_form(self):
        ctx = metric_context(density(np.diag([0.75, 0.25])))
        assert ctx.km_inner(PAULI_X, PAULI_X) == pytest.approx(PAULI_X_METRIC,
                                                               abs=1e-10)

    def test_commuting_case_is_classical_covariance(self):
        rng = np.random.default_rng(101)
        p = np.array([0.1, 0.3, 0.6])
        ctx = metric_context(density(np.diag(p)))
        h = np.diag(rng.standard_normal(3))
        k = np.diag(rng.standard_normal(3))
        hc = np.diag(h).real - (p * np.diag(h).real).sum()
        kc = np.diag(k).real - (p * np.diag(k).real).sum()
        classical = (p * hc * kc).sum()
        assert ctx.km_inner(h, k) == pytest.approx(classical, abs=1e-12)

    def test_symmetry_and_bilinearity(self, ctx4):
        ctx, rng = ctx4
        h, k, l = (random_hermitian(4, rng) for _ in range(3))
        a, b = rng.standard_normal(2)
        assert abs(ctx.km_inner(h, k) - ctx.km_inner(k, h)) <= 1e-12
        lhs = ctx.km_inner(h, a * k + b * l)
        rhs = a * ctx.km_inner(h, k) + b * ctx.km_inner(h, l)
        assert abs(lhs - rhs) <= 1e-12

    def test_nondegenerate_lower_bound(self, ctx4):
        ctx, rng = ctx4
        p = ctx.rho.eigenvalues
        c_min = log_mean(p[:, None], p[None, :]).min()
        for _ in range(20):
            h = random_hermitian(4, rng)
            hc = ctx._center(h)
            assert ctx.km_inner(h, h) >= c_min * np.linalg.norm(hc) ** 2 - 1e-12


class TestTOperator:
    def test_identity_on_tracial_state(self):
        ctx = metric_context(density(np.eye(3) / 3))
        rng = np.random.default_rng(102)
        v = complex_gaussian(3, rng)
        assert opnorm(ctx.t_operator_apply(v) - v) <= 1e-12

    def test_fixes_reference_vector(self, ctx4):
        ctx, _ = ctx4
        omega = ctx.rho.sqrt_mat
        assert opnorm(ctx.t_operator_apply(omega) - omega) <= 1e-12

    def test_squared_norm_matches_quadrature(self, ctx4):
        # independent oracle: 64-node Gauss-Legendre integral of the
        # squared norm of the (u/2)-modular power over u in [0, 1]
        ctx, rng = ctx4
        rho = ctx.rho
        v = complex_gaussian(4, rng)
        tv = ctx.t_operator_apply(v)
        lhs = np.linalg.norm(tv) ** 2
        nodes, weights = np.polynomial.legendre.leggauss(64)
        u = 0.5 * (nodes + 1.0)
        w = 0.5 * weights
        rhs = 0.0
        for ui, wi in zip(u, w):
            moved = (matrix_power_complex(rho, ui / 2) @ v
                     @ matrix_power_complex(rho, -ui / 2))
            rhs += wi * np.linalg.norm(moved) ** 2
        assert abs(lhs - rhs) <= 1e-10


class TestEguchiForm:
    def test_zero_directions(self, ctx4):
        ctx, _ = ctx4
        z = np.zeros((4, 4))
        assert abs(ctx.eguchi_fd_inner(z, z)) <= 1e-14

    def test_pauli_x_value(self):
        ctx = metric_context(density(np.diag([0.75, 0.25])))
        val = ctx.eguchi_fd_inner(PAULI_X, PAULI_X, step=1e-3)
        assert abs(val - PAULI_X_METRIC) <= 1e-5

    def test_second_order_convergence(self, ctx4):
        ctx, rng = ctx4
        h, k = random_hermitian(4, rng), random_hermitian(4, rng)
        exact = ctx.km_inner(h, k)
        errors = [abs(ctx.eguchi_fd_inner(h, k, step=s) - exact)
                  for s in (4e-3, 2e-3, 1e-3)]
        assert errors[0] <= 1e-4
        for bigger, smaller in zip(errors, errors[1:]):
            assert smaller <= max(0.45 * bigger, 5e-10)

    def test_step_validation(self, ctx4):
        ctx, rng = ctx4
        h = random_hermitian(4, rng)
        with pytest.raises(InputError):
            ctx.eguchi_fd_inner(h, h, step=0.5)


class TestTangentIdentification:
    def test_identity_maps_to_zero(self, ctx4):
        ctx, _ = ctx4
        assert opnorm(ctx.tangent_of_generator(np.eye(4)).mat) <= 1e-14

    def test_commuting_closed_form(self):
        rng = np.random.default_rng(103)
        p = np.array([0.2, 0.45, 0.35])
        rho = density(np.diag(p))
        ctx = metric_context(rho)
        h = np.diag(rng.standard_normal(3))
        hc = h - rho.expect(h) * np.eye(3)
        assert opnorm(ctx.tangent_of_generator(h).mat - rho.mat @ hc) <= 1e-12

    def test_cross_identity_with_metric(self, ctx4):
        ctx, rng = ctx4
        h, k = random_hermitian(4, rng), random_hermitian(4, rng)
        chi = ctx.tangent_of_generator(h)
        kc = ctx._center(k)
        assert abs(ctx.km_inner(h, k) - np.trace(chi.mat @ kc).real) <= 1e-10

    def test_linearity(self, ctx4):
        ctx, rng = ctx4
        h, k = random_hermitian(4, rng), random_hermitian(4, rng)
        a, b = rng.standard_normal(2)
        lhs = ctx.tangent_of_generator(a * h + b * k).mat
        rhs = (a * ctx.tangent_of_generator(h).mat
               + b * ctx.tangent_of_generator(k).mat)
        assert opnorm(lhs - rhs) <= 1e-12

    def test_round_trip_inverse(self, ctx4):
        ctx, rng = ctx4
        h = random_traceless_hermitian(4, rng)
        hc = ctx._center(h)
        chi = ctx.tangent_of_generator(h)
        assert opnorm(ctx.generator_of_tangent(chi) - hc) <= 1e-10

    def test_agrees_with_arc_derivative(self, ctx4):
        from modman.arcs import exponential_arc

        ctx, rng = ctx4
        h = random_hermitian(4, rng)
        arc = exponential_arc(ctx.rho, h)
        assert opnorm(ctx.tangent_of_generator(h).mat - arc.derivative(0.0).mat) <= 1e-12

    def test_derivative_pairs_with_rescaled_carriers(self, ctx4):
        # the arc velocity evaluated on an arbitrary (non-Hermitian)
        # observable equals the inner product of the rescaled carriers of
        # the generator and of the centered observable's adjoint
        from modman.arcs import exponential_arc

        ctx, rng = ctx4
        rho = ctx.rho
        h = random_hermitian(4, rng)
        x = complex_gaussian(4, rng)
        lhs = np.trace(exponential_arc(rho, h).derivative(0.0).mat @ x)
        hc = h - rho.expect(h) * np.eye(4)
        y = x - np.trace(rho.mat @ x) * np.eye(4)
        v = ctx.t_operator_apply(hc @ rho.sqrt_mat)
        w = ctx.t_operator_apply(y.conj().T @ rho.sqrt_mat)
        assert abs(lhs - np.trace(w.conj().T @ v)) <= 1e-12


class TestDegeneracyBoundary:
    def test_tiny_metric_norm_forces_tiny_direction(self):
        rng = np.random.default_rng(104)
        for _ in range(50):
            n = int(rng.integers(2, 6))
            ctx = metric_context(random_density(n, rng))
            h = random_hermitian(n, rng, norm=float(rng.uniform(0.5, 2.0)))
            if ctx.km_inner(h, h) <= 1e-12:
                assert np.linalg.norm(ctx._center(h), 2) <= 1e-6
        # explicit degenerate direction: a multiple of the identity
        ctx = metric_context(random_density(3, rng))
        assert ctx.km_inner(5.0 * np.eye(3), 5.0 * np.eye(3)) <= 1e-12
