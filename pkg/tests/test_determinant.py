import numpy as np
import pytest

from jacobi_lt.determinant import (
    audit_bounds,
    determinant_oracle,
    determinant_u,
    polar_grid,
    wronskian,
)
from jacobi_lt.inequalities import random_operator
from jacobi_lt.operator import EdgeProximityError, JacobiOperator, compute_gauge, omega

from .conftest import random_z


def rank_one(b, z):
    """``1 + b R0(0, 0)`` with the free resolvent diagonal ``z / (z**2 - 1)``."""
    return 1 + b * z / (z * z - 1)


class TestWronskian:
    def test_free(self):
        assert wronskian(JacobiOperator.free(), 0.5) == pytest.approx(1.5, abs=1e-15)

    def test_single_site_at_eigenvalue(self):
        # z = 0.5 is the zero of U for b = 1.5, so the Wronskian vanishes there
        assert abs(wronskian(JacobiOperator.single_site(1.5), 0.5)) <= 1e-15

    def test_single_site_closed_form(self):
        b, z = 0.7 + 0.2j, 0.3 - 0.4j
        assert wronskian(JacobiOperator.single_site(b), z) == pytest.approx(1 / z - z - b, abs=1e-14)

    def test_independent_of_n(self, random_ops, rng):
        for op in random_ops:
            z = random_z(rng, 1)[0]
            ws = [wronskian(op, z, n) for n in (-3, 0, 3, 7)]
            assert max(abs(w - ws[0]) for w in ws) <= 1e-11 * (1 + abs(ws[0]))

    def test_product_form_equals_u(self, random_ops, rng):
        for op in random_ops:
            z = random_z(rng, 1)[0]
            prod_a = np.prod(op.a) if op.size else 1
            assert omega(z) / 2 * prod_a * wronskian(op, z) == pytest.approx(determinant_u(op, z), rel=1e-10)


class TestDeterminant:
    def test_free(self, rng):
        z = random_z(rng, 10)
        assert np.all(determinant_u(JacobiOperator.free(), z) == 1)
        assert np.all(determinant_oracle(JacobiOperator.free(), z + 1 / z) == 1)

    def test_single_site_zero(self):
        assert determinant_u(JacobiOperator.single_site(1.5), 0.5) == pytest.approx(0, abs=1e-15)

    def test_single_site_rank_one(self, rng):
        b = -0.4 + 1.1j
        op = JacobiOperator.single_site(b)
        z = random_z(rng, 30)
        np.testing.assert_allclose(determinant_u(op, z), rank_one(b, z), rtol=1e-13)
        np.testing.assert_allclose(determinant_oracle(op, z + 1 / z), rank_one(b, z), rtol=1e-13)

    def test_value_at_origin(self, random_ops):
        for op in random_ops:
            assert determinant_u(op, 0) == 1

    def test_continuity_at_origin(self, random_ops):
        for op in random_ops:
            delta = compute_gauge(op).delta_total
            for theta in np.linspace(0, 2 * np.pi, 7):
                u = determinant_u(op, 1e-3 * np.exp(1j * theta))
                assert abs(u - 1) <= 5e-3 * delta

    def test_gauge_invariance(self, random_ops, rng):
        for op in random_ops:
            r = rng.uniform(0.2, 4, op.size + 2) * np.exp(1j * rng.uniform(-3, 3, op.size + 2))
            other = op.gauge(r, start=op.support_lo - 1)
            z = random_z(rng, 20)
            np.testing.assert_allclose(determinant_u(other, z), determinant_u(op, z), rtol=1e-13, atol=1e-14)

    def test_routes_agree(self, rng):
        for _ in range(40):
            op = random_operator(rng, int(rng.integers(1, 8)), 0.7, potential=1.2)
            if compute_gauge(op).delta_total > 5:
                continue
            z = random_z(rng, 50)
            u = determinant_u(op, z)
            o = determinant_oracle(op, z + 1 / z)
            assert np.all(np.abs(u - o) <= 1e-8 * (1 + np.abs(o)))

    def test_cauchy_mean_value(self, random_ops):
        # analyticity: the mean over a circle reproduces the centre value
        for op in random_ops[:8]:
            c, rho = 0.2 + 0.3j, 0.25
            pts = c + rho * np.exp(2j * np.pi * np.arange(256) / 256)
            assert np.mean(determinant_u(op, pts)) == pytest.approx(determinant_u(op, c), rel=1e-8, abs=1e-8)

    def test_rejects_outside_disk(self):
        op = JacobiOperator.single_site(1)
        with pytest.raises(EdgeProximityError):
            determinant_u(op, 1.0)
        with pytest.raises(EdgeProximityError):
            determinant_oracle(op, 1.0)


class TestAudit:
    def test_free_margins_equal_rhs(self):
        for e in audit_bounds(JacobiOperator.free(), polar_grid(4, 8, 0.1, 0.9)):
            assert e.u_value == 1 and e.bound_x == 0
            assert e.margins["u_minus_one"] == 0 and e.margins["abs_u"] == 0 and e.margins["log_u"] == 0

    def test_single_site_grid(self):
        evals = audit_bounds(JacobiOperator.single_site(1.5), polar_grid(64, 64, 0.01, 0.99))
        assert len(evals) == 64 * 64
        assert all(e.ok for e in evals)
        assert min(min(e.margins.values()) for e in evals) >= 0

    def test_intermediate_inequality(self):
        z = polar_grid(64, 64, 0.01, 0.99)
        w = np.abs(omega(z))
        assert np.all(np.abs(omega(z) / z) <= 2 * (1 + w) * (1 + 1e-14))

    def test_oracle_column(self, random_ops):
        evals = audit_bounds(random_ops[0], polar_grid(3, 5, 0.2, 0.8), with_oracle=True)
        for e in evals:
            assert abs(e.u_value - e.oracle_value) <= 1e-8 * (1 + abs(e.oracle_value))


def test_polar_grid_validation():
    with pytest.raises(ValueError):
        polar_grid(4, 4, 0.0, 0.5)
    with pytest.raises(ValueError):
        polar_grid(4, 4, 0.5, 1.0)
