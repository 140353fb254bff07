import mpmath
import numpy as np
import pytest

from jacobi_lt.inequalities import random_operator
from jacobi_lt.kernels import (
    LEFT,
    RIGHT,
    green_l,
    green_r,
    scaled_kernel,
    scaled_kernel_matrix,
    transition_kernel,
)
from jacobi_lt.operator import EdgeProximityError, JacobiOperator, compute_gauge, omega

from .conftest import random_z


def green_mp(k, z):
    """Ratio form of the Green kernel in 40-digit arithmetic."""
    if k <= 0:
        return 0
    with mpmath.workdps(40):
        z = mpmath.mpc(z)
        return complex((z**k - z ** (-k)) / (z - 1 / z))


def test_anchor_values():
    z = 0.3 + 0.4j
    assert green_r(4, 4, z) == 0
    assert green_r(4, 5, z) == pytest.approx(1, abs=1e-15)
    assert green_r(0, 2, 0.5) == pytest.approx(2.5, abs=1e-15)
    assert green_l(5, 4, z) == pytest.approx(1, abs=1e-15)
    assert green_l(4, 5, z) == 0


@pytest.mark.parametrize("radius", [0.2, 0.89, 0.95, 0.999])
def test_green_matches_high_precision(radius, rng):
    for theta in rng.uniform(0, 2 * np.pi, 20):
        z = radius * np.exp(1j * theta)
        if min(abs(z - 1), abs(z + 1)) < 1e-3:
            continue
        for k in (1, 2, 5, 17):
            expected = green_mp(k, z)
            assert abs(green_r(0, k, z) - expected) <= 1e-13 * max(1, abs(expected))


def test_green_near_plus_one():
    # the finite sum stays accurate where the ratio form cancels
    z = 1 - 1e-9 + 1e-9j
    assert abs(green_r(0, 10, z) - green_mp(10, z)) < 1e-10


def test_green_rejects_edges():
    for z in (0, 1, -1):
        with pytest.raises(EdgeProximityError):
            green_r(0, 1, z)


def test_green_vectorized(rng):
    z = random_z(rng, 50)
    vec = green_r(-2, 3, z)
    assert np.allclose(vec, [green_r(-2, 3, zz) for zz in z], rtol=1e-14)


class TestTransitionKernel:
    def test_free_operator(self, rng):
        op = JacobiOperator.free()
        for z in random_z(rng, 5):
            assert transition_kernel(op, RIGHT, -2, 1, z) == 0
            assert scaled_kernel(op, LEFT, 2, -1, z) == 0

    def test_single_site(self):
        b, z = 0.7 - 0.2j, 0.3 + 0.1j
        op = JacobiOperator.single_site(b)
        assert transition_kernel(op, RIGHT, -1, 0, z) == pytest.approx(-b, abs=1e-15)
        assert transition_kernel(op, LEFT, 1, 0, z) == pytest.approx(-b, abs=1e-15)
        assert scaled_kernel(op, RIGHT, -1, 0, z) == pytest.approx(-b * z, abs=1e-15)
        assert scaled_kernel(op, LEFT, 1, 0, z) == pytest.approx(-b * z, abs=1e-15)

    def test_scaled_equals_definition(self, random_ops, rng):
        for op in random_ops[:5]:
            for z in random_z(rng, 5, 0.1, 0.9):
                for n in range(op.support_lo - 3, op.support_hi + 2):
                    for m in range(op.support_lo, op.support_hi + 2):
                        expected = transition_kernel(op, RIGHT, n, m, z) * z ** (m - n)
                        assert scaled_kernel(op, RIGHT, n, m, z) == pytest.approx(expected, rel=1e-12, abs=1e-14)
                        expected = transition_kernel(op, LEFT, m, n, z) * z ** (m - n)
                        assert scaled_kernel(op, LEFT, m, n, z) == pytest.approx(expected, rel=1e-12, abs=1e-14)

    def test_matrix_agrees_with_pointwise(self, random_ops, rng):
        op = random_ops[0]
        z = random_z(rng, 3)
        ns = np.arange(op.support_lo - 4, op.support_hi + 4)
        for side in (RIGHT, LEFT):
            ms, K = scaled_kernel_matrix(op, side, ns, z)
            for i, n in enumerate(ns):
                for j, m in enumerate(ms):
                    np.testing.assert_allclose(K[i, j], scaled_kernel(op, side, n, m, z), rtol=1e-14, atol=1e-15)

    def test_bounds_on_closed_disk(self, rng):
        # |scaled kernel| <= delta_m min{(m-n)_+, 2|z|/|z^2-1|} <= delta_m |omega|
        for _ in range(30):
            op = random_operator(rng, int(rng.integers(1, 6)), 0.8)
            g = compute_gauge(op)
            z = random_z(rng, 40, 0.0, 1.0)
            z = z[np.minimum(abs(z - 1), abs(z + 1)) > 1e-3]
            for n in range(op.support_lo - 3, op.support_hi + 3):
                for m in range(op.support_lo - 1, op.support_hi + 3):
                    kr = np.abs(scaled_kernel(op, RIGHT, n, m, z))
                    cap = np.minimum(max(m - n, 0), np.abs(omega(z)))
                    assert np.all(kr <= g.delta_r.get(m, 0) * cap * (1 + 1e-12) + 1e-15)
                    kl = np.abs(scaled_kernel(op, LEFT, n, m, z))
                    cap = np.minimum(max(n - m, 0), np.abs(omega(z)))
                    assert np.all(kl <= g.delta_l.get(m, 0) * cap * (1 + 1e-12) + 1e-15)

    def test_well_defined_on_unit_circle(self):
        op = JacobiOperator.single_site(0.4)
        z = np.exp(1j * np.array([0.5, 2.0, 3.0]))
        assert np.all(np.isfinite(scaled_kernel(op, RIGHT, -5, 0, z)))


def test_green_identities_in_both_variables(rng):
    z = random_z(rng, 40, 0.01, 0.999)
    lam = z + 1 / z
    for G in (green_r, green_l):
        for n in range(-6, 7):
            for m in range(-6, 7):
                delta = 1.0 if n == m else 0.0
                terms = (G(n, m - 1, z), G(n, m + 1, z), lam * G(n, m, z))
                res = terms[0] + terms[1] - terms[2] - delta
                assert np.all(np.abs(res) <= 1e-12 * (1 + sum(np.abs(t) for t in terms)))
                terms = (G(n - 1, m, z), G(n + 1, m, z), lam * G(n, m, z))
                res = terms[0] + terms[1] - terms[2] - delta
                assert np.all(np.abs(res) <= 1e-12 * (1 + sum(np.abs(t) for t in terms)))


@pytest.mark.parametrize("side", [RIGHT, LEFT])
def test_scaled_kernel_is_polynomial(side, rng):
    """Interpolate on scaled roots of unity and evaluate the interpolant elsewhere.

    For ``k = |m - n|`` the scaled kernel is ``-b z S_k + q z**2 S_{k-1}``
    with ``S_k = sum_{i<k} z**(2i)``, a polynomial of degree ``2k - 1``.
    """
    op = random_operator(rng, 4, 0.7)
    for k in range(1, 7):
        m = op.support_lo + 1
        n = m - k if side == RIGHT else m + k
        deg = 2 * k - 1
        N = deg + 1
        rho = 0.8
        nodes = rho * np.exp(2j * np.pi * np.arange(N) / N)
        coeffs = np.fft.fft(scaled_kernel(op, side, n, m, nodes)) / N / rho ** np.arange(N)
        z = random_z(rng, 20, 0.0, 1.0)
        interp = np.polyval(coeffs[::-1], z)
        np.testing.assert_allclose(scaled_kernel(op, side, n, m, z), interp, rtol=1e-12, atol=1e-12)
        # leading coefficient is -b_m, so the degree is exactly 2k - 1
        assert coeffs[-1] == pytest.approx(-op.b_at(m), abs=1e-12)
