"""Perturbation determinant: Wronskian route, resolvent oracle and bound audit."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .jost import (
    check_spectral_parameter,
    left_remainders,
    reconstruct_u,
    right_remainders,
    solve_volterra_left,
    solve_volterra_right,
    transition_factors,
)
from .operator import TOL_EDGE, EdgeProximityError, compute_gauge, dist_to_band, omega

BOUND_SLACK = 1e-12


def wronskian(op, z, n=0):
    """``beta_n (u_plus[n] u_minus[n+1] - u_plus[n+1] u_minus[n])`` at `z`.

    The value does not depend on `n`; pass another `n` to check that.
    """
    z = check_spectral_parameter(z)
    window = (min(n, op.support_lo) - 1, max(n + 1, op.support_hi) + 1)
    up = reconstruct_u(op, solve_volterra_right(op, z, window=window))
    um = reconstruct_u(op, solve_volterra_left(op, z, window=window))
    beta = transition_factors(op, n, n).beta[0]
    return complex(beta * (up[n] * um[n + 1] - up[n + 1] * um[n]))


def _check_disk(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1) or np.any(np.minimum(abs(z - 1), abs(z + 1)) <= TOL_EDGE):
        raise EdgeProximityError("determinant is evaluated on the open unit disk only")
    return z


def determinant_u(op, z):
    """Perturbation determinant ``U(z)`` from the Jost remainders at sites 0 and 1.

    .. math::

        U(z) = \\frac{\\omega(z)}{2}\\bigl(v^+_0 w^-_1 - a_0 c_0\\, v^+_1 w^-_0\\bigr)
             = \\frac{(1 + f^r_0)(1 + f^l_1) - a_0 c_0 z^2 (1 + f^r_1)(1 + f^l_0)}{1 - z^2}

    The second form only involves ``b_j`` and ``a_j c_j``, is analytic at
    ``z = 0`` and gives ``U(0) = 1``.  Broadcasts over array `z`.
    """
    z = _check_disk(z)
    if op.is_free:
        return complex(1) if z.ndim == 0 else np.ones(z.shape, dtype=complex)
    fr = right_remainders(op, z, 0, 1)
    fl = left_remainders(op, z, 0, 1)
    ac0 = op.ac_at(0)
    u = ((1 + fr[0]) * (1 + fl[1]) - ac0 * z * z * (1 + fr[1]) * (1 + fl[0])) / (1 - z * z)
    return complex(u) if u.ndim == 0 else u


def _inverse_zhukovsky_array(lam):
    s = np.sqrt(lam * lam - 4 + 0j)
    z1, z2 = (lam + s) / 2, (lam - s) / 2
    big = np.where(np.abs(z1) >= np.abs(z2), z1, z2)
    return 1 / big


def determinant_oracle(op, lam):
    """``det(I + (J - J0)(J0 - lam)**-1)`` by dense LU on the perturbation window.

    The free resolvent kernel is ``z**|n-m| / (z - 1/z)`` with ``lam = z + 1/z``.
    Broadcasts over array `lam`.
    """
    lam = np.asarray(lam, dtype=complex)
    if np.any(dist_to_band(lam) <= TOL_EDGE):
        raise EdgeProximityError("lambda too close to [-2, 2]")
    if op.is_free:
        return complex(1) if lam.ndim == 0 else np.ones(lam.shape, dtype=complex)
    lo, hi = op.support_lo - 1, op.support_hi + 1
    V = op.matrix(lo, hi) - type(op).free().matrix(lo, hi)
    idx = np.arange(lo, hi + 1)
    dist = np.abs(idx[:, None] - idx[None, :])
    z = _inverse_zhukovsky_array(lam).reshape(-1)
    R0 = z[:, None, None] ** dist[None] / (z - 1 / z)[:, None, None]
    M = np.eye(len(idx))[None] + V[None] @ R0
    d = np.linalg.det(M).reshape(lam.shape)
    return complex(d) if d.ndim == 0 else d


@dataclass
class DeterminantEvaluation:
    """One audited value of ``U``.

    ``margins`` holds RHS minus LHS of
    ``|U - 1| <= (4x + 5x**2) exp(4x)`` (``'u_minus_one'``),
    ``|U| <= exp(8x)`` (``'abs_u'``) and
    ``log|U| <= 16|z| / |1 - z**2| (sqrt(D) + D)`` (``'log_u'``),
    with ``x = |omega(z)| (sqrt(D) + D)``.
    """

    z: complex
    u_value: complex
    bound_x: float
    margins: dict = field(default_factory=dict)
    oracle_value: complex | None = None

    @property
    def ok(self):
        return min(self.margins.values()) >= -BOUND_SLACK


def bound_margins(u, z, delta):
    """Signed margins of the determinant bounds, vectorized over `z`."""
    z = np.asarray(z, dtype=complex)
    s = np.sqrt(delta) + delta
    x = np.abs(omega(z)) * s
    with np.errstate(divide="ignore", over="ignore"):
        log_abs_u = np.log(np.abs(u))
        margins = {
            "u_minus_one": (4 * x + 5 * x**2) * np.exp(4 * x) - np.abs(u - 1),
            "abs_u": np.exp(8 * x) - np.abs(u),
            "log_u": 16 * np.abs(z) / np.abs(1 - z * z) * s - log_abs_u,
        }
    return x, margins


def audit_bounds(op, z_grid, with_oracle=False):
    """Check the determinant bounds at every point of `z_grid`.

    Returns a list of `DeterminantEvaluation`, one per grid point (flattened).
    """
    z = _check_disk(np.ravel(np.asarray(z_grid, dtype=complex)))
    delta = compute_gauge(op).delta_total
    u = determinant_u(op, z)
    x, margins = bound_margins(u, z, delta)
    oracle = determinant_oracle(op, z + 1 / z) if with_oracle else None
    return [
        DeterminantEvaluation(
            z=complex(z[i]),
            u_value=complex(u[i]),
            bound_x=float(x[i]),
            margins={k: float(v[i]) for k, v in margins.items()},
            oracle_value=None if oracle is None else complex(oracle[i]),
        )
        for i in range(len(z))
    ]


def polar_grid(n_r, n_theta, r_min, r_max):
    """Polar grid of ``n_r * n_theta`` points in the annulus ``r_min <= |z| <= r_max``."""
    if not 0 < r_min <= r_max < 1:
        raise ValueError("grid radii must satisfy 0 < r_min <= r_max < 1")
    r = np.linspace(r_min, r_max, n_r)
    theta = 2 * np.pi * (np.arange(n_theta) + 0.5) / n_theta
    return (r[:, None] * np.exp(1j * theta[None, :])).ravel()
