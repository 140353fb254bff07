"""Green and transition kernels of the free three-term recurrence.

All functions accept scalar or array `z` and broadcast over it.  The Green
kernel ``(z**k - z**-k) / (z - 1/z)`` is evaluated as the finite sum
``sum_{j<k} z**(k-1-2j)`` whenever ``|z| > 0.9``; the ratio form cancels
catastrophically near ``z = +-1``.
"""
from __future__ import annotations

import numpy as np

from .operator import TOL_EDGE, EdgeProximityError

RIGHT = "right"
LEFT = "left"
_STABLE_RADIUS = 0.9


def _check_side(side):
    if side not in (RIGHT, LEFT):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")


def _check_z(z, allow_zero=False):
    z = np.asarray(z, dtype=complex)
    bad = (np.abs(z - 1) <= TOL_EDGE) | (np.abs(z + 1) <= TOL_EDGE)
    if not allow_zero:
        bad |= np.abs(z) <= TOL_EDGE
    if np.any(bad):
        raise EdgeProximityError("kernels are undefined at z = 0, +1, -1")
    return z


def _out(x):
    return complex(x) if np.ndim(x) == 0 else x


def geometric_table(kmax, z):
    """``S[k] = sum_{i<k} z**(2i)`` for ``k = 0..kmax``, stacked on axis 0."""
    z = np.asarray(z, dtype=complex)
    z2 = z * z
    table = np.zeros((kmax + 1,) + z.shape, dtype=complex)
    power = np.ones_like(z)
    for k in range(1, kmax + 1):
        table[k] = table[k - 1] + power
        power = power * z2
    return table


def _green_k(k, z):
    """Free Green kernel ``G_r(n, n+k; z)`` for an integer ``k``."""
    if k <= 0:
        return np.zeros_like(z)
    near_edge = np.abs(z) > _STABLE_RADIUS
    out = np.empty_like(z)
    if np.any(near_edge):
        zz = z[near_edge]
        # sum_{j<k} z^(k-1-2j) = z^(1-k) * S_k(z)
        out[near_edge] = zz ** (1 - k) * geometric_table(k, zz)[k]
    if np.any(~near_edge):
        zz = z[~near_edge]
        out[~near_edge] = (zz**k - zz ** (-k)) / (zz - 1 / zz)
    return out


def green_r(n, m, z):
    """Right Green kernel, nonzero only for ``m > n``.

    .. math:: G_r(n, m; z) = \\frac{z^{m-n} - z^{n-m}}{z - z^{-1}}, \\quad m \\ge n

    Examples
    --------
    >>> green_r(0, 2, 0.5)
    (2.5+0j)
    """
    z = _check_z(z)
    return _out(_green_k(m - n, np.atleast_1d(z)).reshape(z.shape))


def green_l(n, m, z):
    """Left Green kernel, nonzero only for ``m < n``; equals ``green_r(m, n, z)``."""
    return green_r(m, n, z)


def _scaled_green_k(k, z):
    """``G_r(n, n+k; z) * z**k``, a polynomial ``z * S_k(z)``."""
    if k <= 0:
        return np.zeros_like(z)
    return z * geometric_table(k, z)[k]


def transition_kernel(op, side, n, m, z):
    """Transition kernel ``T_r`` or ``T_l`` of `op` at ``(n, m; z)``.

    Right: ``-b_m G_r(n, m) + (1 - a_{m-1} c_{m-1}) G_r(n, m-1)``.
    Left:  ``-b_m G_l(n, m) + (1 - a_m c_m) G_l(n, m+1)``.
    """
    _check_side(side)
    if side == RIGHT:
        return -op.b_at(m) * green_r(n, m, z) + (1 - op.ac_at(m - 1)) * green_r(n, m - 1, z)
    return -op.b_at(m) * green_l(n, m, z) + (1 - op.ac_at(m)) * green_l(n, m + 1, z)


def scaled_kernel(op, side, n, m, z):
    """Transition kernel multiplied by ``z**(m-n)`` (right) or ``z**(n-m)`` (left).

    The result is a polynomial in `z` and is evaluated as such, so it stays
    well defined on the unit circle away from ``+-1``.
    """
    _check_side(side)
    z = _check_z(z, allow_zero=True)
    zz = np.atleast_1d(z)
    if side == RIGHT:
        k = m - n
        val = (-op.b_at(m) * _scaled_green_k(k, zz)
               + (1 - op.ac_at(m - 1)) * zz * _scaled_green_k(k - 1, zz))
    else:
        k = n - m
        val = (-op.b_at(m) * _scaled_green_k(k, zz)
               + (1 - op.ac_at(m)) * zz * _scaled_green_k(k - 1, zz))
    return _out(val.reshape(z.shape))


def kernel_support(op, side):
    """Index range ``(lo, hi)`` of ``m`` for which the kernel can be nonzero."""
    if op.is_free:
        return None
    if side == RIGHT:
        return op.support_lo, op.support_hi + 1
    return op.support_lo, op.support_hi


def scaled_kernel_matrix(op, side, ns, z):
    """Scaled kernel for all ``n`` in `ns` against the kernel support.

    Returns
    -------
    ms : ndarray of int
        Column indices ``m`` (the kernel support).
    K : ndarray, shape ``(len(ns), len(ms)) + z.shape``
        ``K[i, j] = scaled_kernel(op, side, ns[i], ms[j], z)``.
    """
    _check_side(side)
    z = np.asarray(z, dtype=complex)
    ns = np.asarray(ns, dtype=int)
    supp = kernel_support(op, side)
    if supp is None:
        return np.zeros(0, dtype=int), np.zeros((len(ns), 0) + z.shape, dtype=complex)
    ms = np.arange(supp[0], supp[1] + 1)
    b = np.array([op.b_at(m) for m in ms])
    if side == RIGHT:
        q = np.array([1 - op.ac_at(m - 1) for m in ms])
        k = ms[None, :] - ns[:, None]
    else:
        q = np.array([1 - op.ac_at(m) for m in ms])
        k = ns[:, None] - ms[None, :]
    kmax = max(int(k.max(initial=0)), 1)
    S = geometric_table(kmax, z)
    kc = np.clip(k, 0, None)
    km1 = np.clip(k - 1, 0, None)
    zs = z[None, None]
    pad = (slice(None), slice(None)) + (None,) * z.ndim
    K = (-b[None, :][pad] * zs * S[kc] + q[None, :][pad] * zs * zs * S[km1])
    return ms, K
