"""Jost solutions via the discrete Volterra equations.

The normalized remainders ``f_r[n] = v_plus[n] z**-n - 1`` and
``f_l[n] = w_minus[n] z**n - 1`` solve

.. math::

    f^r_n = \\sum_{m > n} \\tilde T_r(n, m; z) (1 + f^r_m), \\qquad
    f^l_n = \\sum_{m < n} \\tilde T_l(n, m; z) (1 + f^l_m).

For a finitely supported perturbation the scaled kernels vanish outside a
finite range of ``m``, so the equations are solved exactly by back (right)
and forward (left) substitution.  No iteration is involved.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernels import LEFT, RIGHT, kernel_support, scaled_kernel_matrix
from .operator import EdgeProximityError, SpectralParameter, compute_gauge, omega, zhukovsky

EDGE_EXCLUSION = 1e-6
DEFAULT_MARGIN = 5


def check_spectral_parameter(z):
    """Validate a scalar `z` for the Jost solvers and return it as complex."""
    z = complex(z)
    if z == 0 or abs(z) >= 1:
        raise EdgeProximityError(f"z={z} outside the punctured unit disk")
    if min(abs(z - 1), abs(z + 1)) <= EDGE_EXCLUSION:
        raise EdgeProximityError(f"z={z} too close to +-1")
    return z


def right_remainders(op, z, n_lo, n_hi):
    """Remainders ``f_r[n]`` for ``n = n_lo..n_hi``, broadcast over array `z`.

    Works on the closed disk minus ``+-1``, including ``z = 0``.
    Returns an array of shape ``(n_hi - n_lo + 1,) + z.shape``.
    """
    z = np.asarray(z, dtype=complex)
    supp = kernel_support(op, RIGHT)
    out = np.zeros((n_hi - n_lo + 1,) + z.shape, dtype=complex)
    if supp is None:
        return out
    m_lo, m_hi = supp
    # f vanishes for n >= m_hi; solve on [min(n_lo, m_lo), m_hi - 1]
    lo = min(n_lo, m_lo)
    ns = np.arange(lo, m_hi)
    if ns.size == 0:
        return out
    ms, K = scaled_kernel_matrix(op, RIGHT, ns, z)
    f = np.zeros((m_hi - lo + 1,) + z.shape, dtype=complex)
    jm = ms - lo
    for i in range(len(ns) - 1, -1, -1):
        f[i] = np.sum(K[i] * (1 + f[jm]), axis=0)
    for n in range(n_lo, n_hi + 1):
        if lo <= n <= m_hi:
            out[n - n_lo] = f[n - lo]
    return out


def left_remainders(op, z, n_lo, n_hi):
    """Remainders ``f_l[n]`` for ``n = n_lo..n_hi``; mirror of `right_remainders`."""
    z = np.asarray(z, dtype=complex)
    supp = kernel_support(op, LEFT)
    out = np.zeros((n_hi - n_lo + 1,) + z.shape, dtype=complex)
    if supp is None:
        return out
    m_lo, m_hi = supp
    # f vanishes for n <= m_lo; solve on [m_lo + 1, max(n_hi, m_hi + 1)]
    hi = max(n_hi, m_hi + 1)
    ns = np.arange(m_lo + 1, hi + 1)
    if ns.size == 0:
        return out
    ms, K = scaled_kernel_matrix(op, LEFT, ns, z)
    f = np.zeros((hi - m_lo + 1,) + z.shape, dtype=complex)
    jm = ms - m_lo
    for i in range(len(ns)):
        f[i + 1] = np.sum(K[i] * (1 + f[jm]), axis=0)
    for n in range(n_lo, n_hi + 1):
        if m_lo <= n <= hi:
            out[n - n_lo] = f[n - m_lo]
    return out


@dataclass(frozen=True)
class LatticeSequence:
    """Complex values on the index window ``n_min..n_max``."""

    n_min: int
    values: np.ndarray

    @property
    def n_max(self):
        return self.n_min + len(self.values) - 1

    @property
    def indices(self):
        return np.arange(self.n_min, self.n_max + 1)

    def __getitem__(self, n):
        if not self.n_min <= n <= self.n_max:
            raise IndexError(f"index {n} outside window [{self.n_min}, {self.n_max}]")
        return self.values[n - self.n_min]


@dataclass(frozen=True)
class JostSolution(LatticeSequence):
    """Jost solution ``v_plus`` (side ``'plus'``) or ``w_minus`` (side ``'minus'``)."""

    remainders: np.ndarray = None
    side: str = "plus"
    z: complex = 0j

    @property
    def spectral_parameter(self):
        return SpectralParameter(self.z)

    def remainder(self, n):
        return self.remainders[n - self.n_min]


def _window(op, window, margin):
    if window is not None:
        n_min, n_max = window
    elif op.is_free:
        n_min, n_max = -margin, margin
    else:
        n_min, n_max = op.support_lo - margin, op.support_hi + margin
    if n_max - n_min < 2:
        raise ValueError("window must hold at least 3 points")
    return int(n_min), int(n_max)


def solve_volterra_right(op, z, window=None, margin=DEFAULT_MARGIN):
    """Jost solution ``v_plus`` of the right companion recurrence at `z`.

    Parameters
    ----------
    op : JacobiOperator
    z : complex
        Spectral parameter, ``0 < |z| < 1`` and away from ``+-1``.
    window : (int, int), optional
        Index range of the returned values. Defaults to the support
        padded by `margin` on each side.

    Returns
    -------
    JostSolution
        ``values[n] = z**n (1 + f_r[n])``.
    """
    z = check_spectral_parameter(z)
    n_min, n_max = _window(op, window, margin)
    f = right_remainders(op, z, n_min, n_max)
    n = np.arange(n_min, n_max + 1)
    return JostSolution(n_min, z**n * (1 + f), remainders=f, side="plus", z=z)


def solve_volterra_left(op, z, window=None, margin=DEFAULT_MARGIN):
    """Jost solution ``w_minus`` of the left companion recurrence at `z`."""
    z = check_spectral_parameter(z)
    n_min, n_max = _window(op, window, margin)
    f = left_remainders(op, z, n_min, n_max)
    n = np.arange(n_min, n_max + 1)
    return JostSolution(n_min, z ** (-n) * (1 + f), remainders=f, side="minus", z=z)


@dataclass(frozen=True)
class TransitionFactors:
    """Products ``alpha_n = prod_{j<n} a_j``, ``gamma_n = prod_{j<n} 1/c_j`` and
    ``beta_n = a_n prod_{j<=n} c_j / a_j`` on the window ``n_min..n_max``."""

    n_min: int
    alpha: np.ndarray
    gamma: np.ndarray
    beta: np.ndarray


def transition_factors(op, n_min, n_max):
    lo = min(n_min, op.support_lo) - 1
    a, _, c = op.entries(lo, n_max)
    # cumulative products starting below the support, where all factors are 1
    alpha = np.concatenate([[1], np.cumprod(a)])[:-1]
    gamma = np.concatenate([[1], np.cumprod(1 / c)])[:-1]
    beta = a * np.cumprod(c / a)
    s = slice(n_min - lo, n_max - lo + 1)
    return TransitionFactors(n_min, alpha[s], gamma[s], beta[s])


def reconstruct_u(op, jost):
    """Jost solution ``u_plus`` or ``u_minus`` of the original recurrence.

    ``u_plus[n] = prod_{j>=n} a_j**-1 * v_plus[n]`` and
    ``u_minus[n] = prod_{j<n} c_j**-1 * w_minus[n]``.
    """
    n = jost.indices
    if jost.side == "plus":
        hi = max(jost.n_max, op.support_hi) + 1
        a, _, _ = op.entries(jost.n_min, hi)
        # reverse cumulative product over j >= n
        tail = np.cumprod(a[::-1])[::-1][: len(n)]
        factor = 1 / tail
    else:
        factor = transition_factors(op, jost.n_min, jost.n_max).gamma
    return LatticeSequence(jost.n_min, factor * jost.values)


def recurrence_residual(op, sequence, z, relation="main", relative=False):
    """Largest residual of a three-term relation over the interior of the window.

    Parameters
    ----------
    relation : {'main', 'der', 'del'}
        ``main``: ``a_{k-1} u_{k-1} + b_k u_k + c_k u_{k+1} = lam u_k``;
        ``der``:  ``v_{k-1} + b_k v_k + a_k c_k v_{k+1} = lam v_k``;
        ``del``:  ``a_{k-1} c_{k-1} w_{k-1} + b_k w_k + w_{k+1} = lam w_k``.
    relative : bool
        Divide each residual by the sum of the moduli of its four terms.
    """
    u = np.asarray(sequence.values, dtype=complex)
    if len(u) < 3:
        raise ValueError("window too small for a three-term relation")
    lam = zhukovsky(complex(z))
    n_min = sequence.n_min
    a, b, c = op.entries(n_min, n_min + len(u) - 1)
    ac = a * c
    if relation == "main":
        left, right = a[:-2], c[1:-1]
    elif relation == "der":
        left, right = np.ones(len(u) - 2), ac[1:-1]
    elif relation == "del":
        left, right = ac[:-2], np.ones(len(u) - 2)
    else:
        raise ValueError(f"unknown relation {relation!r}")
    terms = (left * u[:-2], b[1:-1] * u[1:-1], right * u[2:], lam * u[1:-1])
    res = np.abs(terms[0] + terms[1] + terms[2] - terms[3])
    if relative:
        res = res / sum(np.abs(t) for t in terms)
    return float(res.max())


def apriori_bound(op, jost):
    """Right-hand side and left-hand side of the a-priori Jost bounds.

    For ``v_plus``: ``|v[n] - z**n| <= |z|**n |omega| D_r(n) exp(|omega| D_r(n))``
    with ``D_r(n) = sum_{m>n} delta_r[m]``; mirrored for ``w_minus``.

    Returns
    -------
    lhs, rhs : ndarray
    """
    gauge = compute_gauge(op)
    z = jost.z
    w = abs(omega(z))
    n = jost.indices
    if jost.side == "plus":
        tails = np.array([gauge.tail_r(k) for k in n])
        scale = np.abs(z) ** n.astype(float)
        free = z ** n
    else:
        tails = np.array([gauge.tail_l(k) for k in n])
        scale = np.abs(z) ** (-n.astype(float))
        free = z ** (-n)
    with np.errstate(over="ignore"):
        rhs = scale * w * tails * np.exp(w * tails)
    lhs = np.abs(jost.values - free)
    return lhs, rhs
