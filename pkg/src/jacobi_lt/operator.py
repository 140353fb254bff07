"""Whole-line Jacobi operators with finitely supported perturbations.

The operator acts on two-sided sequences by

.. math:: (Ju)_k = a_{k-1} u_{k-1} + b_k u_k + c_k u_{k+1}

and coincides with the discrete Laplacian ``J0`` (``a = c = 1``, ``b = 0``)
outside a finite window of indices.  Also collects the conformal plumbing
(Zhukovsky map and its inverse, distance to the band ``[-2, 2]``).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TOL_EDGE = 1e-12


class EdgeProximityError(ValueError):
    """Spectral parameter too close to the band, to ``z = +-1`` or to ``z = 0``."""


def _as_complex_tuple(values):
    return tuple(complex(v) for v in values)


@dataclass(frozen=True)
class JacobiOperator:
    """Compactly supported perturbation of the free Jacobi operator.

    Parameters
    ----------
    support_lo : int
        Lattice index of the first stored entry.
    a, b, c : sequence of complex
        Sub-diagonal, diagonal and super-diagonal entries for indices
        ``support_lo, ..., support_lo + len - 1``.  Outside the window the
        entries are free: ``a_j = c_j = 1``, ``b_j = 0``.

    The stored window is trimmed on construction so that equal operators
    compare equal.
    """

    support_lo: int
    a: tuple = field(default=())
    b: tuple = field(default=())
    c: tuple = field(default=())

    def __post_init__(self):
        a, b, c = (_as_complex_tuple(x) for x in (self.a, self.b, self.c))
        n = max(len(a), len(b), len(c))
        a = a + (1,) * (n - len(a)) if a else (1 + 0j,) * n
        c = c + (1,) * (n - len(c)) if c else (1 + 0j,) * n
        b = b + (0,) * (n - len(b)) if b else (0j,) * n
        a, b, c = (tuple(complex(v) for v in x) for x in (a, b, c))
        for j, (aj, cj) in enumerate(zip(a, c)):
            if aj * cj == 0:
                raise ValueError(f"a_j * c_j vanishes at index {self.support_lo + j}")
        for name, x in (("a", a), ("b", b), ("c", c)):
            if not all(np.isfinite(v) for v in x):
                raise ValueError(f"non-finite entry in {name}")

        free = [aj == 1 and bj == 0 and cj == 1 for aj, bj, cj in zip(a, b, c)]
        lo, hi = 0, n
        while lo < hi and free[lo]:
            lo += 1
        while hi > lo and free[hi - 1]:
            hi -= 1
        support_lo = self.support_lo + lo if hi > lo else 0
        object.__setattr__(self, "support_lo", int(support_lo))
        object.__setattr__(self, "a", a[lo:hi])
        object.__setattr__(self, "b", b[lo:hi])
        object.__setattr__(self, "c", c[lo:hi])

    @classmethod
    def free(cls):
        """The discrete Laplacian ``J0``."""
        return cls(0)

    @classmethod
    def single_site(cls, b, site=0):
        """Discrete Schrödinger operator with one nonzero potential value."""
        return cls(site, b=[b])

    @property
    def size(self):
        return len(self.b)

    @property
    def is_free(self):
        return self.size == 0

    @property
    def support_hi(self):
        """Last stored index (``support_lo - 1`` for the free operator)."""
        return self.support_lo + self.size - 1

    @property
    def is_schrodinger(self):
        return all(v == 1 for v in self.a) and all(v == 1 for v in self.c)

    def _get(self, seq, j, default):
        k = j - self.support_lo
        if 0 <= k < self.size:
            return seq[k]
        return default

    def a_at(self, j):
        return self._get(self.a, j, 1 + 0j)

    def b_at(self, j):
        return self._get(self.b, j, 0j)

    def c_at(self, j):
        return self._get(self.c, j, 1 + 0j)

    def ac_at(self, j):
        """Product ``a_j c_j``; the only off-diagonal data the spectrum sees."""
        return self.a_at(j) * self.c_at(j)

    def entries(self, lo, hi):
        """Arrays ``(a, b, c)`` over the index range ``lo..hi`` inclusive."""
        idx = range(lo, hi + 1)
        return (
            np.array([self.a_at(j) for j in idx], dtype=complex),
            np.array([self.b_at(j) for j in idx], dtype=complex),
            np.array([self.c_at(j) for j in idx], dtype=complex),
        )

    def gauge(self, r, start=None):
        """Diagonally similar operator ``J({a_j r_j}, {b_j}, {c_j / r_j})``.

        Parameters
        ----------
        r : sequence of complex or dict
            Nonzero factors. A sequence is placed at indices starting from
            `start` (default: `support_lo`); a dict maps index to factor.
        """
        if not isinstance(r, dict):
            start = self.support_lo if start is None else start
            r = {start + k: complex(v) for k, v in enumerate(r)}
        if any(v == 0 for v in r.values()):
            raise ValueError("gauge factors must be nonzero")
        idx = [j for j in r] + list(range(self.support_lo, self.support_hi + 1))
        if not idx:
            return self
        lo, hi = min(idx), max(idx)
        a, b, c = self.entries(lo, hi)
        rr = np.array([r.get(j, 1) for j in range(lo, hi + 1)], dtype=complex)
        return JacobiOperator(lo, a * rr, b, c / rr)

    def matrix(self, lo, hi):
        """Dense truncation of ``J`` to indices ``lo..hi`` (plain cut-off)."""
        a, b, c = self.entries(lo, hi)
        return np.diag(b) + np.diag(a[:-1], -1) + np.diag(c[:-1], 1)


@dataclass(frozen=True)
class PerturbationGauge:
    """Size functionals of ``J - J0``.

    ``delta_r[m] = |b_m| + |1 - a_{m-1} c_{m-1}|`` and
    ``delta_l[m] = |b_m| + |1 - a_m c_m|`` over their nonzero ranges.
    """

    delta_total: float
    delta_r: dict
    delta_l: dict
    trace_norm_proxy: float

    def tail_r(self, n):
        """``sum_{m > n} delta_r[m]``."""
        return float(sum(v for m, v in self.delta_r.items() if m > n))

    def tail_l(self, n):
        """``sum_{m < n} delta_l[m]``."""
        return float(sum(v for m, v in self.delta_l.items() if m < n))


def compute_gauge(op):
    """Evaluate the perturbation size functionals of `op`."""
    if op.is_free:
        return PerturbationGauge(0.0, {}, {}, 0.0)
    lo, hi = op.support_lo, op.support_hi
    delta_r = {m: abs(op.b_at(m)) + abs(1 - op.ac_at(m - 1)) for m in range(lo, hi + 2)}
    delta_l = {m: abs(op.b_at(m)) + abs(1 - op.ac_at(m)) for m in range(lo, hi + 1)}
    delta = sum(abs(op.b_at(m)) + abs(1 - op.ac_at(m)) for m in range(lo, hi + 1))
    proxy = sum(abs(1 - op.a_at(m)) + abs(op.b_at(m)) + abs(1 - op.c_at(m))
                for m in range(lo, hi + 1))
    return PerturbationGauge(float(delta), delta_r, delta_l, float(proxy))


def zhukovsky(z):
    """``z + 1/z``."""
    return z + 1 / z


def omega(z):
    """``2 z / (1 - z**2)``."""
    return 2 * z / (1 - z * z)


def dist_to_band(lam):
    """Euclidean distance from `lam` to the segment ``[-2, 2]``."""
    lam = np.asarray(lam, dtype=complex)
    x = np.clip(lam.real, -2.0, 2.0)
    d = np.abs(lam - x)
    return float(d) if d.ndim == 0 else d


def zhukovsky_inverse(lam, tol_edge=TOL_EDGE):
    """Root of ``z**2 - lam z + 1 = 0`` inside the unit disk.

    Raises
    ------
    EdgeProximityError
        If `lam` lies within `tol_edge` of ``[-2, 2]``.
    """
    lam = complex(lam)
    if dist_to_band(lam) <= tol_edge:
        raise EdgeProximityError(f"lambda={lam} is within {tol_edge} of [-2, 2]")
    s = np.sqrt(lam * lam - 4 + 0j)
    z1, z2 = (lam + s) / 2, (lam - s) / 2
    # the larger root is computed without cancellation; the other from z1 z2 = 1
    big = z1 if abs(z1) >= abs(z2) else z2
    return complex(1 / big)


@dataclass(frozen=True)
class SpectralParameter:
    """A point ``z`` of the punctured unit disk with its images."""

    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if z == 0 or abs(z) >= 1:
            raise EdgeProximityError(f"z={z} outside the punctured unit disk")
        object.__setattr__(self, "z", z)

    @property
    def lam(self):
        return zhukovsky(self.z)

    @property
    def omega(self):
        return omega(self.z)

    @classmethod
    def from_lambda(cls, lam, tol_edge=TOL_EDGE):
        return cls(zhukovsky_inverse(lam, tol_edge))
