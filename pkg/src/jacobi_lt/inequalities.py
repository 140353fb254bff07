"""Lieb–Thirring sums, Cassini-oval enclosures and family sweeps.

The constants in front of the Lieb–Thirring bounds are existence-only, so
nothing here asserts them; sweeps report the ratios ``lt_main / Delta`` and
``lt_hk / ||J - J0||_1`` instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .operator import JacobiOperator, compute_gauge, dist_to_band
from .spectrum import find_zeros

DEFAULT_EPSILONS = (0.05, 0.1, 0.25, 0.5, 0.75, 0.9)
OVAL_SLACK = 1e-9


def _kappa_equation(x):
    return (4 * x + 5 * x * x) * math.exp(4 * x) - 1


def kappa():
    """Positive root of ``(4x + 5x**2) exp(4x) = 1`` (about 0.1287).

    The left side increases on ``[0, inf)`` from 0, so the root in ``[0, 1]``
    is unique.
    """
    return bisect(_kappa_equation, 0.0, 1.0, xtol=1e-12, rtol=4 * np.finfo(float).eps)


def _check_epsilon(epsilon):
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")


def lt_sums(points, epsilon):
    """Weighted eigenvalue sums, counted with multiplicity.

    Returns
    -------
    lt_main : float
        ``sum dist(lam, [-2, 2]) / |lam**2 - 4| ** ((1 - eps) / 2)``
    lt_hk : float
        ``sum dist(lam, [-2, 2]) ** (1 + eps) / |lam**2 - 4| ** (1/2 + eps/4)``
    """
    _check_epsilon(epsilon)
    lt_main = lt_hk = 0.0
    for p in points:
        lam = p.lam
        d = dist_to_band(lam)
        q = abs(lam * lam - 4)
        lt_main += p.multiplicity * d / q ** ((1 - epsilon) / 2)
        lt_hk += p.multiplicity * d ** (1 + epsilon) / q ** (0.5 + epsilon / 4)
    return lt_main, lt_hk


@dataclass(frozen=True)
class EnclosureRadii:
    """Radii ``r`` of the ovals ``|lam**2 - 4| <= r``.

    ``determinant`` comes from the determinant bound, ``birman_schwinger``
    from the Birman–Schwinger principle and ``sharp`` (Schrödinger case
    only, else ``None``) is the optimal one.
    """

    determinant: float
    birman_schwinger: float
    sharp: float | None


def enclosure_radii(gauge, schrodinger):
    s = math.sqrt(gauge.delta_total) + gauge.delta_total
    return EnclosureRadii(
        determinant=(2 * s / kappa()) ** 2,
        birman_schwinger=324 * gauge.trace_norm_proxy**2,
        sharp=gauge.trace_norm_proxy**2 if schrodinger else None,
    )


@dataclass
class InequalityReport:
    epsilon: float
    lt_main: float
    lt_hk: float
    delta: float
    trace_norm_proxy: float
    radii: EnclosureRadii
    eigenvalues: list
    memberships: list
    schrodinger: bool
    label: str = ""

    @property
    def ratio_main(self):
        return _ratio(self.lt_main, self.delta)

    @property
    def ratio_hk(self):
        return _ratio(self.lt_hk, self.trace_norm_proxy)

    @property
    def violations(self):
        """Names of the ovals that some eigenvalue leaves.

        The Birman–Schwinger and sharp ovals only count for Schrödinger
        operators, where the proxy equals the trace norm.
        """
        hard = ["determinant"] + (["birman_schwinger", "sharp"] if self.schrodinger else [])
        return [k for k in hard if not all(m[k] for m in self.memberships)]

    def to_row(self):
        return {
            "label": self.label,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "trace_norm_proxy": self.trace_norm_proxy,
            "n_eigenvalues": sum(m["multiplicity"] for m in self.memberships),
            "lt_main": self.lt_main,
            "lt_hk": self.lt_hk,
            "ratio_main": self.ratio_main,
            "ratio_hk": self.ratio_hk,
            "r_determinant": self.radii.determinant,
            "r_birman_schwinger": self.radii.birman_schwinger,
            "r_sharp": self.radii.sharp,
            "violation_determinant": "determinant" in self.violations,
            "violation_birman_schwinger": "birman_schwinger" in self.violations,
            "violation_sharp": "sharp" in self.violations,
        }


def _ratio(num, den):
    if den > 0:
        return num / den
    return math.inf if num > 0 else math.nan


def oval_memberships(points, radii):
    out = []
    for p in points:
        q = abs(p.lam * p.lam - 4)
        entry = {"lam": p.lam, "multiplicity": p.multiplicity, "abs_lam2_minus_4": q}
        for name in ("determinant", "birman_schwinger", "sharp"):
            r = getattr(radii, name)
            entry[name] = True if r is None else bool(q <= r + OVAL_SLACK)
        out.append(entry)
    return out


def inequality_report(op, epsilon, points=None, label=""):
    """Evaluate sums, radii and memberships for `op` at one `epsilon`."""
    if points is None:
        points = list(find_zeros(op))
    gauge = compute_gauge(op)
    radii = enclosure_radii(gauge, op.is_schrodinger)
    lt_main, lt_hk = lt_sums(points, epsilon)
    return InequalityReport(
        epsilon=float(epsilon),
        lt_main=lt_main,
        lt_hk=lt_hk,
        delta=gauge.delta_total,
        trace_norm_proxy=gauge.trace_norm_proxy,
        radii=radii,
        eigenvalues=[p.lam for p in points],
        memberships=oval_memberships(points, radii),
        schrodinger=op.is_schrodinger,
        label=label,
    )


@dataclass
class SweepResult:
    reports: list
    errors: list = field(default_factory=list)

    @property
    def violations(self):
        return [(r.label, r.epsilon, v) for r in self.reports for v in r.violations]

    def max_ratios(self):
        """Largest ``ratio_main`` and ``ratio_hk`` per epsilon over finite entries."""
        out = {}
        for r in self.reports:
            cur = out.setdefault(r.epsilon, [0.0, 0.0])
            for i, v in enumerate((r.ratio_main, r.ratio_hk)):
                if math.isfinite(v):
                    cur[i] = max(cur[i], v)
        return {e: tuple(v) for e, v in out.items()}


def family_sweep(family, epsilons=DEFAULT_EPSILONS, config=None):
    """Run the spectrum and inequality pipeline on every ``(label, op)`` of `family`.

    A failing member is recorded in ``errors`` and the sweep continues.
    """
    reports, errors = [], []
    for label, op in family:
        try:
            result = find_zeros(op, config)
            if result.unresolved:
                raise RuntimeError(f"{len(result.unresolved)} unresolved boxes in zero search")
            for eps in epsilons:
                reports.append(inequality_report(op, eps, list(result), label))
        except Exception as exc:  # noqa: BLE001 - one bad member must not stop the sweep
            errors.append((label, repr(exc)))
    return SweepResult(reports, errors)


def single_site_family(direction, scales, site=0):
    """Operators with ``b_site = t * direction`` for each ``t`` in `scales`."""
    return [(f"single_site t={t:g}", JacobiOperator.single_site(t * direction, site)) for t in scales]


def random_operator(rng, support, spread, schrodinger=False, support_lo=None, potential=None):
    """Random complex perturbation with entries within `spread` of the free values.

    `potential` scales the diagonal separately (defaults to `spread`).
    Off-diagonal products ``a_j c_j`` are kept away from zero.
    """
    def cplx(scale):
        r = scale * np.sqrt(rng.uniform(0, 1, support))
        return r * np.exp(2j * np.pi * rng.uniform(0, 1, support))

    potential = spread if potential is None else potential
    lo = -(support // 2) if support_lo is None else support_lo
    b = cplx(potential)
    if schrodinger:
        return JacobiOperator(lo, b=b)
    return JacobiOperator(lo, 1 + cplx(spread), b, 1 + cplx(spread))


def random_family(count, support, spread, seed=0, schrodinger=False, potential=None):
    rng = np.random.default_rng(seed)
    return [
        (f"random #{i}", random_operator(rng, support, spread, schrodinger, potential=potential))
        for i in range(count)
    ]


def gauge_family(op, count, seed=0, spread=0.9):
    """`count` random diagonal similarity transforms of `op` (first member is `op`)."""
    rng = np.random.default_rng(seed)
    out = [("gauge #0", op)]
    lo = op.support_lo - 1
    width = op.size + 2
    for i in range(1, count):
        r = (1 + spread * rng.uniform(-1, 1, width)) * np.exp(1j * rng.uniform(-np.pi, np.pi, width))
        out.append((f"gauge #{i}", op.gauge(r, start=lo)))
    return out
