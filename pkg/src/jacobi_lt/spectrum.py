"""Discrete spectrum as the zero set of the perturbation determinant.

Zeros of ``U`` in the unit disk are localized by recursive subdivision of
polar boxes ``[r0, r1] x [t0, t1]`` with the argument principle, then
polished by Newton's method.  A dense eigensolver on finite sections of
``J`` provides an independent check.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .determinant import determinant_oracle, determinant_u
from .operator import dist_to_band, zhukovsky

log = logging.getLogger(__name__)

# split fractions tried in turn when a child contour runs through a zero
_SPLITS = (0.4619, 0.5381, 0.4127, 0.5873)
_MAX_POINTS = 2**18


@dataclass(frozen=True)
class ZeroFinderConfig:
    r_min: float = 1e-3
    r_max: float = 1 - 1e-4
    n_sectors: int = 8
    theta_offset: float = 0.1234
    min_diameter: float = 1e-8
    newton_tol: float = 1e-13
    max_newton: int = 60
    initial_samples: int = 64
    max_boxes: int = 20000


@dataclass(frozen=True)
class SpectralPoint:
    """Zero ``z`` of ``U`` with multiplicity; ``lam = z + 1/z`` is the eigenvalue."""

    z: complex
    multiplicity: int
    residual: float

    @property
    def lam(self):
        return zhukovsky(self.z)


@dataclass
class UnresolvedBox:
    box: tuple
    reason: str


@dataclass
class SpectrumResult:
    """Outcome of a zero search.

    Iterating yields the `SpectralPoint` records; ``total_winding`` is the
    winding number of ``U`` around the whole annulus.
    """

    points: list
    total_winding: int | None
    unresolved: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def multiplicity_sum(self):
        return sum(p.multiplicity for p in self.points)

    @property
    def complete(self):
        return not self.unresolved and self.total_winding == self.multiplicity_sum


def _contour(box, s):
    """Positively oriented boundary of a polar box at parameters ``s`` in [0, 1)."""
    r0, r1, t0, t1 = box
    s = np.asarray(s, dtype=float)
    edge = np.minimum((4 * s).astype(int), 3)
    u = 4 * s - edge
    r = np.choose(edge, [r0 + (r1 - r0) * u, np.full_like(u, r1), r1 - (r1 - r0) * u, np.full_like(u, r0)])
    t = np.choose(edge, [np.full_like(u, t0), t0 + (t1 - t0) * u, np.full_like(u, t1), t1 - (t1 - t0) * u])
    return r * np.exp(1j * t)


def _circle(r):
    return lambda s: r * np.exp(2j * np.pi * np.asarray(s))


def _argument_increment(func, path, s):
    """Refine parameters ``s`` until every argument step is below ``pi / 4``."""
    vals = func(path(s))
    while True:
        if not np.all(np.isfinite(vals)) or np.any(vals == 0):
            return None, s, vals
        steps = np.angle(np.roll(vals, -1) / vals)
        coarse = np.abs(steps) >= np.pi / 4
        if not coarse.any():
            return steps.sum(), s, vals
        idx = np.flatnonzero(coarse)
        s_next = np.append(s[1:], 1.0)
        mid = 0.5 * (s[idx] + s_next[idx])
        if s.size + mid.size > _MAX_POINTS or np.any((mid <= s[idx]) | (mid >= s_next[idx])):
            return None, s, vals
        s = np.insert(s, idx + 1, mid)
        vals = np.insert(vals, idx + 1, func(path(mid)))


def winding_number(func, path, initial=32):
    """Winding number of ``func`` along the closed ``path(s)``, ``s`` in [0, 1).

    Segments whose argument increment exceeds ``pi / 4`` are bisected
    adaptively; the count is then confirmed by doubling the sampling once.
    Returns ``None`` if the increment is not within 0.1 of a multiple of
    ``2 pi`` or the two resolutions disagree.
    """
    s = np.arange(initial) / initial
    total, s, _ = _argument_increment(func, path, s)
    if total is None:
        return None
    w = total / (2 * np.pi)
    if abs(w - round(w)) >= 0.1:
        return None
    s2 = np.sort(np.concatenate([s, 0.5 * (s + np.append(s[1:], 1.0))]))
    total2, _, _ = _argument_increment(func, path, s2)
    if total2 is None or round(total2 / (2 * np.pi)) != round(w):
        return None
    return int(round(w))


def _box_winding(func, box, cfg):
    return winding_number(func, lambda s: _contour(box, s), cfg.initial_samples)


def _diameter(box):
    r0, r1, t0, t1 = box
    return max(r1 - r0, 2 * r1 * np.sin(min(t1 - t0, np.pi) / 2))


def _inside(z, box, pad=0.0):
    r0, r1, t0, t1 = box
    r = abs(z)
    t = (np.angle(z) - t0) % (2 * np.pi) + t0
    return r0 - pad <= r <= r1 + pad and t0 - pad <= t <= t1 + pad


def _newton(func, z, cfg):
    for _ in range(cfg.max_newton):
        h = 1e-6 * (1 + abs(z))
        f, fp, fm = func(np.array([z, z + h, z - h]))
        if f == 0:
            return z, True
        d = (fp - fm) / (2 * h)
        if d == 0 or not np.isfinite(d):
            return z, False
        step = f / d
        z = z - step
        if abs(z) >= 1:
            return z, False
        if abs(step) <= cfg.newton_tol * (1 + abs(z)):
            return z, True
    return z, False


def _split(box, fr, ft):
    r0, r1, t0, t1 = box
    rm = r0 + fr * (r1 - r0)
    tm = t0 + ft * (t1 - t0)
    if r1 - r0 >= r1 * (t1 - t0):
        return [(r0, rm, t0, t1), (rm, r1, t0, t1)]
    return [(r0, r1, t0, tm), (r0, r1, tm, t1)]


def locate_zeros(func, config=None):
    """Zeros of an analytic vectorized ``func`` in the annulus of `config`.

    Returns
    -------
    SpectrumResult
    """
    cfg = config or ZeroFinderConfig()
    unresolved = []
    outer = winding_number(func, _circle(cfg.r_max), cfg.initial_samples)
    inner = winding_number(func, _circle(cfg.r_min), cfg.initial_samples)
    total = None
    if outer is None:
        unresolved.append(UnresolvedBox((cfg.r_max, cfg.r_max, 0, 2 * np.pi), "zero near outer circle"))
    if inner is None or inner != 0:
        unresolved.append(UnresolvedBox((0, cfg.r_min, 0, 2 * np.pi), "zero inside inner circle"))
    if outer is not None and inner is not None:
        total = outer - inner

    width = 2 * np.pi / cfg.n_sectors
    stack = []
    for k in range(cfg.n_sectors):
        t0 = cfg.theta_offset + k * width
        box = (cfg.r_min, cfg.r_max, t0, t0 + width)
        stack.append((box, _box_winding(func, box, cfg)))

    points = []
    n_boxes = 0
    while stack:
        box, w = stack.pop()
        n_boxes += 1
        if w == 0:
            continue
        if w is None or w < 0:
            unresolved.append(UnresolvedBox(box, "winding number did not stabilize"))
            continue
        if n_boxes > cfg.max_boxes:
            unresolved.append(UnresolvedBox(box, "box budget exhausted"))
            continue
        center = 0.5 * (box[0] + box[1]) * np.exp(0.5j * (box[2] + box[3]))
        if w == 1:
            z, ok = _newton(func, complex(center), cfg)
            if ok and _inside(z, box, pad=1e-12):
                points.append(SpectralPoint(complex(z), 1, float(abs(func(np.array([z]))[0]))))
                continue
        if _diameter(box) <= cfg.min_diameter:
            points.append(SpectralPoint(complex(center), int(w), float(abs(func(np.array([center]))[0]))))
            continue
        for fr in _SPLITS:
            children = _split(box, fr, 1 - fr)
            ws = [_box_winding(func, c, cfg) for c in children]
            if None not in ws and sum(ws) == w:
                stack.extend(zip(children, ws))
                break
        else:
            unresolved.append(UnresolvedBox(box, "subdivision inconsistent with parent winding"))

    points.sort(key=lambda p: (p.lam.real, p.lam.imag))
    if unresolved:
        log.warning("zero search left %d unresolved boxes", len(unresolved))
    return SpectrumResult(points, total, unresolved)


def find_zeros(op, config=None):
    """Discrete spectrum of `op` as zeros of the Wronskian determinant ``U``."""
    if op.is_free:
        return SpectrumResult([], 0, [])
    return locate_zeros(lambda z: determinant_u(op, z), config)


def find_zeros_oracle(op, config=None):
    """Same search run on the resolvent determinant ``L(z + 1/z)``."""
    if op.is_free:
        return SpectrumResult([], 0, [])
    return locate_zeros(lambda z: determinant_oracle(op, z + 1 / z), config)


@dataclass
class FiniteSectionResult:
    """All eigenvalues of the ``(2N+1)``-dimensional section on ``[-N, N]``.

    ``matched`` lists ``(eigenvalue, point_index, distance)`` for every
    eigenvalue at distance at least ``band_distance`` from ``[-2, 2]``;
    ``point_index`` is ``None`` when no spectral points were supplied.
    """

    half_width: int
    eigenvalues: np.ndarray
    matched: list


def finite_section_eigenvalues(op, N, points=(), band_distance=0.1):
    """Eigenvalues of the plain cut-off of ``J`` to indices ``-N..N``.

    Uses LAPACK's non-Hermitian eigensolver (Hessenberg reduction and
    shifted QR).  Off-band eigenvalues are paired with the nearest ``lam``
    of `points`.
    """
    radius = 0 if op.is_free else max(abs(op.support_lo), abs(op.support_hi))
    if N < radius + 10:
        raise ValueError(f"N={N} too small for support radius {radius}; need N >= {radius + 10}")
    eig = np.linalg.eigvals(op.matrix(-N, N))
    eig = eig[np.lexsort((eig.imag, eig.real))]
    lams = np.array([p.lam for p in points], dtype=complex)
    matched = []
    for ev in eig:
        if dist_to_band(ev) < band_distance:
            continue
        if len(lams):
            d = np.abs(lams - ev)
            j = int(np.argmin(d))
            matched.append((complex(ev), j, float(d[j])))
        else:
            matched.append((complex(ev), None, float("nan")))
    return FiniteSectionResult(N, eig, matched)


def match_zero_sets(first, second):
    """Largest pairing distance between two zero lists, ``inf`` if they differ in size.

    Zeros are expanded by multiplicity and paired greedily by nearest distance.
    """
    za = [p.z for p in first for _ in range(p.multiplicity)]
    zb = [p.z for p in second for _ in range(p.multiplicity)]
    if len(za) != len(zb):
        return float("inf")
    worst = 0.0
    remaining = list(zb)
    for z in za:
        d = [abs(z - y) for y in remaining]
        j = int(np.argmin(d))
        worst = max(worst, d[j])
        remaining.pop(j)
    return worst


@dataclass
class SimilarityReport:
    original: SpectrumResult
    transformed: SpectrumResult
    max_distance: float
    tolerance: float

    @property
    def equal(self):
        return self.max_distance <= self.tolerance


def similarity_check(op, r, config=None, tolerance=1e-8):
    """Compare the zero sets of `op` and of its diagonal similarity transform by `r`."""
    transformed = op.gauge(r)
    a = find_zeros(op, config)
    b = find_zeros(transformed, config)
    return SimilarityReport(a, b, match_zero_sets(a.points, b.points), tolerance)
