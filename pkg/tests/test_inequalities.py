import math

import mpmath
import numpy as np
import pytest

from jacobi_lt.inequalities import (
    DEFAULT_EPSILONS,
    enclosure_radii,
    family_sweep,
    gauge_family,
    inequality_report,
    kappa,
    lt_sums,
    random_family,
    single_site_family,
)
from jacobi_lt.operator import JacobiOperator, compute_gauge
from jacobi_lt.spectrum import SpectralPoint, find_zeros


def point(lam, mult=1):
    z = complex(mpmath.findroot(lambda x: x + 1 / x - lam, 0.5))
    return SpectralPoint(z, mult, 0.0)


class TestKappa:
    def test_against_high_precision_root(self):
        with mpmath.workdps(30):
            ref = mpmath.findroot(lambda x: (4 * x + 5 * x**2) * mpmath.e ** (4 * x) - 1, 0.13)
        assert kappa() == pytest.approx(float(ref), abs=1e-12)

    def test_defining_equation(self):
        k = kappa()
        assert abs((4 * k + 5 * k * k) * math.exp(4 * k) - 1) <= 1e-10
        assert abs(k - 0.129) <= 1e-3

    def test_bracket(self):
        f = lambda x: (4 * x + 5 * x * x) * math.exp(4 * x)  # noqa: E731
        assert f(0) == 0 < 1 < f(1) == pytest.approx(9 * math.e**4)


class TestLtSums:
    def test_empty(self):
        assert lt_sums([], 0.5) == (0, 0)

    def test_single_point(self):
        p = SpectralPoint(0.5, 1, 0.0)
        lt_main, lt_hk = lt_sums([p], 0.5)
        # 40-digit evaluation of the two weighted sums at lam = 2.5
        with mpmath.workdps(40):
            ref_main = mpmath.mpf("0.5") / mpmath.mpf("2.25") ** mpmath.mpf("0.25")
            ref_hk = mpmath.mpf("0.5") ** mpmath.mpf("1.5") / mpmath.mpf("2.25") ** mpmath.mpf("0.625")
        assert lt_main == pytest.approx(float(ref_main), abs=1e-14)
        assert lt_hk == pytest.approx(float(ref_hk), abs=1e-14)
        assert lt_main == pytest.approx(0.40825, abs=1e-5)
        assert lt_hk == pytest.approx(0.212981, abs=1e-6)

    def test_multiplicity_counts(self):
        p1, p2 = point(1 + 2j), point(1 + 2j, 3)
        assert lt_sums([p2], 0.3)[0] == pytest.approx(3 * lt_sums([p1], 0.3)[0])

    def test_rejects_bad_epsilon(self):
        for eps in (0, 1, -0.1, 1.5):
            with pytest.raises(ValueError):
                lt_sums([], eps)

    @pytest.mark.parametrize("b, direction", [(0.5, 1), (1.5, -1)])
    def test_epsilon_monotonicity(self, b, direction):
        # |lam^2 - 4| = b^2: below 1 the main sum grows as epsilon shrinks, above 1 it drops
        points = list(find_zeros(JacobiOperator.single_site(b)))
        vals = [lt_sums(points, e)[0] for e in sorted(DEFAULT_EPSILONS, reverse=True)]
        diffs = np.diff(vals) * direction
        assert np.all(diffs > 0)


class TestRadii:
    def test_single_site(self):
        g = compute_gauge(JacobiOperator.single_site(1.5))
        radii = enclosure_radii(g, True)
        assert radii.sharp == 2.25
        assert radii.birman_schwinger == 324 * 2.25
        assert radii.determinant == pytest.approx((2 * (1.5**0.5 + 1.5) / kappa()) ** 2)
        # with the rounded constant 0.129 the same plug-in gives about 1784
        assert (2 * (1.5**0.5 + 1.5) / 0.129) ** 2 == pytest.approx(1784, abs=1)
        assert radii.determinant > 1700

    def test_free(self):
        radii = enclosure_radii(compute_gauge(JacobiOperator.free()), True)
        assert radii.determinant == radii.birman_schwinger == 0

    def test_non_schrodinger_has_no_sharp_oval(self):
        op = JacobiOperator(0, a=[1.2], b=[0.1], c=[0.9])
        assert enclosure_radii(compute_gauge(op), op.is_schrodinger).sharp is None


def test_single_site_report_attains_sharp_oval():
    rep = inequality_report(JacobiOperator.single_site(1.5), 0.5)
    (m,) = rep.memberships
    assert m["abs_lam2_minus_4"] == pytest.approx(2.25, abs=1e-9)
    assert m["sharp"] and m["determinant"] and m["birman_schwinger"]
    assert rep.violations == []
    assert rep.ratio_main == pytest.approx(0.27217, abs=1e-5)


def test_ratio_conventions():
    rep = inequality_report(JacobiOperator.free(), 0.5)
    assert math.isnan(rep.ratio_main)
    rep = inequality_report(JacobiOperator(0, a=[2], b=[0], c=[0.5]), 0.5)
    assert rep.lt_main == 0 and rep.trace_norm_proxy == 1.5


def test_sweep_single_site_family():
    fam = single_site_family((1 + 1j) / 2**0.5, [0.5, 1, 2, 4])
    res = family_sweep(fam, [0.5])
    assert len(res.reports) == 4 and not res.errors and not res.violations


def test_sweep_gauge_family_has_equal_sums():
    base = random_family(1, 4, 0.6, seed=3, potential=1.5)[0][1]
    res = family_sweep(gauge_family(base, 6, seed=1), [0.25])
    lt = [(r.lt_main, r.lt_hk) for r in res.reports]
    assert np.allclose(lt, lt[0], rtol=1e-9, atol=1e-12)
    proxies = {round(r.trace_norm_proxy, 6) for r in res.reports}
    assert len(proxies) > 1


def test_sweep_records_errors_and_continues():
    class Broken:
        is_free = False

    fam = [("bad", Broken()), ("ok", JacobiOperator.single_site(1.5))]
    res = family_sweep(fam, [0.5])
    assert len(res.errors) == 1 and res.errors[0][0] == "bad"
    assert len(res.reports) == 1


def test_random_schrodinger_family_in_sharp_oval():
    res = family_sweep(random_family(15, 4, 0.0, seed=5, schrodinger=True, potential=2.0), [0.5])
    assert not res.errors and not res.violations
    assert res.max_ratios()[0.5][0] > 0
