from fractions import Fraction as F

import pytest
from mpmath import mp

from cylasym.errors import NonConvergence
from cylasym.gammafns import (gamma_ratio_thirds, gamma_real, gamma_thirds,
                              rising_rational)
from cylasym.quadrature import QuadratureConfig, integrate_decaying, quad_finite
from cylasym.sheeted import SheetedComplex

CFG = QuadratureConfig()


def test_gamma_thirds_against_mpmath():
    with mp.workdps(45):
        for q in (F(1, 3), F(2, 3), F(4, 3), F(7, 3), F(35, 3), F(-2, 3), F(-7, 3)):
            ours = gamma_thirds(q)
            ref = mp.gamma(mp.mpf(q.numerator) / q.denominator)
            assert abs(ours - ref) / abs(ref) < mp.mpf("1e-38")


def test_gamma_integers_exact():
    assert gamma_thirds(F(5)) == 24
    assert gamma_thirds(F(1)) == 1
    with pytest.raises(ValueError):
        gamma_thirds(F(0))
    with pytest.raises(ValueError):
        gamma_thirds(F(-3))
    with pytest.raises(ValueError):
        gamma_thirds(F(1, 2))


def test_rising_and_ratio():
    assert rising_rational(F(1, 3), 3) == F(1, 3) * F(4, 3) * F(7, 3)
    assert rising_rational(F(1, 3), 0) == 1
    assert gamma_ratio_thirds(F(10, 3), F(1, 3)) == rising_rational(F(1, 3), 3)


def test_gamma_real_dispatch():
    with mp.workdps(30):
        assert abs(gamma_real(mp.mpf(4)) - 6) < mp.mpf("1e-25")
        ours = gamma_real(mp.mpf(1) / 3)
        ref = gamma_thirds(F(1, 3))
        assert abs(ours - ref) < mp.mpf("1e-28")
        general = gamma_real(mp.mpf("2.71"))
        assert abs(general - mp.gamma(mp.mpf("2.71"))) < mp.mpf("1e-25")


def test_sheeted_keeps_unreduced_angle():
    z = SheetedComplex(2.0, theta_over_pi=F(5, 2))
    assert z.theta_over_pi == F(5, 2)
    assert abs(z.theta - 2.5 * 3.141592653589793) < 1e-12
    # the principal value coincides with theta mod 2pi, the sheet does not
    v = z.value()
    assert abs(v - 2j * mp.exp(0)) < mp.mpf("1e-12")


def test_sheeted_power_sees_the_sheet():
    z0 = SheetedComplex(1.0, theta_over_pi=F(0))
    z1 = z0.rotate(turns_of_pi=2)  # same point, next sheet
    assert abs(z0.power(F(1, 3)) - 1) < mp.mpf("1e-14")
    expected = mp.exp(2j * mp.pi / 3)
    assert abs(z1.power(F(1, 3)) - expected) < mp.mpf("1e-14")


def test_sheeted_construction_and_ops():
    with pytest.raises(ValueError):
        SheetedComplex(-1.0, 0.0)
    with pytest.raises(ValueError):
        SheetedComplex(1.0)
    z = SheetedComplex.from_complex(1 + 1j)
    assert z.theta == pytest.approx(0.7853981633974483)
    w = z.conjugate()
    assert w.theta == pytest.approx(-z.theta)
    s = z.scale(2.0)
    assert abs(s.r - 2 * abs(1 + 1j)) < 1e-12
    assert z.rotate(radians=0.5).theta == pytest.approx(z.theta + 0.5)


def test_quad_polynomial_and_log():
    assert abs(quad_finite(lambda x: x * x, 0, 1, CFG) - mp.mpf(1) / 3) < mp.mpf("1e-13")
    assert abs(quad_finite(lambda x: mp.log(1 / x), 0, 1, CFG) - 1) < mp.mpf("1e-12")
    assert abs(quad_finite(lambda x: 1 / mp.sqrt(x), 0, 1, CFG) - 2) < mp.mpf("1e-12")


def test_quad_complex_integrand():
    got = quad_finite(lambda x: mp.exp(1j * x), 0, mp.pi, CFG)
    assert abs(got - 2j) < mp.mpf("1e-12")


def test_decaying_integrals():
    assert abs(integrate_decaying(lambda t: mp.exp(-t), CFG) - 1) < mp.mpf("1e-12")
    target = mp.mpf(6) / (2 * mp.pi) ** 4
    got = integrate_decaying(lambda t: t ** 3 * mp.exp(-2 * mp.pi * t), CFG)
    assert abs(got - target) / target < mp.mpf("1e-12")
    got = integrate_decaying(lambda t: mp.exp(-t) * mp.cos(t), CFG)
    assert abs(got - mp.mpf(1) / 2) < mp.mpf("1e-12")


def test_tolerance_halving_is_consistent():
    loose = QuadratureConfig(rel_tol=1e-8)
    a = quad_finite(lambda x: mp.sin(3 * x) ** 2 / (1 + x), 0, 4, loose)
    b = quad_finite(lambda x: mp.sin(3 * x) ** 2 / (1 + x), 0, 4, loose.halved())
    assert abs(a - b) / abs(b) < 1e-7


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=1e-3)
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_refinements=0)


def test_nonconvergence_is_raised():
    blow_up = QuadratureConfig(rel_tol=1e-13, max_refinements=1)
    with pytest.raises(NonConvergence):
        quad_finite(lambda x: mp.sin(1 / x) / x, 1e-9, 1, blow_up)
