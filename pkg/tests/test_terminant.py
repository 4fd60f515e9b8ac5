"""Terminant tests: dual backends, the switching variable, and the
error-function smoothing of the jump across arg w = -pi."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from cylasym.errors import SectorViolation
from cylasym.oracles import upper_incomplete_gamma
from cylasym.quadrature import QuadratureConfig
from cylasym.sheeted import SheetedComplex
from cylasym.terminant import (
    TerminantQuery,
    _c_series,
    _terminant_gamma,
    _terminant_integral,
    c_of_phi,
    smoothing_approx,
    terminant,
)


_CFG = QuadratureConfig()


@pytest.fixture(autouse=True)
def _working_precision():
    old = mp.dps
    mp.dps = 25
    yield
    mp.dps = old


def _exp_one_integral():
    """E_1(1) summed from the alternating series -euler + sum (-1)^(k+1)/(k k!)."""
    total = -mp.euler
    term = mp.mpf(1)
    for k in range(1, 60):
        term *= -mp.mpf(1) / k
        total -= term / k
    return total


def test_unit_index_at_unit_argument():
    q = TerminantQuery(1, SheetedComplex(1, theta_over_pi=Fraction(0)))
    got = terminant(q)
    expected = 1j * _exp_one_integral() / (2 * mp.pi)
    assert abs(got - expected) <= mp.mpf("1e-20") * abs(expected)
    assert abs(got - 0.034916j) < 1e-6


def test_vanishes_when_index_rides_modulus():
    mags = []
    for size in (10, 20, 40):
        w = SheetedComplex(size, theta_over_pi=Fraction(0))
        mags.append(abs(terminant(TerminantQuery(size, w))))
    assert mags[0] > mags[1] > mags[2]
    assert mags[2] < mp.mpf("1e-30")


@pytest.mark.parametrize("p", [2.5, 10, Fraction(7, 3)])
def test_backend_agreement_on_principal_sheet(p):
    tops = (Fraction(-9, 10), Fraction(-2, 5), Fraction(0),
            Fraction(1, 2), Fraction(9, 10))
    for top in tops:
        for size in (5, 16):
            w = SheetedComplex(size, theta_over_pi=top)
            by_integral = _terminant_integral(p, w, _CFG)
            by_gamma = _terminant_gamma(p, w, _CFG)
            assert abs(by_integral - by_gamma) <= 1e-12 * abs(by_gamma)


def test_reflection_form_at_unit_index():
    # e^(i pi) Gamma(1) Gamma(0, w) / (2 pi i) collapses to -Gamma(0, w)/(2 pi i)
    for top in (Fraction(-3, 5), Fraction(0), Fraction(7, 10)):
        w = SheetedComplex(7, theta_over_pi=top)
        direct = -upper_incomplete_gamma(0, w) / (2j * mp.pi)
        assert abs(_terminant_integral(1, w, _CFG) - direct) \
            <= 1e-12 * abs(direct)


def test_switch_variable_center():
    assert c_of_phi(mp.pi) == 0
    h = mp.mpf("1e-6")
    slope = (c_of_phi(mp.pi + h) - c_of_phi(mp.pi - h)) / (2 * h)
    assert abs(slope - 1) < 1e-10


def test_switch_variable_residual_grid():
    for j in range(100):
        phi = -mp.pi + 4 * mp.pi * (j + mp.mpf(1) / 2) / 100
        c = c_of_phi(phi)
        x = phi - mp.pi
        assert abs(c * c / 2 - (1 + 1j * x - mp.exp(1j * x))) <= mp.mpf("1e-13")


def test_switch_variable_matches_series_near_center():
    for xf in (-0.5, -0.3, -0.1, 0.1, 0.3, 0.5):
        x = mp.mpf(xf)
        assert abs(c_of_phi(mp.pi + x) - _c_series(x)) <= abs(xf) ** 5


def test_switch_variable_domain():
    with pytest.raises(ValueError):
        c_of_phi(-math.pi - 1e-9)
    with pytest.raises(ValueError):
        c_of_phi(3 * math.pi + 1e-9)


@settings(max_examples=80, deadline=None)
@given(phi=st.floats(min_value=-math.pi + 1e-3, max_value=3 * math.pi - 1e-3))
def test_switch_variable_residual_everywhere(phi):
    mp.dps = 25
    c = c_of_phi(phi)
    x = mp.mpf(phi) - mp.pi
    assert abs(c * c / 2 - (1 + 1j * x - mp.exp(1j * x))) <= mp.mpf("1e-12")


def test_smoothing_halfway_on_switching_ray():
    w = SheetedComplex(60, theta_over_pi=Fraction(-1))
    assert abs(smoothing_approx(60, w) + mp.mpf(1) / 2) < mp.mpf("1e-20")


def test_smoothing_tracks_terminant_through_switch():
    p = 60
    budget = 3 / math.sqrt(60)
    for top in (Fraction(-6, 5), Fraction(-11, 10), Fraction(-1),
                Fraction(-9, 10), Fraction(-4, 5)):
        w = SheetedComplex(60, theta_over_pi=top)
        smoothed = smoothing_approx(p, w)
        exact = mp.expjpi(-2 * p) * terminant(TerminantQuery(p, w))
        assert abs(smoothed - exact) <= budget


def test_smoothing_far_from_switch():
    w = SheetedComplex(60, theta_over_pi=Fraction(-1, 5))
    smoothed = smoothing_approx(60, w)
    exact = mp.expjpi(-120) * terminant(TerminantQuery(60, w))
    assert abs(smoothed) < 1e-6
    assert abs(exact) < 1e-6
    assert abs(smoothed - exact) < 1e-6


def test_normalized_profile_monotone_through_axis():
    # Re(-T_N(-2 pi i z)) at |z| = 10, N = round(2 pi |z|), theta crossing
    # the negative imaginary axis: slides from 1 to 0 and is monotone.
    order = round(2 * math.pi * 10)
    profile = []
    for num in range(-12, -7):
        w = SheetedComplex(2 * math.pi * 10,
                           theta_over_pi=Fraction(num, 20) - Fraction(1, 2))
        profile.append(mp.re(-terminant(TerminantQuery(order, w))))
    assert all(a > b for a, b in zip(profile, profile[1:]))
    assert profile[0] > 0.9
    assert profile[-1] < 0.1
    assert 0.45 < profile[2] < 0.55


@pytest.mark.parametrize("p", [10, 20])
def test_sector_magnitudes(p):
    for num in range(-4, 5):
        w = SheetedComplex(p, theta_over_pi=Fraction(num, 4))
        scale = mp.exp(-mp.re(w.value()) - w.r)
        assert abs(terminant(TerminantQuery(p, w))) <= 10 * scale
    for num in range(-11, -3):
        w = SheetedComplex(p, theta_over_pi=Fraction(num, 4))
        assert abs(terminant(TerminantQuery(p, w))) <= 10


def test_query_validation():
    w = SheetedComplex(3, theta_over_pi=Fraction(1, 4))
    with pytest.raises(ValueError):
        TerminantQuery(0, w)
    with pytest.raises(ValueError):
        TerminantQuery(-2, w)
    with pytest.raises(TypeError):
        TerminantQuery(1, 3.0)


def test_smoothing_sector_gate():
    with pytest.raises(SectorViolation):
        smoothing_approx(5, SheetedComplex(5, theta_over_pi=Fraction(1)))
    with pytest.raises(SectorViolation):
        smoothing_approx(5, SheetedComplex(5, theta_over_pi=Fraction(-3)))
    with pytest.raises(ValueError):
        smoothing_approx(0, SheetedComplex(5, theta_over_pi=Fraction(0)))
