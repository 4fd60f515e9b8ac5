"""The scaled terminant and its error-function switching law.

The central object is

    T_p(w) = e^(i pi p) Gamma(p) Gamma(1-p, w) / (2 pi i),

read on whatever sheet w declares.  Strictly inside |arg w| < pi it is
evaluated from the equivalent Cauchy-type integral

    e^(i pi p) w^(1-p) e^(-w) / (2 pi i) * int_0^oo t^(p-1) e^(-t) / (w+t) dt,

whose integrand never oscillates, so plain positive-axis quadrature
suffices.  Beyond the cut the reflection form above takes over, with the
sheet carried by the incomplete-gamma continuation
Gamma(a, w e^(2 pi i m)) = e^(2 pi i m a) Gamma(a, w) + (1 - e^(2 pi i m a)) Gamma(a)
that the reference-oracle module already implements.  The two routes
overlap on the principal sheet and are kept separate so each can audit
the other.

Crossing arg w = -pi turns T_p(w) from exponentially small to order one.
When the index rides the modulus (p of the size of |w|) the crossing is
described to leading order by an error function: c_of_phi solves
(1/2) c^2 = 1 + i (phi - pi) - e^(i (phi - pi)) on the branch with
c(pi) = 0, c'(pi) = 1, and smoothing_approx assembles
-1/2 + (1/2) erf(-conj(c(-phi)) sqrt(|w|/2)), the smoothed value of
e^(-2 pi i p) T_p(w).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .errors import NonConvergence, SectorViolation
from .gammafns import gamma_real
from .oracles import _self_validated, upper_incomplete_gamma
from .quadrature import QuadratureConfig, integrate_decaying
from .sheeted import SheetedComplex

_DEFAULT_CFG = QuadratureConfig()

# Taylor coefficients of the chosen branch of c around phi = pi, and the
# radius inside which that four-term seed is trusted on its own.
_SERIES_TRUST = 0.5


def _to_mpf(value):
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / value.denominator
    return mp.mpf(value)


@dataclass(frozen=True)
class TerminantQuery:
    """Index and sheeted argument for one terminant evaluation."""

    p: float | Fraction
    w: SheetedComplex

    def __post_init__(self):
        if not isinstance(self.w, SheetedComplex):
            raise TypeError("w must be a SheetedComplex")
        if not float(self.p) > 0:
            raise ValueError(f"terminant index must be positive, got {self.p}")
        if not self.w.r > 0:
            raise ValueError("terminant argument must have positive modulus")


def _terminant_integral(p, w: SheetedComplex, cfg: QuadratureConfig):
    """Cauchy-type integral route, valid strictly inside |arg w| < pi.

    For p below 1 the substitution t = u^m with m p >= 1 removes the
    endpoint singularity, as the quadrature module requires.  The only
    precision hazard is the pole at t = -w brushing the contour when
    arg w approaches the cut; the csc-sized spike it puts into the
    integrand is prepaid in the cancellation allowance.
    """
    theta = w.theta
    if not abs(theta) < math.pi:
        raise SectorViolation(
            f"integral route needs |arg w| < pi, got arg w = {theta:.6g}")
    gap = math.pi - abs(theta)
    spike = 0.0 if abs(theta) <= math.pi / 2 else -math.log10(math.sin(gap))
    p_float = float(p)
    m = max(1, math.ceil(1 / p_float))

    def build():
        pp = _to_mpf(p)
        wv = w.value()
        if m == 1:
            integrand = lambda t: t ** (pp - 1) * mp.exp(-t) / (wv + t)
            start = max(1.0, p_float / 8)
        else:
            power = m * pp - 1
            integrand = lambda u: m * u ** power * mp.exp(-u ** m) / (wv + u ** m)
            start = 1.0
        tail = integrate_decaying(integrand, cfg, start=start)
        prefactor = mp.expjpi(pp) * w.power(1 - pp) * mp.exp(-wv)
        return prefactor * tail / (2j * mp.pi)

    extra = 4 + math.log10(1 + float(w.r)) + spike
    return _self_validated(build, cfg, extra, "terminant")


def _terminant_gamma(p, w: SheetedComplex, cfg: QuadratureConfig):
    """Reflection form through the upper incomplete gamma, any sheet."""
    pp = _to_mpf(p)
    tail = upper_incomplete_gamma(1 - pp, w, cfg)
    return mp.expjpi(pp) * gamma_real(p) * tail / (2j * mp.pi)


def terminant(q: TerminantQuery, cfg: QuadratureConfig = None):
    """T_p(w) on the sheet q.w declares."""
    cfg = _DEFAULT_CFG if cfg is None else cfg
    if abs(q.w.theta) < math.pi - 1e-12:
        return _terminant_integral(q.p, q.w, cfg)
    return _terminant_gamma(q.p, q.w, cfg)


def _c_series(x):
    """Four-term Taylor seed for c at offset x = phi - pi."""
    x = mp.mpc(x)
    return x * (1 + 1j * x / 6 - x * x / mp.mpf(36) - 1j * x ** 3 / mp.mpf(270))


def _saddle_offset(x):
    return 1 + 1j * x - mp.exp(1j * x)


def _newton_c(seed, x):
    target = _saddle_offset(x)
    c = mp.mpc(seed)
    tol = mp.mpf(10) ** (2 - mp.dps)
    for _ in range(80):
        better = c / 2 + target / c
        if abs(better - c) <= tol * max(mp.mpf(1), abs(better)):
            return better
        c = better
    raise NonConvergence(
        f"c(phi) iteration stalled at offset {float(x):.6g} from pi")


def c_of_phi(phi):
    """The switching variable c(phi) solving (1/2) c^2 = 1 + i (phi - pi)
    - e^(i (phi - pi)), on the branch with c(pi) = 0 and c'(pi) = 1.

    Within half a radian of phi = pi the four-term Taylor seed lands close
    enough for Newton directly.  Farther out the equation still has two
    square-root branches that never collide (the right-hand side vanishes
    only at phi = pi), so the branch is carried by continuation: walk phi
    outward in short steps, reseeding Newton with the previous root.
    Accepts phi in the open interval (-pi, 3 pi).
    """
    x = _to_mpf(phi) - mp.pi
    limit = 2 * mp.pi
    if not -limit < x < limit:
        raise ValueError(
            f"phi must lie in (-pi, 3 pi), got {float(phi):.6g}")
    if x == 0:
        return mp.mpc(0)
    size = abs(x)
    if size <= _SERIES_TRUST:
        return _newton_c(_c_series(x), x)
    edge = _SERIES_TRUST if x > 0 else -_SERIES_TRUST
    edge = mp.mpf(edge)
    c = _newton_c(_c_series(edge), edge)
    steps = int(mp.ceil((size - _SERIES_TRUST) / mp.mpf("0.35")))
    for j in range(1, steps + 1):
        c = _newton_c(c, edge + (x - edge) * j / steps)
    return c


def smoothing_approx(p, w: SheetedComplex):
    """Error-function value of e^(-2 pi i p) T_p(w) for index near |w|.

    Valid a hair inside -3 pi < arg w < pi; on the ray arg w = -pi the
    erf argument vanishes and the value is exactly -1/2, the halfway
    point of the switching.
    """
    if not isinstance(w, SheetedComplex):
        raise TypeError("w must be a SheetedComplex")
    if not float(p) > 0:
        raise ValueError(f"index must be positive, got {p}")
    phi = w.angle()
    guard = mp.mpf("1e-9")
    if not -3 * mp.pi + guard < phi < mp.pi - guard:
        raise SectorViolation(
            f"smoothing needs -3 pi < arg w < pi, got arg w = {float(phi):.6g}")
    c = c_of_phi(-phi)
    spread = -mp.conj(c) * mp.sqrt(_to_mpf(w.r) / 2)
    return -mp.mpf(1) / 2 + mp.erf(spread) / 2
