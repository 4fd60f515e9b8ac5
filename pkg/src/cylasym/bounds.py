"""Sector-by-sector envelopes for the zero-offset remainders.

Every function here bounds a remainder of the equal-order expansions,
with the count ``N`` meaning N retained terms (raw index 2N, or 2N+1 for
the derivative kinds).  Three regimes are covered per kind:

* ``central``: the weight under the remainder integral is dominated by
  an elementary envelope (|sec theta| for the Hankel kinds, |csc 2theta|
  for the Bessel kinds, constant 1 near the real axis), so the bound is
  a short combination of coefficient magnitudes and Gamma factors.
* ``rotated``: past the central sector the integration ray is tilted by
  an angle phi before taking absolute values.  The optimal tilt solves a
  trigonometric equation; ``meijer_angle_sin`` and ``meijer_angle_cos``
  find it by bisection inside the bracket that makes it unique.
* ``near_stokes``: on the sector adjacent to a Stokes line the rotated
  bound simplifies to sqrt((e/3)(2N + c)) multipliers with small
  half-integer shifts c, at the cost of a little sharpness.

``watson_inequalities`` packages the extra one-signed information that
is available for real positive order: the classical upper bound for
J'_nu(nu), the matching lower bound for Y'_nu(nu), and two-sided windows
pinning each low-order derivative-kind remainder between explicit term
sizes.

The three ``*_envelope_holds`` predicates expose the pointwise
inequalities that justify the central-sector factors; they exist so the
tests can probe the inequalities directly rather than trusting the
assembled bounds.
"""

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .errors import NoBracket, SectorViolation, TooSmallN
from .exact import coeff_B, coeff_D, eval_exact
from .oracles import bessel_JY_real
from .series import FunctionKind
from .series import partial_sum_equal_order
from .sheeted import SheetedComplex

_HALF_PI = math.pi / 2
_QUARTER_PI = math.pi / 4
_SLACK = 1e-12


# -- pointwise envelope inequalities ----------------------------------------

def sec_envelope_holds(r, phi):
    """Whether the Hankel-kind weight denominator obeys its envelope.

    The claim: 1/(|1 + r e^(-2 i phi/3) e^(2 pi i/3)| |1 + r e^(-2 i phi/3)|)
    is at most |sec phi| for -pi/2 < phi < 0 or pi < phi < 3 pi/2, and at
    most 1 for 0 <= phi <= pi.
    """
    if not r > 0:
        raise ValueError("r must be positive")
    if not -_HALF_PI < phi < 3 * _HALF_PI:
        raise ValueError("phi must lie in (-pi/2, 3 pi/2)")
    w = r * mp.expjpi(-2 * phi / (3 * math.pi))
    lhs = 1 / (abs(1 + w * mp.expjpi(Fraction(2, 3))) * abs(1 + w))
    rhs = mp.mpf(1) if 0 <= phi <= math.pi else abs(1 / mp.cos(phi))
    return lhs <= rhs * (1 + _SLACK)


def csc_envelope_holds(r, phi):
    """Whether 1/|1 + r e^(-2 i phi)| stays below |csc 2 phi| for
    pi/4 < |phi| < pi/2 and below 1 for |phi| <= pi/4."""
    if not r > 0:
        raise ValueError("r must be positive")
    if not abs(phi) < _HALF_PI:
        raise ValueError("phi must lie in (-pi/2, pi/2)")
    lhs = 1 / abs(1 + r * mp.expjpi(-2 * phi / math.pi))
    rhs = mp.mpf(1) if abs(phi) <= _QUARTER_PI else abs(1 / mp.sin(2 * phi))
    return lhs <= rhs * (1 + _SLACK)


def tapered_csc_envelope_holds(r, phi):
    """The variant of ``csc_envelope_holds`` whose numerator carries the
    cube-root taper |1 - r^(1/3) e^(-2 i phi/3)|; same envelope."""
    if not r > 0:
        raise ValueError("r must be positive")
    if not abs(phi) < _HALF_PI:
        raise ValueError("phi must lie in (-pi/2, pi/2)")
    top = abs(1 - mp.cbrt(r) * mp.expjpi(-2 * phi / (3 * math.pi)))
    lhs = top / abs(1 + r * mp.expjpi(-2 * phi / math.pi))
    rhs = mp.mpf(1) if abs(phi) <= _QUARTER_PI else abs(1 / mp.sin(2 * phi))
    return lhs <= rhs * (1 + _SLACK)


# -- minimizing rotation angles ----------------------------------------------

def _bisect(g, lo, hi):
    glo, ghi = g(lo), g(hi)
    if glo == 0:
        return mp.mpf(lo)
    if ghi == 0:
        return mp.mpf(hi)
    if mp.sign(glo) == mp.sign(ghi):
        raise NoBracket("no sign change across the rotation bracket; "
                        "the angle equation has no interior root here")
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    for _ in range(200):
        mid = (lo + hi) / 2
        gm = g(mid)
        if gm == 0:
            return mid
        if mp.sign(gm) == mp.sign(glo):
            lo, glo = mid, gm
        else:
            hi = mid
        if hi - lo < mp.mpf(10) ** -16:
            break
    return (lo + hi) / 2


def _sin_bracket(theta):
    if 3 * _HALF_PI <= theta < 2 * math.pi:
        return theta - 3 * _HALF_PI, _HALF_PI
    if math.pi < theta < 3 * _HALF_PI:
        return 0.0, theta - math.pi
    if -math.pi < theta <= -_HALF_PI:
        return -_HALF_PI, theta + _HALF_PI
    if -_HALF_PI < theta < 0:
        return theta, 0.0
    raise NoBracket(f"no rotation bracket covers arg nu = {theta:.6g} "
                    "for the Hankel-kind angle equation")


def meijer_angle_sin(theta, *, power):
    """The tilt phi minimizing |sec(theta - phi)| / cos(phi)^power over
    the admissible rotations, as the unique root of

        sin(theta - 2 phi) = ((p - 1)/(p + 1)) sin(theta)

    inside the bracket attached to theta.  Bisection only; the bracket
    guarantees the root, so no derivative information is needed.
    """
    lo, hi = _sin_bracket(theta)
    p = mp.mpf(power.numerator) / power.denominator \
        if isinstance(power, Fraction) else mp.mpf(power)
    ratio = (p - 1) / (p + 1)
    target = ratio * mp.sin(theta)

    def g(phi):
        return mp.sin(theta - 2 * phi) - target

    return _bisect(g, lo, hi)


def _cos_bracket(theta):
    if 3 * _QUARTER_PI <= theta < math.pi:
        return theta - _HALF_PI, _HALF_PI
    if _HALF_PI <= theta < 3 * _QUARTER_PI:
        return theta - _HALF_PI, theta - _QUARTER_PI
    if _QUARTER_PI < theta < _HALF_PI:
        return 0.0, theta - _QUARTER_PI
    if -math.pi < theta <= -3 * _QUARTER_PI:
        return -_HALF_PI, theta + _HALF_PI
    if -3 * _QUARTER_PI < theta <= -_HALF_PI:
        return theta + _QUARTER_PI, theta + _HALF_PI
    if -_HALF_PI < theta < -_QUARTER_PI:
        return theta + _QUARTER_PI, 0.0
    raise NoBracket(f"no rotation bracket covers arg nu = {theta:.6g} "
                    "for the Bessel-kind angle equation")


def meijer_angle_cos(theta, *, power):
    """The tilt phi minimizing |csc(2(theta - phi))| / cos(phi)^power,
    as the unique root of

        (p + 2) cos(3 phi - 2 theta) = (p - 2) cos(phi - 2 theta)

    inside the bracket attached to theta."""
    lo, hi = _cos_bracket(theta)
    p = mp.mpf(power.numerator) / power.denominator \
        if isinstance(power, Fraction) else mp.mpf(power)

    def g(phi):
        return (p + 2) * mp.cos(3 * phi - 2 * theta) \
            - (p - 2) * mp.cos(phi - 2 * theta)

    return _bisect(g, lo, hi)


# -- the bound dispatcher -----------------------------------------------------

class SectorClass(enum.Enum):
    CENTRAL = "central"
    ROTATED = "rotated"
    NEAR_STOKES = "near_stokes"


@dataclass(frozen=True)
class BoundSpec:
    """Which remainder to bound and in which regime.

    ``N`` counts retained equal-order terms, ``residue`` repeats N mod 3
    (the case tables are keyed by it, so it is stated explicitly and
    validated), ``theta`` must agree with the angle of the order passed
    to :func:`bound`.
    """
    kind: FunctionKind
    N: int
    residue: int
    sector_class: SectorClass
    theta: float


_FAMILY = {
    FunctionKind.H1: ("H", 1),
    FunctionKind.H2: ("H", -1),
    FunctionKind.H1_PRIME: ("Hp", 1),
    FunctionKind.H2_PRIME: ("Hp", -1),
    FunctionKind.J: ("J", 1),
    FunctionKind.J_PRIME: ("Jp", 1),
    FunctionKind.Y: ("Y", 1),
    FunctionKind.Y_PRIME: ("Yp", 1),
}

# Central-sector terms: (raw-index offset from 2N, vanishes near the axis).
# The flagged terms only contribute through the |csc 2 theta| wing; close
# to the real axis the tapered numerator absorbs them completely.
_CENTRAL = {
    ("H", 0): ((0, False), (2, False)),
    ("H", 1): ((2, False),),
    ("H", 2): ((0, False),),
    ("Hp", 0): ((1, False),),
    ("Hp", 1): ((1, False), (3, False)),
    ("Hp", 2): ((3, False),),
    ("J", 0): ((0, False), (4, True)),
    ("J", 1): ((2, False), (4, False)),
    ("J", 2): ((0, False), (2, False)),
    ("Y", 0): ((0, False), (4, False)),
    ("Y", 1): ((2, False),),
    ("Y", 2): ((0, False),),
    ("Jp", 0): ((1, False), (3, False)),
    ("Jp", 1): ((1, False), (5, True)),
    ("Jp", 2): ((3, False), (5, False)),
    ("Yp", 0): ((1, False),),
    ("Yp", 1): ((1, False), (5, False)),
    ("Yp", 2): ((3, False),),
}

# Rotated-sector terms: (raw-index offset, offset of the index whose
# cosine power the tilt angle optimises).  The two differ only in the
# first H row, which pairs each term with the other term's angle.
_ROTATED = {
    ("H", 0): ((0, 2), (2, 0)),
    ("H", 1): ((2, 2),),
    ("H", 2): ((0, 0),),
    ("Hp", 0): ((1, 1),),
    ("Hp", 1): ((1, 1), (3, 3)),
    ("Hp", 2): ((3, 3),),
    ("J", 0): ((0, 0), (4, 4)),
    ("J", 1): ((2, 2), (4, 4)),
    ("J", 2): ((0, 0), (2, 2)),
    ("Y", 0): ((0, 0), (4, 4)),
    ("Y", 1): ((2, 2),),
    ("Y", 2): ((0, 0),),
    ("Jp", 0): ((1, 1), (3, 3)),
    ("Jp", 1): ((1, 1), (5, 5)),
    ("Jp", 2): ((3, 3), (5, 5)),
    ("Yp", 0): ((1, 1),),
    ("Yp", 1): ((1, 1), (5, 5)),
    ("Yp", 2): ((3, 3),),
}

# Stokes-line simplification: (raw-index offset, shift c) per term, the
# bound being sum of sqrt((e/3)(2N + c)) times the term size, halved for
# the Bessel-side families.
_NEAR_STOKES = {
    ("H", 0): ((0, Fraction(5, 2)), (2, Fraction(9, 2))),
    ("H", 1): ((2, Fraction(9, 2)),),
    ("H", 2): ((0, Fraction(5, 2)),),
    ("Hp", 0): ((1, Fraction(7, 2)),),
    ("Hp", 1): ((1, Fraction(7, 2)), (3, Fraction(11, 2))),
    ("Hp", 2): ((3, Fraction(11, 2)),),
    ("J", 0): ((0, Fraction(11, 2)), (4, Fraction(19, 2))),
    ("J", 1): ((2, Fraction(15, 2)), (4, Fraction(19, 2))),
    ("J", 2): ((0, Fraction(11, 2)), (2, Fraction(15, 2))),
    ("Y", 0): ((0, Fraction(11, 2)), (4, Fraction(19, 2))),
    ("Y", 1): ((2, Fraction(15, 2)),),
    ("Y", 2): ((0, Fraction(11, 2)),),
    ("Jp", 0): ((1, Fraction(13, 2)), (3, Fraction(17, 2))),
    ("Jp", 1): ((1, Fraction(13, 2)), (5, Fraction(21, 2))),
    ("Jp", 2): ((3, Fraction(17, 2)), (5, Fraction(21, 2))),
    ("Yp", 0): ((1, Fraction(13, 2)),),
    ("Yp", 1): ((1, Fraction(13, 2)), (5, Fraction(21, 2))),
    ("Yp", 2): ((3, Fraction(17, 2)),),
}


def _term_size(family, k, radius):
    """front * 6^((k+1)/3) |c_k(0)| w Gamma((k+1)/3) / radius^((k+1)/3),
    the universal building block of every bound in this module."""
    third = mp.mpf(k + 1) / 3
    front = (mp.mpf(2) if family in ("H", "Hp", "Y", "Yp") else mp.mpf(1)) \
        / (3 * mp.pi)
    weight = mp.sqrt(3) / 2 if family in ("H", "Hp", "J", "Jp") \
        else mp.mpf(3) / 4
    poly = coeff_D(k) if family.endswith("p") else coeff_B(k)
    size = abs(eval_exact(poly, 0).to_mpc())
    return front * mp.mpf(6) ** third * size * weight * mp.gamma(third) \
        / mp.mpf(radius) ** third


def _check_sector(family, sector_class, theta):
    hankel = family in ("H", "Hp")
    if sector_class is SectorClass.CENTRAL:
        ok = (-_HALF_PI < theta < 3 * _HALF_PI) if hankel \
            else abs(theta) < _HALF_PI
    elif sector_class is SectorClass.ROTATED:
        ok = (-math.pi < theta < 0 or math.pi < theta < 2 * math.pi) \
            if hankel else _QUARTER_PI < abs(theta) < math.pi
    else:
        ok = (math.pi < theta <= 3 * _HALF_PI or -_HALF_PI <= theta < 0) \
            if hankel else _QUARTER_PI < abs(theta) <= _HALF_PI
    if not ok:
        raise SectorViolation(
            f"arg nu = {theta:.6g} is outside the {sector_class.value} "
            f"region for this kind")


def _central_factor(family, theta, vanishes):
    if family in ("H", "Hp"):
        if 0 <= theta <= math.pi:
            return mp.mpf(1)
        return abs(1 / mp.cos(theta))
    if abs(theta) <= _QUARTER_PI:
        return mp.mpf(0) if vanishes else mp.mpf(1)
    return abs(1 / mp.sin(2 * theta))


def _near_stokes_value(family, N, radius):
    if family not in ("H", "Hp") and N < 4:
        raise TooSmallN("the simplified Stokes-line bounds for the Bessel "
                        "kinds need at least four retained terms")
    terms = _NEAR_STOKES[(family, N % 3)]
    if family == "H" and N == 0:
        # the only sub-threshold base case; it stays valid once the
        # smaller shift is replaced by the larger one
        terms = tuple((off, Fraction(9, 2)) for off, _ in terms)
    total = mp.mpf(0)
    for off, c in terms:
        mult = mp.sqrt(mp.e / 3 * (2 * N + mp.mpf(c.numerator) / c.denominator))
        total += mult * _term_size(family, 2 * N + off, radius)
    if family not in ("H", "Hp"):
        total /= 2
    return +total


def bound(spec: BoundSpec, nu: SheetedComplex):
    """The explicit envelope for the remainder described by ``spec`` at
    order nu.  Dispatch is a straight table lookup: every (kind family,
    N mod 3, sector class) combination resolves to exactly one formula,
    and there is no fallback branch."""
    if spec.N < 0:
        raise ValueError("N must be non-negative")
    if spec.residue != spec.N % 3:
        raise ValueError(f"residue {spec.residue} does not match "
                         f"N mod 3 = {spec.N % 3}")
    if abs(spec.theta - nu.theta) > 1e-9:
        raise ValueError("spec.theta disagrees with arg nu")
    family, mirror = _FAMILY[spec.kind]
    if family.endswith("p") and spec.N < 1:
        raise TooSmallN("derivative-kind bounds need at least one "
                        "retained term")
    # second-kind functions mirror the first kind across the real axis
    theta = mirror * nu.theta
    _check_sector(family, spec.sector_class, theta)
    radius = nu.radius()

    if spec.sector_class is SectorClass.NEAR_STOKES:
        return _near_stokes_value(family, spec.N, radius)

    if spec.sector_class is SectorClass.CENTRAL:
        total = mp.mpf(0)
        for off, vanishes in _CENTRAL[(family, spec.residue)]:
            factor = _central_factor(family, theta, vanishes)
            total += factor * _term_size(family, 2 * spec.N + off, radius)
        return +total

    total = mp.mpf(0)
    for off, ang_off in _ROTATED[(family, spec.residue)]:
        k = 2 * spec.N + off
        angle_power = Fraction(2 * spec.N + ang_off + 1, 3)
        if family in ("H", "Hp"):
            phi = meijer_angle_sin(theta, power=angle_power)
            swing = abs(1 / mp.cos(theta - phi))
        else:
            phi = meijer_angle_cos(theta, power=angle_power)
            swing = abs(1 / mp.sin(2 * (theta - phi)))
        total += swing / mp.cos(phi) ** (mp.mpf(k + 1) / 3) \
            * _term_size(family, k, radius)
    return +total


def bound_near_stokes(kind: FunctionKind, nu: SheetedComplex, N: int):
    """The simplified bound on the sector hugging a Stokes line, without
    building a BoundSpec first."""
    if N < 0:
        raise ValueError("N must be non-negative")
    family, mirror = _FAMILY[kind]
    if family.endswith("p") and N < 1:
        raise TooSmallN("derivative-kind bounds need at least one "
                        "retained term")
    theta = mirror * nu.theta
    _check_sector(family, SectorClass.NEAR_STOKES, theta)
    return _near_stokes_value(family, N, nu.radius())


# -- one-signed information at real positive order ---------------------------

@dataclass(frozen=True)
class RemainderWindow:
    """A two-sided enclosure for a signed low-order remainder: the sign
    convention is folded into ``signed_actual`` so that the mean-value
    structure reads lower < signed_actual < upper with strict bounds."""
    kind: FunctionKind
    N: int
    lower: object
    signed_actual: object
    upper: object

    @property
    def holds(self) -> bool:
        return bool(self.lower < self.signed_actual < self.upper)


@dataclass(frozen=True)
class WatsonReport:
    nu: float
    jprime_value: object
    jprime_ceiling: object
    yprime_value: object
    yprime_floor: object
    windows: tuple

    @property
    def jprime_holds(self) -> bool:
        return bool(self.jprime_value < self.jprime_ceiling)

    @property
    def yprime_holds(self) -> bool:
        return bool(self.yprime_value > self.yprime_floor)

    @property
    def all_hold(self) -> bool:
        return self.jprime_holds and self.yprime_holds \
            and all(w.holds for w in self.windows)


# (sign parity, offsets entering the lower bound, offsets entering the
# upper bound): the signed remainder (-1)^(N+parity) R_N lies strictly
# between -sum of the lower term sizes and +sum of the upper ones.
_MEAN_WINDOW = {
    ("Jp", 0): (1, (), (1, 3)),
    ("Jp", 1): (0, (5,), (1,)),
    ("Jp", 2): (0, (), (3, 5)),
    ("Yp", 0): (1, (3,), (1,)),
    ("Yp", 1): (1, (), (1, 5)),
    ("Yp", 2): (0, (5,), (3,)),
}


def watson_inequalities(nu, cfg=None, *, window_terms=(1, 2, 3)):
    """Check the real-order sign structure of the derivative expansions.

    Returns a report carrying the classical ceiling for J'_nu(nu), the
    floor for Y'_nu(nu), and one RemainderWindow per requested term
    count for each derivative Bessel kind.  Nothing is raised on a
    violated inequality; the report records what held.
    """
    if not nu > 0:
        raise ValueError("nu must be positive")
    nuf = mp.mpf(nu)
    j_lo, y_lo = bessel_JY_real(nuf - 1, nuf, cfg)
    j_hi, y_hi = bessel_JY_real(nuf + 1, nuf, cfg)
    jprime = (j_lo - j_hi) / 2
    yprime = (y_lo - y_hi) / 2

    scale = mp.gamma(mp.mpf(2) / 3) / (mp.cbrt(2) * mp.pi * nuf ** (mp.mpf(2) / 3))
    ceiling = 3 ** (mp.mpf(1) / 6) * scale
    floor = 3 ** (mp.mpf(2) / 3) * scale

    point = SheetedComplex(nuf, theta_over_pi=0)
    windows = []
    for kind, value in ((FunctionKind.J_PRIME, jprime),
                        (FunctionKind.Y_PRIME, yprime)):
        family, _ = _FAMILY[kind]
        for n in window_terms:
            actual = value - partial_sum_equal_order(kind, point, n)
            parity, lo_offs, hi_offs = _MEAN_WINDOW[(family, n % 3)]
            sign = -1 if (n + parity) % 2 else 1
            lower = -sum((_term_size(family, 2 * n + o, nuf) for o in lo_offs),
                         mp.mpf(0))
            upper = sum((_term_size(family, 2 * n + o, nuf) for o in hi_offs),
                        mp.mpf(0))
            windows.append(RemainderWindow(kind, n, lower,
                                           sign * mp.re(actual), upper))
    return WatsonReport(float(nu), jprime, ceiling, yprime, floor,
                        tuple(windows))
