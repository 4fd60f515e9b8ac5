"""Complex points with a remembered sheet.

A point is stored as a modulus r > 0 together with an unbounded real angle
theta, so that fractional powers z**s := exp(s*(log r + i*theta)) are
single-valued and sectors wider than one turn (up to (-2pi, 3pi) here) can be
addressed without any implicit principal-branch reduction.

Angles are kept, whenever possible, as exact rational multiples of pi
(a ``Fraction``), so that raising the working precision later still yields a
full-precision angle.  A plain float angle is accepted too and is then taken
at face value.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from mpmath import mp

AngleLike = Union[int, float, Fraction, str]


def _as_fraction_of_pi(theta_over_pi: AngleLike) -> Fraction:
    if isinstance(theta_over_pi, float):
        return Fraction(theta_over_pi).limit_denominator(10**12)
    return Fraction(theta_over_pi)


class SheetedComplex:
    """A nonzero complex number (r, theta) on the Riemann surface of log.

    ``theta_over_pi`` is preferred and exact; ``theta`` (radians) is the
    fallback for angles that are not rational multiples of pi.
    """

    __slots__ = ("r", "_theta_over_pi", "_theta_rad")

    def __init__(self, r, theta: float | None = None, *,
                 theta_over_pi: AngleLike | None = None):
        if (theta is None) == (theta_over_pi is None):
            raise ValueError("give exactly one of theta, theta_over_pi")
        if not r > 0:
            raise ValueError("modulus must be positive")
        self.r = r
        if theta_over_pi is not None:
            self._theta_over_pi = _as_fraction_of_pi(theta_over_pi)
            self._theta_rad = None
        else:
            self._theta_over_pi = None
            self._theta_rad = theta

    @classmethod
    def from_complex(cls, w) -> "SheetedComplex":
        """Principal-sheet lift of an ordinary complex number."""
        w = mp.mpc(w)
        return cls(abs(w), float(mp.arg(w)))

    # -- exact-ish accessors -------------------------------------------------

    @property
    def theta_over_pi(self) -> Fraction | None:
        return self._theta_over_pi

    @property
    def theta(self) -> float:
        """Angle in radians as a float (lossy for display and branching)."""
        if self._theta_over_pi is not None:
            return float(self._theta_over_pi) * math.pi
        return float(self._theta_rad)

    def angle(self):
        """Angle as an mpf at the current working precision."""
        if self._theta_over_pi is not None:
            q = self._theta_over_pi
            return mp.pi * q.numerator / q.denominator
        return mp.mpf(self._theta_rad)

    def radius(self):
        return mp.mpf(self.r)

    # -- arithmetic on the surface --------------------------------------------

    def value(self):
        """The point as an mpc at the current working precision."""
        return self.radius() * mp.exp(1j * self.angle())

    def power(self, s):
        """z**s = exp(s*(log r + i*theta)) at the current precision."""
        if isinstance(s, Fraction):
            s = mp.mpf(s.numerator) / s.denominator
        return mp.exp(s * (mp.log(self.radius()) + 1j * self.angle()))

    def rotate(self, *, turns_of_pi: AngleLike = 0, radians: float = 0.0) -> "SheetedComplex":
        """Same modulus, angle shifted by turns_of_pi*pi + radians."""
        if radians == 0.0 and self._theta_over_pi is not None:
            return SheetedComplex(
                self.r, theta_over_pi=self._theta_over_pi + _as_fraction_of_pi(turns_of_pi))
        shift = float(_as_fraction_of_pi(turns_of_pi)) if turns_of_pi else 0.0
        return SheetedComplex(self.r, self.theta + shift * math.pi + radians)

    def conjugate(self) -> "SheetedComplex":
        if self._theta_over_pi is not None:
            return SheetedComplex(self.r, theta_over_pi=-self._theta_over_pi)
        return SheetedComplex(self.r, -self._theta_rad)

    def scale(self, factor) -> "SheetedComplex":
        """Multiply the modulus by a positive real factor."""
        if not factor > 0:
            raise ValueError("scale factor must be positive")
        if self._theta_over_pi is not None:
            return SheetedComplex(self.r * factor, theta_over_pi=self._theta_over_pi)
        return SheetedComplex(self.r * factor, self._theta_rad)

    # -- misc ------------------------------------------------------------------

    def __repr__(self) -> str:
        if self._theta_over_pi is not None:
            return f"SheetedComplex({self.r!r}, theta={self._theta_over_pi}*pi)"
        return f"SheetedComplex({self.r!r}, theta={self._theta_rad!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SheetedComplex):
            return NotImplemented
        return self.r == other.r and self.theta == other.theta

    def __hash__(self) -> int:
        return hash((self.r, self.theta))
