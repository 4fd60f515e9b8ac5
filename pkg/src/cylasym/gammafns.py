"""Gamma values at thirds without a general gamma implementation.

The exact-coefficient and terminant paths only ever need Gamma at arguments
k + 1/3, k + 2/3 or at positive integers.  Those come from two frozen
40-significant-digit constants plus the recurrence Gamma(x+1) = x*Gamma(x),
whose rational factors are accumulated exactly before a single float
conversion.  General real arguments (CLI experiments) fall back to mpmath.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import mp

# Gamma(1/3) and Gamma(2/3), 40 significant digits each.
GAMMA_ONE_THIRD_STR = "2.678938534707747633655692940974677644129"
GAMMA_TWO_THIRDS_STR = "1.354117939426400416945288028154513785519"


def gamma_thirds(q) -> "mp.mpf":
    """Gamma(q) for rational q with denominator 1 or 3, at working precision.

    Positive integers use the exact factorial.  Other arguments reduce to the
    frozen Gamma(1/3) / Gamma(2/3) constants through an exact rational
    rising (or falling) product, so the only rounding is the final float
    conversion.  Poles (q a nonpositive integer) raise ValueError.
    """
    q = Fraction(q)
    if q.denominator not in (1, 3):
        raise ValueError(f"gamma_thirds needs a denominator of 1 or 3, got {q}")
    if q.denominator == 1:
        if q <= 0:
            raise ValueError(f"gamma pole at {q}")
        return mp.mpf(math.factorial(q.numerator - 1))
    base = Fraction(q.numerator % 3, 3)
    with mp.extradps(10):
        const = mp.mpf(GAMMA_ONE_THIRD_STR if base == Fraction(1, 3)
                       else GAMMA_TWO_THIRDS_STR)
        shift = q - base  # integer number of recurrence steps
        k = int(shift)
        factor = Fraction(1)
        if k > 0:
            for j in range(k):
                factor *= base + j
        else:
            # Gamma(q) = Gamma(base) / (q (q+1) ... (base-1))
            for j in range(-k):
                factor /= q + j
        value = const * mp.mpf(factor.numerator) / mp.mpf(factor.denominator)
    return +value


def rising_rational(a, m: int) -> Fraction:
    """Exact Pochhammer (a)_m = a (a+1) ... (a+m-1) for rational a."""
    a = Fraction(a)
    out = Fraction(1)
    for j in range(m):
        out *= a + j
    return out


def gamma_ratio_thirds(p, q) -> Fraction:
    """Exact Gamma(p)/Gamma(q) when p - q is a nonnegative integer."""
    p, q = Fraction(p), Fraction(q)
    diff = p - q
    if diff.denominator != 1 or diff < 0:
        raise ValueError("gamma_ratio_thirds needs p - q a nonnegative integer")
    return rising_rational(q, int(diff))


def gamma_real(p) -> "mp.mpf":
    """Gamma at a positive real argument.

    Arguments that are thirds (within 1e-12 of k/3) take the exact
    constant-plus-recurrence route; anything else uses mpmath's gamma.
    """
    p_float = float(p)
    tripled = 3 * p_float
    nearest = round(tripled)
    if nearest > 0 and abs(tripled - nearest) < 1e-12:
        return gamma_thirds(Fraction(nearest, 3))
    if p_float <= 0:
        raise ValueError(f"gamma_real expects a positive argument, got {p}")
    return mp.gamma(mp.mpf(p))
