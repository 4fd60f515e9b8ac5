"""Truncated transition-region expansions for cylinder functions of nearly
equal order and argument, with the continuation identities that extend
sector coverage.

All sums evaluate at the ambient mpmath precision; raise ``mp.dps`` to
thread higher precision through.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from mpmath import mp

from .cache import cached_coeff
from .errors import IntegerOrder
from .exact import eval_float
from .gammafns import gamma_thirds
from .sheeted import SheetedComplex


class FunctionKind(enum.Enum):
    H1 = "H1"
    H2 = "H2"
    J = "J"
    Y = "Y"
    H1_PRIME = "H1p"
    H2_PRIME = "H2p"
    J_PRIME = "Jp"
    Y_PRIME = "Yp"

    @property
    def is_derivative(self) -> bool:
        return self in (FunctionKind.H1_PRIME, FunctionKind.H2_PRIME,
                        FunctionKind.J_PRIME, FunctionKind.Y_PRIME)

    @property
    def base_kind(self) -> "FunctionKind":
        return FunctionKind(self.value.rstrip("p"))


_HANKEL_SIGN = {
    FunctionKind.H1: 1, FunctionKind.H1_PRIME: 1,
    FunctionKind.H2: -1, FunctionKind.H2_PRIME: -1,
}


def _sin_third(k: int):
    """sin(k pi / 3) exactly, as a multiple of sqrt(3)/2."""
    return (0, 1, 1, 0, -1, -1)[k % 6]


def _phase_third(k: int, sign: int):
    """exp(sign * 2 k pi i / 3) from the exact sixth-root table."""
    k = (sign * 2 * k) % 6
    s3 = mp.sqrt(3) / 2
    return {
        0: mp.mpc(1),
        1: mp.mpc(0.5) + s3 * 1j,
        2: mp.mpc(-0.5) + s3 * 1j,
        3: mp.mpc(-1),
        4: mp.mpc(-0.5) - s3 * 1j,
        5: mp.mpc(0.5) - s3 * 1j,
    }[k]


def _coeff(kind: FunctionKind, n: int, kappa, digits=None):
    table_kind = "D" if kind.is_derivative else "B"
    if digits is None:
        digits = max(mp.dps, 15)
    return eval_float(cached_coeff(table_kind, n), kappa, digits=digits)


def _term(kind: FunctionKind, n: int, kappa, zpow, coeff_digits=None):
    """front * coefficient * phase * sin-factor * Gamma * z^(-(n+1)/3),
    or None where the sin factor kills the term."""
    m = _sin_third(n + 1)
    if m == 0:
        return None
    base = kind.base_kind
    c = _coeff(kind, n, kappa, digits=coeff_digits)
    gam = gamma_thirds(Fraction(n + 1, 3))
    scale = mp.mpf(6) ** (mp.mpf(n + 1) / 3)
    if base is FunctionKind.J:
        return (1 / (3 * mp.pi)) * c * scale * (m * mp.sqrt(3) / 2) * gam * zpow
    if base is FunctionKind.Y:
        # sin^2 is 3/4 whenever sin is nonzero
        return (-2 / (3 * mp.pi)) * c * scale * (-1) ** n * mp.mpf("0.75") * gam * zpow
    phase = _phase_third(n + 1, _HANKEL_SIGN[kind])
    return (-2 / (3 * mp.pi)) * c * scale * phase * (m * mp.sqrt(3) / 2) * gam * zpow


def partial_sum(kind: FunctionKind, z: SheetedComplex, kappa, N: int,
                coeff_digits: int | None = None):
    """The N-term truncated expansion of the given kind at argument z and
    offset kappa = z - nu.  Empty sums (N = 0, or N = 1 for derivative
    kinds whose sums start at n = 1) return 0.

    ``coeff_digits`` pins the precision of the rational-to-float
    coefficient conversion independently of the ambient precision; the
    sums are linear in the converted table, so raising it beyond
    ``mp.dps`` moves the result by under an ulp."""
    if N < 0:
        raise ValueError("N must be non-negative")
    root = z.power(Fraction(-1, 3))
    zpow = root
    total = mp.mpc(0)
    start = 1 if kind.is_derivative else 0
    if start == 1:
        zpow = zpow * root
    for n in range(start, N):
        term = _term(kind, n, kappa, zpow, coeff_digits)
        if term is not None:
            total += term
        zpow = zpow * root
    return total


def partial_sum_equal_order(kind: FunctionKind, nu: SheetedComplex, N: int):
    """The equal-order sums: the generic expansion at kappa = 0 reindexed
    over its surviving terms (even coefficients, or odd ones for
    derivative kinds).  Agrees with partial_sum(kind, nu, 0, 2N) and
    partial_sum(kind, nu, 0, 2N+1) respectively."""
    if N < 0:
        raise ValueError("N must be non-negative")
    deriv = kind.is_derivative
    root2 = nu.power(Fraction(-2, 3))
    zpow = nu.power(Fraction(-2, 3) if deriv else Fraction(-1, 3))
    total = mp.mpc(0)
    for n in range(N):
        idx = 2 * n + 1 if deriv else 2 * n
        term = _term(kind, idx, 0, zpow)
        if term is not None:
            total += term
        zpow = zpow * root2
    return total


def term_magnitudes(kind: FunctionKind, z: SheetedComplex, kappa, N: int):
    """|n-th term| for n < N, for truncation diagnostics.  Parity zeros
    are reported as genuine zeros."""
    out = []
    root = z.power(Fraction(-1, 3))
    zpow = root
    start = 1 if kind.is_derivative else 0
    if start == 1:
        zpow = zpow * root
        out.append(mp.mpf(0))
    for n in range(start, N):
        term = _term(kind, n, kappa, zpow)
        out.append(abs(term) if term is not None else mp.mpf(0))
        zpow = zpow * root
    return out


def _require_noninteger(nu):
    nv = mp.mpmathify(nu)
    if abs(mp.im(nv)) < 1e-12 and abs(mp.re(nv) - mp.nint(mp.re(nv))) < 1e-12:
        raise IntegerOrder("continuation formulas need sin(pi nu) != 0; "
                           "limiting values are out of scope")
    return nv


def _sin_ratio(k: int, cos_pi_nu):
    """sin(k pi nu) / sin(pi nu) as the degree-(k-1) Chebyshev polynomial
    U_(k-1)(cos pi nu); regular even near integer nu."""
    if k == 0:
        return mp.mpc(0)
    sign = 1
    if k < 0:
        k, sign = -k, -1
    prev, here = mp.mpc(1), 2 * cos_pi_nu
    if k == 1:
        return sign * prev
    for _ in range(k - 2):
        prev, here = here, 2 * cos_pi_nu * here - prev
    return sign * here


def continue_hankel(kind: FunctionKind, m: int, nu, h1, h2):
    """Value of the given Hankel kind at z e^(2 pi i m) from the pair of
    values at z."""
    if kind not in (FunctionKind.H1, FunctionKind.H2):
        raise ValueError("continue_hankel handles H1 and H2 only")
    nv = _require_noninteger(nu)
    if m == 0:
        return mp.mpc(h1) if kind is FunctionKind.H1 else mp.mpc(h2)
    c = mp.cos(mp.pi * nv)
    if kind is FunctionKind.H1:
        return (-_sin_ratio(2 * m - 1, c) * h1
                - mp.exp(-1j * mp.pi * nv) * _sin_ratio(2 * m, c) * h2)
    return (_sin_ratio(2 * m + 1, c) * h2
            + mp.exp(1j * mp.pi * nv) * _sin_ratio(2 * m, c) * h1)


class Rotation(enum.Enum):
    """Which continuation family: full turns z e^(2 pi i m), or the odd
    half-turn z e^((2m+1) pi i) that also flips the order sign."""
    FULL_TURNS = "even"
    ODD_HALF_TURN = "odd"


def continue_bessel(kind: FunctionKind, m: int, rotation: Rotation, nu,
                    *, j, y=None, h1=None, h2=None):
    """The four J/Y continuation identities.

    FULL_TURNS returns the kind at z e^(2 pi i m).  ODD_HALF_TURN returns
    the order-reflected value at z e^((2m+1) pi i), which is what the
    half-turn identities express.  Missing base values raise ValueError.
    """
    if kind not in (FunctionKind.J, FunctionKind.Y):
        raise ValueError("continue_bessel handles J and Y only")
    nv = _require_noninteger(nu)
    c = mp.cos(mp.pi * nv)
    if rotation is Rotation.FULL_TURNS:
        if kind is FunctionKind.J:
            return mp.exp(2j * mp.pi * m * nv) * j
        if y is None:
            raise ValueError("Y continuation needs the Y base value")
        return (mp.exp(-2j * mp.pi * m * nv) * y
                + 2j * _sin_ratio(2 * m, c) * c * j)
    if h1 is None or h2 is None:
        raise ValueError("half-turn continuation needs both Hankel base values")
    s_2m = mp.sin(2 * mp.pi * m * nv)
    s_odd = mp.sin((2 * m + 1) * mp.pi * nv)
    if kind is FunctionKind.J:
        return (mp.exp(2j * mp.pi * m * nv) * j - 1j * s_2m * h1
                - 1j * mp.exp(-1j * mp.pi * nv) * s_odd * h2)
    if y is None:
        raise ValueError("Y continuation needs the Y base value")
    return (mp.exp(-2j * (m + 1) * mp.pi * nv) * y
            + 2j * mp.exp(-1j * mp.pi * nv) * _sin_ratio(2 * m + 1, c) * c * j
            - s_2m * h1 - mp.exp(-1j * mp.pi * nv) * s_odd * h2)
