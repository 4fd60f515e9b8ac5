"""Quadrature evaluation of the remainders left by truncated
transition-region expansions.

Two interchangeable routes live side by side.  The split route is a pair
of half-line integrals of imaginary-axis Hankel values against explicit
phase brackets and works for any admissible order offset.  The merged
route applies only at offset zero, where the two half-lines collapse into
one or two integrals with a rational weight; it exists both as a fast
path and as an independent cross-check, so the routes share no bracket
code.

The module also hosts the z-free majorant constant and the fully
computable two-integral bound, which reuse the same cached axis values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .errors import NonConvergence, SectorViolation
from .oracles import _hankel1_imag_axis_once, _hankel1_prime_imag_axis_once
from .quadrature import QuadratureConfig, integrate_decaying
from .series import FunctionKind
from .sheeted import SheetedComplex

_DEFAULT_CFG = QuadratureConfig()

# Open sectors of validity for the split representation, in units of pi/2.
# The J and Y rows are the intersection of the two Hankel sectors.
_SECTORS = {
    FunctionKind.H1: (-1, 3),
    FunctionKind.H1_PRIME: (-1, 3),
    FunctionKind.H2: (-3, 1),
    FunctionKind.H2_PRIME: (-3, 1),
    FunctionKind.J: (-1, 1),
    FunctionKind.J_PRIME: (-1, 1),
    FunctionKind.Y: (-1, 1),
    FunctionKind.Y_PRIME: (-1, 1),
}

_EXTRA_QUAD_DPS = 12

_DENOMINATOR_FLOOR = 1e-8


def _quad_extradps(base_dps: int, powers: float) -> int:
    """Extra digits for the outer quadrature loop.

    The tanh-sinh node tables truncate at a floor distance roughly
    10^-(digits + 8) from each endpoint, and every level shares that
    floor, so an integrand behaving like u^(powers - 1) at the origin
    carries a silent endpoint bias of floor^powers that level-to-level
    comparison can never see.  Raising only the outer precision (axis
    values stay at the caller's precision through the cache) pushes the
    floor deep enough that the bias stays below the target accuracy;
    near the admissibility edge the exponent approaches zero and no
    realistic precision reaches it, which is reported rather than
    absorbed.
    """
    powers = float(powers)
    if powers >= 1:
        return _EXTRA_QUAD_DPS
    need = (base_dps + 14) / powers - 8
    if need > 600:
        raise NonConvergence(
            "the order offset sits so close to the (N+1)/3 strip "
            "boundary that the endpoint singularity cannot be resolved; "
            "increase N or move kappa off the edge")
    return max(_EXTRA_QUAD_DPS, int(math.ceil(need)) + 10 - base_dps)


@dataclass(frozen=True)
class RemainderRequest:
    """What to integrate: which function, where on the Riemann surface,
    at which order offset, and after how many raw series terms."""

    kind: FunctionKind
    z: SheetedComplex
    kappa: complex
    N: int


_axis_cache: dict[tuple, mp.mpc] = {}


def _axis_value(t, kappa, cfg: QuadratureConfig, prime: bool, dps: int):
    """Cached H^(1) (or derivative) value on the imaginary axis.

    Quadrature nodes are generated by exact dyadic arithmetic, so the
    same t recurs across panels, across the two half-line integrals, and
    across test cases; memoising on the exact mantissa makes the second
    and later integrals of a session nearly free.
    """
    kc = mp.mpc(kappa)
    key = (prime, dps, cfg.rel_tol, mp.mpf(t)._mpf_,
           kc.real._mpf_, kc.imag._mpf_)
    val = _axis_cache.get(key)
    if val is None:
        with mp.workdps(dps + 6):
            if prime:
                val = _hankel1_prime_imag_axis_once(t, kc, cfg)
            else:
                val = _hankel1_imag_axis_once(t, kc, cfg)
        _axis_cache[key] = val
    return val


def _negligible(u, upow: int, dps: int) -> bool:
    """True when the e^(-2 pi u^3) factor alone pins the node below the
    target precision, so the axis value need not be computed.  The +14
    margin covers the bracket magnitude and the slow growth of the axis
    factor, both O(1) for u of a few units."""
    if u <= 1:
        return False
    return 3 * mp.exp(-2 * mp.pi * u**3) * u**upow \
        < mp.mpf(10) ** (-(dps + 14))


def _guarded(d):
    if abs(d) < _DENOMINATOR_FLOOR:
        raise SectorViolation(
            "phase-bracket denominator vanishes on the integration path; "
            "arg z is effectively on a sector boundary")
    return d


def _split_brackets(base: FunctionKind, N: int):
    """The two phase brackets of the split route as callables of
    w = i (t/z)^(1/3); the first pairs with offset +kappa, the second
    with -kappa."""
    third = mp.expjpi(mp.mpf(N + 1) / 3)
    third_conj = mp.expjpi(-mp.mpf(N + 1) / 3)
    alt = mp.one if (N + 1) % 2 == 0 else -mp.one
    sixth = mp.expjpi(mp.mpf(1) / 3)
    sixth_conj = mp.expjpi(-mp.mpf(1) / 3)

    if base is FunctionKind.H1:
        def first(w):
            return third / _guarded(1 + w * sixth) - alt / _guarded(1 - w)

        def second(w):
            return third / _guarded(1 - w * sixth) - alt / _guarded(1 + w)
    elif base is FunctionKind.J:
        def first(w):
            return third / _guarded(1 + w * sixth) \
                - third_conj / _guarded(1 + w * sixth_conj)

        def second(w):
            return third / _guarded(1 - w * sixth) \
                - third_conj / _guarded(1 - w * sixth_conj)
    else:
        def first(w):
            return third / _guarded(1 + w * sixth) \
                + third_conj / _guarded(1 + w * sixth_conj) \
                - 2 * alt / _guarded(1 - w)

        def second(w):
            return third / _guarded(1 - w * sixth) \
                + third_conj / _guarded(1 - w * sixth_conj) \
                - 2 * alt / _guarded(1 + w)

    return first, second


def _split_value(kind: FunctionKind, z: SheetedComplex, kc, N: int,
                 cfg: QuadratureConfig, dps: int):
    base = kind.base_kind
    prime = kind.is_derivative
    zinv3 = z.power(Fraction(-1, 3))
    first, second = _split_brackets(base, N)

    def half_line(bracket, kap):
        def f(u):
            if _negligible(u, N, dps):
                return mp.mpc(0)
            w = 1j * u * zinv3
            return 3 * u**N * mp.exp(-2 * mp.pi * u**3) * bracket(w) \
                * _axis_value(u**3, kap, cfg, prime, dps)

        return integrate_decaying(f, cfg)

    pre = mp.expjpi(2 * kc - mp.mpf(N) / 2)
    pre_conj = mp.expjpi(-(2 * kc - mp.mpf(N) / 2))
    # The derivative representations flip the sign of the +kappa integral
    # relative to the base ones; everything else is shared.
    lead = -pre if prime else pre
    if base is FunctionKind.H1:
        denom = 6 * mp.pi
    elif base is FunctionKind.J:
        denom = 12 * mp.pi
    else:
        denom = 12 * mp.pi * 1j
    scale = z.power(Fraction(-(N + 1), 3)) / denom
    return (lead * half_line(first, kc)
            + pre_conj * half_line(second, -kc)) * scale


# Term descriptors for the merged offset-zero route, keyed by base kind
# and the residue of the equal-order index n mod 3.  Each entry is
# (sign as multiple of (-1)^n, t-power offset a giving t^((2n+a)/3),
#  weight tag, z-power offset b giving z^(-(2n+b)/3)).  Hankel weights
# are the optional extra sixth-root phase; J/Y weights are rational in
# q^2 = (t/z)^(2/3) over the common denominator 1 + q^6.
_MERGED = {
    (FunctionKind.H1, False): {
        0: [(-1, -2, "plain", 1), (-1, 0, "sixth", 3)],
        1: [(1, 0, "sixth", 3)],
        2: [(1, -2, "plain", 1)],
    },
    (FunctionKind.H1, True): {
        0: [(1, -1, "plain", 2)],
        1: [(-1, -1, "plain", 2), (-1, 1, "sixth", 4)],
        2: [(1, 1, "sixth", 4)],
    },
    (FunctionKind.J, False): {
        0: [(1, -2, "1-q4", 1)],
        1: [(1, 0, "1+q2", 3)],
        2: [(-1, -2, "1+q2", 1)],
    },
    (FunctionKind.J, True): {
        0: [(-1, -1, "1+q2", 2)],
        1: [(1, -1, "1-q4", 2)],
        2: [(1, 1, "1+q2", 4)],
    },
    (FunctionKind.Y, False): {
        0: [(-1, -2, "1+q4", 1)],
        1: [(1, 0, "1-q2", 3)],
        2: [(-1, -2, "1-q2", 1)],
    },
    (FunctionKind.Y, True): {
        0: [(-1, -1, "1-q2", 2)],
        1: [(-1, -1, "1+q4", 2)],
        2: [(1, 1, "1-q2", 4)],
    },
}

_JY_WEIGHTS = {
    "1-q4": lambda q2: 1 - q2 * q2,
    "1+q2": lambda q2: 1 + q2,
    "1+q4": lambda q2: 1 + q2 * q2,
    "1-q2": lambda q2: 1 - q2,
}


def _merged_value(kind: FunctionKind, z: SheetedComplex, n: int,
                  cfg: QuadratureConfig, dps: int):
    base = kind.base_kind
    prime = kind.is_derivative
    zinv3 = z.power(Fraction(-1, 3))
    hankel = base is FunctionKind.H1
    if hankel:
        front = 1 / (mp.sqrt(3) * mp.pi)
        phase = mp.expjpi(mp.mpf(2 * (2 * n + 2 if prime else 2 * n + 1)) / 3)
        turn = mp.expjpi(mp.mpf(2) / 3)
    elif base is FunctionKind.J:
        front = 1 / (2 * mp.sqrt(3) * mp.pi)
    else:
        front = 1 / (2 * mp.pi)
    sixth = mp.expjpi(mp.mpf(1) / 3)
    axis_mul = mp.one if prime else mp.mpc(0, 1)
    parity = 1 if n % 2 == 0 else -1

    total = mp.mpc(0)
    for sgn, poff, tag, zoff in _MERGED[(base, prime)][n % 3]:
        upow = 2 * n + poff + 2
        zp = 2 * n + zoff
        extra = sixth if tag == "sixth" else mp.one

        def f(u, upow=upow, tag=tag):
            if _negligible(u, upow, dps):
                return mp.mpc(0)
            q2 = (u * zinv3) ** 2
            if hankel:
                den = _guarded(1 + q2 * turn) * _guarded(1 + q2)
                weight = phase / den
            else:
                weight = _JY_WEIGHTS[tag](q2) / _guarded(1 + q2**3)
            return 3 * u**upow * mp.exp(-2 * mp.pi * u**3) * weight \
                * axis_mul * _axis_value(u**3, 0, cfg, prime, dps)

        integral = integrate_decaying(f, cfg)
        total += sgn * parity * extra * integral * z.power(Fraction(-zp, 3))
    return front * total


def remainder_integral(req: RemainderRequest,
                       cfg: QuadratureConfig = None, *,
                       route: str = "auto"):
    """Exact remainder after the first ``req.N`` raw series terms.

    ``route="auto"`` takes the merged offset-zero form whenever the
    request admits it (kappa = 0 and the raw index has the parity that
    form assumes: even for base kinds, odd for derivatives) and the
    split form otherwise.  ``"split"`` and ``"merged"`` force a side;
    forcing ``"merged"`` on a request that does not admit it raises
    ValueError.  Both routes integrate in t = u^3, which turns the cube
    roots of t into exact powers of the quadrature variable.
    """
    if cfg is None:
        cfg = _DEFAULT_CFG
    if route not in ("auto", "split", "merged"):
        raise ValueError(f"unknown route {route!r}")
    if req.N < 0:
        raise ValueError("N must be non-negative")
    kind = req.kind
    kc = mp.mpc(req.kappa)

    if kind in (FunctionKind.H2, FunctionKind.H2_PRIME):
        # Second-kind remainders come from the first kind on the rotated
        # sheet with the offset negated; the base kind also flips sign.
        partner = FunctionKind.H1_PRIME if kind.is_derivative \
            else FunctionKind.H1
        sub = RemainderRequest(partner, req.z.rotate(turns_of_pi=1),
                               -kc, req.N)
        inner = remainder_integral(sub, cfg, route=route)
        return inner if kind.is_derivative else -inner

    lo, hi = _SECTORS[kind]
    theta = req.z.theta
    if not lo * math.pi / 2 < theta < hi * math.pi / 2:
        raise SectorViolation(
            f"arg z = {theta:.6g} lies outside the open sector "
            f"({lo} pi/2, {hi} pi/2) for {kind.value}")
    strip = (req.N + 1) / 3
    need = float(abs(kc.real)) + (1 if kind.is_derivative else 0)
    if not need < strip:
        what = "|Re kappa| + 1" if kind.is_derivative else "|Re kappa|"
        raise SectorViolation(
            f"{what} = {need:.6g} must stay below (N+1)/3 = {strip:.6g}")

    merged_ok = kc == 0 and req.N % 2 == (1 if kind.is_derivative else 0)
    if route == "merged" and not merged_ok:
        raise ValueError(
            "the merged route needs kappa = 0 and a raw index of the "
            "parity the offset-zero rearrangement assumes")

    base_dps = mp.dps
    powers = req.N + 1 - 3 * need
    with mp.extradps(_quad_extradps(base_dps, powers)):
        if merged_ok and route != "split":
            n = (req.N - 1) // 2 if kind.is_derivative else req.N // 2
            value = _merged_value(kind, req.z, n, cfg, base_dps)
        else:
            value = _split_value(kind, req.z, kc, req.N, cfg, base_dps)
    return +value


def appendix_b_constant(N: int, kappa, cfg: QuadratureConfig = None, *,
                        split: bool = False):
    """The z-free majorant C_N(kappa) with
    |R_N| <= C_N(kappa) / |z|^((N+1)/3) for 0 <= arg z <= pi.

    The weights 4 and 2 multiplying the two half-line integrals arise
    from bounding the bracket denominators pairwise, 2 + 2 on the +kappa
    side and 1 + 1 on the -kappa side; ``split=True`` returns the bare
    integral pair so that assembly stays checkable from outside.
    """
    if cfg is None:
        cfg = _DEFAULT_CFG
    if N < 0:
        raise ValueError("N must be non-negative")
    kc = mp.mpc(kappa)
    if not abs(kc.real) < (N + 1) / 3:
        raise SectorViolation(
            f"|Re kappa| = {float(abs(kc.real)):.6g} must stay below "
            f"(N+1)/3 = {(N + 1) / 3:.6g}")
    base_dps = mp.dps

    def half_line(kap):
        def f(u):
            if _negligible(u, N, base_dps):
                return mp.mpf(0)
            return 3 * u**N * mp.exp(-2 * mp.pi * u**3) \
                * abs(_axis_value(u**3, kap, cfg, False, base_dps))

        return mp.re(integrate_decaying(f, cfg))

    with mp.extradps(_quad_extradps(base_dps, N + 1 - 3 * abs(kc.real))):
        plus = half_line(kc)
        minus = half_line(-kc)
        if split:
            return +plus, +minus
        grow = mp.exp(-2 * mp.pi * kc.imag)
        shrink = mp.exp(2 * mp.pi * kc.imag)
        value = (4 * grow * plus + 2 * shrink * minus) / (6 * mp.pi)
    return +value


def computable_bound_general_kappa(z: SheetedComplex, kappa, N: int,
                                   cfg: QuadratureConfig = None):
    """Two-integral bound on the H^(1) remainder for complex offsets.

    Sharper than the majorant constant: at kappa = 0 the difference
    integral vanishes identically and the bound collapses onto the
    first-omitted-term central bound.  The phase merge behind it needs
    the raw index at 1 mod 6, and the sector extends to the full H^(1)
    range at the price of a |sec(arg z)| factor outside [0, pi].
    """
    if cfg is None:
        cfg = _DEFAULT_CFG
    if N % 6 != 1:
        raise ValueError("the merged phase bound needs N = 1 mod 6")
    theta = z.theta
    if not -math.pi / 2 < theta < 3 * math.pi / 2:
        raise SectorViolation(
            f"arg z = {theta:.6g} lies outside (-pi/2, 3 pi/2)")
    kc = mp.mpc(kappa)
    if not abs(kc.real) < (N + 1) / 3:
        raise SectorViolation(
            f"|Re kappa| = {float(abs(kc.real)):.6g} must stay below "
            f"(N+1)/3 = {(N + 1) / 3:.6g}")
    base_dps = mp.dps

    with mp.extradps(_quad_extradps(base_dps, N + 1 - 3 * abs(kc.real))):
        plus_phase = mp.expjpi(2 * kc)
        minus_phase = mp.expjpi(-2 * kc)

        def folded(upow, combine):
            def f(u):
                if _negligible(u, upow, base_dps):
                    return mp.mpf(0)
                a = plus_phase * _axis_value(u**3, kc, cfg, False, base_dps)
                b = minus_phase * _axis_value(u**3, -kc, cfg, False,
                                              base_dps)
                return 3 * u**upow * mp.exp(-2 * mp.pi * u**3) \
                    * abs(a + combine * b)

            return mp.re(integrate_decaying(f, cfg))

        diff_part = folded(N, -1)
        sum_part = folded(N + 3, 1)
        down = 2 * mp.sqrt(3) * mp.pi
        r = z.radius()
        value = diff_part / (down * r ** (mp.mpf(N + 1) / 3)) \
            + sum_part / (down * r ** (mp.mpf(N + 4) / 3))
        if -math.pi / 2 < theta < 0 or math.pi < theta < 3 * math.pi / 2:
            value *= abs(mp.sec(z.angle()))
    return +value
