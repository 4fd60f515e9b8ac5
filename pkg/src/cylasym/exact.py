"""Exact rational computation of the expansion coefficients B_n and D_n.

Both coefficient families are polynomials in kappa with rational
coefficients.  Three independent routes are implemented and kept separate so
they can triangulate each other:

* the potential-polynomial route (the primary one, memoized),
* the Comtet route through integer-parameter potential polynomials,
* the Lauwerier route through a linear recurrence of two-variable
  polynomials and a term-by-term Laplace integral.

Nothing in this module ever touches floating point except eval_float, whose
only job is to convert finished rationals at a requested precision.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

from mpmath import mp

ExactRational = Fraction

KappaLike = Union[int, Fraction, "GaussRational"]

_GAUSS_RE = re.compile(
    r"^(?P<re>[+-]?[0-9./]+)?(?P<im>[+-]?[0-9./]*)i?$")


@dataclass(frozen=True)
class GaussRational:
    """An element of Q[i] with exact field arithmetic."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, value: KappaLike) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        return cls(Fraction(value))

    @classmethod
    def parse(cls, text: str) -> "GaussRational":
        """Parse '3', '-1/3', '0.5', '2+2i', '4-3i', 'i', '-2i'."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty kappa")
        if "i" not in s:
            return cls(Fraction(s))
        body = s[:-1] if s.endswith("i") else None
        if body is None:
            raise ValueError(f"cannot parse {text!r}: 'i' must be last")
        # split off the imaginary summand: find the sign that separates terms
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-" and body[pos - 1] not in "+-/.eE":
                re_part, im_part = body[:pos], body[pos:]
                break
        else:
            re_part, im_part = "", body
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return cls(Fraction(re_part) if re_part else Fraction(0), Fraction(im_part))

    def __add__(self, other: "GaussRational") -> "GaussRational":
        other = GaussRational.of(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussRational") -> "GaussRational":
        other = GaussRational.of(other)
        return GaussRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other) -> "GaussRational":
        if isinstance(other, (int, Fraction)):
            return GaussRational(self.re * other, self.im * other)
        other = GaussRational.of(other)
        return GaussRational(self.re * other.re - self.im * other.im,
                             self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussRational":
        if isinstance(other, (int, Fraction)):
            return GaussRational(self.re / other, self.im / other)
        other = GaussRational.of(other)
        den = other.abs2()
        if den == 0:
            raise ZeroDivisionError("division by zero GaussRational")
        num = self * other.conjugate()
        return GaussRational(num.re / den, num.im / den)

    def __neg__(self) -> "GaussRational":
        return GaussRational(-self.re, -self.im)

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|self|^2, exactly."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def to_mpc(self):
        return mp.mpc(mp.mpf(self.re.numerator) / self.re.denominator,
                      mp.mpf(self.im.numerator) / self.im.denominator)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


@dataclass(frozen=True)
class CoeffPolynomial:
    """B_n or D_n as an exact polynomial in kappa.

    coeffs[k] multiplies kappa**k; the tuple always has length n+1 (D_n's
    kappa**n entry is zero by parity).  Construction enforces the parity and
    leading-coefficient invariants, so a wrong table cannot leave this module
    silently.
    """

    kind: Literal["B", "D"]
    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("index must be nonnegative")
        if len(self.coeffs) != self.n + 1:
            raise ValueError(f"{self.kind}_{self.n} needs {self.n + 1} coefficients")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        # parity: B_n holds only kappa powers of n's parity, D_n the opposite
        keep = self.n % 2 if self.kind == "B" else (self.n + 1) % 2
        for k, c in enumerate(self.coeffs):
            if k % 2 != keep and c != 0:
                raise ValueError(f"parity violation in {self.kind}_{self.n} at kappa^{k}")
        if self.kind == "B":
            if self.coeffs[self.n] != Fraction(1, math.factorial(self.n)):
                raise ValueError(f"leading coefficient of B_{self.n} must be 1/{self.n}!")
        elif self.n >= 1:
            if self.coeffs[self.n - 1] != Fraction(1, math.factorial(self.n - 1)):
                raise ValueError(f"leading coefficient of D_{self.n} must be 1/{self.n - 1}!")

    @property
    def degree(self) -> int:
        for k in range(self.n, -1, -1):
            if self.coeffs[k] != 0:
                return k
        return 0

    def __str__(self) -> str:
        parts = []
        for k in range(self.n, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            piece = "" if (mag == 1 and k > 0) else str(mag)
            if k > 0:
                piece += ("*" if piece else "") + ("k" if k == 1 else f"k^{k}")
            if not parts:
                parts.append(piece if c > 0 else f"-{piece}")
            else:
                parts.append(f"+ {piece}" if c > 0 else f"- {piece}")
        return " ".join(parts) if parts else "0"


class PolyTables:
    """Shared memo tables for the a-series, Bell and potential polynomials.

    Tables only ever grow; extension is serialized by a lock and reads of
    finished entries are safe from any thread.
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._a: list[Fraction] = []
        self._bell: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
        self._pot_int: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}

    def a(self, j: int) -> Fraction:
        if j >= len(self._a):
            with self._lock:
                for m in range(len(self._a), j + 1):
                    self._a.append(Fraction(1, math.factorial(m + 3))
                                   if m % 2 == 0 else Fraction(0))
        return self._a[j]

    def bell(self, j: int, i: int) -> Fraction:
        """Bell polynomial of the shifted sinh series: coefficient of t^j in
        (a_1 t + a_2 t^2 + ...)^i."""
        if not 0 <= i <= max(j, 0):
            raise ValueError("bell needs 0 <= i <= j")
        if i == 0:
            return Fraction(1) if j == 0 else Fraction(0)
        if j % 2 == 1 or j < 2 * i:
            return Fraction(0)  # only even shifted indices survive, each >= 2
        got = self._bell.get((j, i))
        if got is not None:
            return got
        with self._lock:
            got = self._bell.get((j, i))
            if got is not None:
                return got
            if i == 1:
                val = self.a(j)
            else:
                val = Fraction(0)
                for m in range(2, j - 2 * (i - 1) + 1, 2):
                    val += self.a(m) * self.bell(j - m, i - 1)
            self._bell[(j, i)] = val
            return val

    def pot_int(self, param: int, k: int) -> Fraction:
        """Potential polynomial with integer parameter: coefficient of t^k in
        (1 + sum_j (a_j/a_0) t^j)^param."""
        if param < 0 or k < 0:
            raise ValueError("pot_int needs nonnegative arguments")
        if param == 0:
            return Fraction(1) if k == 0 else Fraction(0)
        if k % 2 == 1:
            return Fraction(0)
        got = self._pot_int.get((param, k))
        if got is not None:
            return got
        with self._lock:
            got = self._pot_int.get((param, k))
            if got is not None:
                return got
            a0 = self.a(0)
            val = Fraction(0)
            for m in range(0, k + 1, 2):
                prev = self.pot_int(param - 1, k - m)
                if prev != 0:
                    val += (self.a(m) / a0) * prev
            self._pot_int[(param, k)] = val
            return val


_TABLES = PolyTables()

_coeff_lock = threading.Lock()
_coeff_B_memo: dict[int, CoeffPolynomial] = {}
_coeff_D_memo: dict[int, CoeffPolynomial] = {}


def sinh_series(jmax: int) -> list[Fraction]:
    """Coefficients a_0..a_jmax of sinh t - t = sum_j a_j t^(j+3)."""
    if jmax < 0:
        raise ValueError("jmax must be nonnegative")
    return [_TABLES.a(j) for j in range(jmax + 1)]


def bell(j: int, i: int) -> Fraction:
    return _TABLES.bell(j, i)


def potential(rho, j: int) -> Fraction:
    """Potential polynomial with general rational parameter, from the Bell
    table: sum_i binom(rho, i) a_0^-i Bell(j, i)."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    rho = Fraction(rho)
    if j % 2 == 1:
        return Fraction(0)
    binom = Fraction(1)
    inv_a0 = Fraction(6)
    power = Fraction(1)
    total = Fraction(1) if j == 0 else Fraction(0)
    for i in range(1, j + 1):
        binom *= Fraction(rho - (i - 1), i)
        power *= inv_a0
        if binom == 0:
            break
        b = _TABLES.bell(j, i)
        if b != 0:
            total += binom * power * b
    return total


def potential_comtet(rho, j: int) -> Fraction:
    """Same value as potential(rho, j), via integer-parameter potentials."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    rho = Fraction(rho)
    if rho.denominator == 1 and 0 <= rho <= j:
        raise ValueError(f"Comtet prefactor has a pole at rho={rho} <= j={j}")
    # Gamma(-rho+j+1)/Gamma(-rho) as the exact product (-rho)(-rho+1)...(-rho+j)
    prefactor = Fraction(1)
    for m in range(j + 1):
        prefactor *= -rho + m
    prefactor /= math.factorial(j)
    total = Fraction(0)
    binom = Fraction(1)
    for i in range(j + 1):
        if i > 0:
            binom = binom * (j - i + 1) / i
        term = binom * _TABLES.pot_int(i, j) / (-rho + i)
        total += -term if i % 2 else term
    return prefactor * total


def _assemble_B(n: int, pot_at) -> CoeffPolynomial:
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n // 2 + 1):
        coeffs[n - 2 * k] = pot_at(2 * k) / math.factorial(n - 2 * k)
    return CoeffPolynomial("B", n, tuple(coeffs))


def coeff_B(n: int) -> CoeffPolynomial:
    """B_n by the potential-polynomial representation (the primary route)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    got = _coeff_B_memo.get(n)
    if got is not None:
        return got
    rho = Fraction(-(n + 1), 3)
    poly = _assemble_B(n, lambda j: potential(rho, j))
    with _coeff_lock:
        _coeff_B_memo.setdefault(n, poly)
    return _coeff_B_memo[n]


def coeff_B_comtet(n: int) -> CoeffPolynomial:
    """B_n by Comtet's integer-parameter formula (triangulation route)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    base = Fraction(n + 1, 3)

    def pot_at(two_k: int) -> Fraction:
        # 3 Gamma((n+1)/3 + 2k + 1) / ((2k)! Gamma((n+1)/3)) * alternating sum
        rising = Fraction(3)
        for m in range(two_k + 1):
            rising *= base + m
        rising /= math.factorial(two_k)
        total = Fraction(0)
        binom = Fraction(1)
        for i in range(two_k + 1):
            if i > 0:
                binom = binom * (two_k - i + 1) / i
            term = binom * _TABLES.pot_int(i, two_k) / (n + 3 * i + 1)
            total += -term if i % 2 else term
        return rising * total

    return _assemble_B(n, pot_at)


def coeff_B_lauwerier(n: int) -> CoeffPolynomial:
    """B_n by the linear recurrence for P_n and a term-by-term Laplace
    integral (triangulation route)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    # P[m] is a list over x-powers; each entry a list of kappa-coefficients
    p_table: list[list[list[Fraction]]] = []
    for m in range(n + 1):
        if m == 0:
            p_table.append([[Fraction(1)]])
            continue
        if m == 1:
            p_table.append([[Fraction(0), Fraction(1)]])
            continue
        kappa_term = [Fraction(0)] * (m + 1)
        kappa_term[m] = Fraction(1, math.factorial(m))
        poly: list[list[Fraction]] = [kappa_term]
        for k in range(1, m // 2 + 1):
            factor = Fraction(-1, math.factorial(2 * k + 3))
            for xpow, kcoeffs in enumerate(p_table[m - 2 * k]):
                target = xpow + 1  # integrate x^xpow -> x^(xpow+1)/(xpow+1)
                while len(poly) <= target:
                    poly.append([])
                scaled = [factor * c / (xpow + 1) for c in kcoeffs]
                dst = poly[target]
                for idx, c in enumerate(scaled):
                    if idx < len(dst):
                        dst[idx] += c
                    else:
                        dst.append(c)
        p_table.append(poly)

    base = Fraction(n + 1, 3)
    coeffs = [Fraction(0)] * (n + 1)
    rising = Fraction(1)
    for xpow, kcoeffs in enumerate(p_table[n]):
        if xpow > 0:
            rising *= base + (xpow - 1)
        weight = Fraction(6) ** xpow * rising
        for idx, c in enumerate(kcoeffs):
            if c != 0:
                coeffs[idx] += c * weight
    return CoeffPolynomial("B", n, tuple(coeffs))


def coeff_D(n: int) -> CoeffPolynomial:
    """D_n = (B_n(kappa+1) - B_n(kappa-1)) / 2, expanded exactly."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    got = _coeff_D_memo.get(n)
    if got is not None:
        return got
    b = coeff_B(n).coeffs
    coeffs = [Fraction(0)] * (n + 1)
    for j in range(n + 1):
        total = Fraction(0)
        for k in range(j + 1, n + 1, 2):
            total += math.comb(k, j) * b[k]
        coeffs[j] = total
    poly = CoeffPolynomial("D", n, tuple(coeffs))
    with _coeff_lock:
        _coeff_D_memo.setdefault(n, poly)
    return _coeff_D_memo[n]


def eval_exact(p: CoeffPolynomial, kappa: KappaLike) -> GaussRational:
    """Horner evaluation in exact Gaussian-rational arithmetic."""
    kappa = GaussRational.of(kappa)
    acc = GaussRational(Fraction(0))
    for c in reversed(p.coeffs):
        acc = acc * kappa + GaussRational(c)
    return acc


def eval_float(p: CoeffPolynomial, kappa, digits: int = 15):
    """Horner evaluation with coefficients converted at >= digits precision.

    kappa may be anything mpmath accepts (or a GaussRational); the result is
    an mpf for real kappa and an mpc otherwise.
    """
    if digits < 15:
        raise ValueError("digits must be at least 15")
    with mp.workdps(digits + 10):
        if isinstance(kappa, GaussRational):
            kv = kappa.to_mpc()
            kv = kv.real if kappa.is_real() else kv
        else:
            kv = mp.mpmathify(kappa)
            if isinstance(kv, mp.mpc) and kv.imag == 0:
                kv = kv.real
        acc = mp.mpf(0)
        for c in reversed(p.coeffs):
            acc = acc * kv + mp.mpf(c.numerator) / c.denominator
    return +acc
