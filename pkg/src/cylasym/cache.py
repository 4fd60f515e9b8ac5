"""Disk cache for exact coefficients.

High orders (n around 200) take real time to build, and every CLI run is a
fresh process, so finished polynomials are persisted as decimal
numerator/denominator pairs.  One line per index, a versioned header per
file, loaded lazily on first use.  Set CYLASYM_CACHE to relocate the
directory (tests point it at a tmpdir).
"""

from __future__ import annotations

import os
import threading
from fractions import Fraction
from pathlib import Path

from .exact import CoeffPolynomial, coeff_B, coeff_D

_FORMAT = "cylasym-coeffs v1"

_lock = threading.Lock()
_loaded: dict[str, dict[int, CoeffPolynomial]] = {}


def cache_dir() -> Path:
    env = os.environ.get("CYLASYM_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "cylasym"


def _cache_file(kind: str) -> Path:
    return cache_dir() / f"coeff_{kind}.txt"


def _parse_file(kind: str) -> dict[int, CoeffPolynomial]:
    path = _cache_file(kind)
    table: dict[int, CoeffPolynomial] = {}
    if not path.exists():
        return table
    lines = path.read_text().splitlines()
    if not lines or lines[0].strip() != f"{_FORMAT} kind={kind}":
        return {}  # unknown version: ignore, will be rewritten on next store
    for line in lines[1:]:
        fields = line.split()
        if not fields:
            continue
        n = int(fields[0])
        if len(fields) != n + 2:
            continue  # truncated record, drop it
        coeffs = []
        for tok in fields[1:]:
            num, _, den = tok.partition("/")
            coeffs.append(Fraction(int(num), int(den) if den else 1))
        try:
            table[n] = CoeffPolynomial(kind, n, tuple(coeffs))
        except ValueError:
            continue  # corrupted record fails the invariants, drop it
    return table


def _table(kind: str) -> dict[int, CoeffPolynomial]:
    if kind not in _loaded:
        with _lock:
            if kind not in _loaded:
                _loaded[kind] = _parse_file(kind)
    return _loaded[kind]


def _append(kind: str, poly: CoeffPolynomial) -> None:
    path = _cache_file(kind)
    line = " ".join([str(poly.n)] + [f"{c.numerator}/{c.denominator}"
                                     for c in poly.coeffs])
    with _lock:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fresh = not path.exists() or path.stat().st_size == 0
            with path.open("a") as fh:
                if fresh:
                    fh.write(f"{_FORMAT} kind={kind}\n")
                fh.write(line + "\n")
        except OSError:
            pass  # a read-only cache dir only costs recomputation


def cached_coeff(kind: str, n: int) -> CoeffPolynomial:
    """Fetch B_n or D_n, computing and persisting on a miss."""
    if kind not in ("B", "D"):
        raise ValueError("kind must be 'B' or 'D'")
    table = _table(kind)
    got = table.get(n)
    if got is not None:
        return got
    poly = coeff_B(n) if kind == "B" else coeff_D(n)
    table[n] = poly
    _append(kind, poly)
    return poly
