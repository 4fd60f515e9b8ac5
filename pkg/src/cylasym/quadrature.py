"""Adaptive tanh-sinh quadrature.

A hand-rolled double-exponential rule: nested node levels on (-1, 1), panel
bisection when a panel refuses to converge, and doubling panels for
semi-infinite integrands that decay (the only kind this package integrates).
Everything is evaluated at the caller's current mpmath precision; node tables
are cached per (level, precision bucket) and shared across threads.

Endpoint singularities stronger than logarithmic are the caller's problem:
the call sites remove the t^((N-2)/3) factors by the substitution t = u^3
before integrating, as the remainder-integral design notes require.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from mpmath import mp

from .errors import NonConvergence

_MAX_LEVEL = 11
_MIN_LEVEL = 3
_node_cache: dict[tuple[int, int], list] = {}
_node_lock = threading.Lock()


@dataclass(frozen=True)
class QuadratureConfig:
    """Accuracy contract for every quadrature-backed operation.

    rel_tol is the target relative accuracy, abs_tol the hard floor below
    which contributions are discarded, max_refinements the panel-bisection
    depth budget.
    """

    rel_tol: float = 1e-13
    abs_tol: float = 1e-300
    max_refinements: int = 12

    def __post_init__(self):
        if not 0 < self.rel_tol <= 1e-6:
            raise ValueError("rel_tol must lie in (0, 1e-6]")
        if self.abs_tol <= 0:
            raise ValueError("abs_tol must be positive")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be at least 1")

    def halved(self) -> "QuadratureConfig":
        return QuadratureConfig(self.rel_tol / 2, self.abs_tol, self.max_refinements)


def _bucket(dps: int) -> int:
    return 10 * ((dps + 9) // 10)


def _nodes(level: int, bucket: int) -> list:
    """Positive-axis tanh-sinh nodes (k, x_k, w_k) for step h = 2**-level."""
    key = (level, bucket)
    cached = _node_cache.get(key)
    if cached is not None:
        return cached
    with _node_lock:
        cached = _node_cache.get(key)
        if cached is not None:
            return cached
        out = []
        with mp.workdps(bucket + 8):
            h = mp.mpf(1) / (1 << level)
            half_pi = mp.pi / 2
            floor = mp.mpf(10) ** (-(bucket + 8))
            k = 1
            while True:
                t = k * h
                sh = half_pi * mp.sinh(t)
                # 1 - tanh(sh) = 2/(e^(2 sh) + 1), computed without cancellation
                omx = 2 / (mp.exp(2 * sh) + 1)
                w = half_pi * mp.cosh(t) / mp.cosh(sh) ** 2
                if omx < floor or w < floor:
                    break
                out.append((k, omx, w))
                k += 1
        _node_cache[key] = out
        return out


def quad_finite(f, a, b, cfg: QuadratureConfig, *, tol_abs=None, _depth: int = 0):
    """Integrate f over the finite interval (a, b) at current precision."""
    a = mp.mpf(a)
    b = mp.mpf(b)
    center = (a + b) / 2
    half = (b - a) / 2
    bucket = _bucket(mp.dps)
    floor_abs = mp.mpf(cfg.abs_tol)
    if tol_abs is not None:
        floor_abs = max(floor_abs, mp.mpf(tol_abs))

    fvals: dict[int, object] = {}

    def at(pos_key: int, omx):
        v = fvals.get(pos_key)
        if v is None:
            # map by distance to the endpoint with exact mpf arithmetic:
            # rounding a + half*x at working precision would collapse the
            # near-endpoint nodes onto the endpoints themselves
            offset = mp.fmul(half, omx, exact=True)
            if pos_key < 0:
                point = mp.fadd(a, offset, exact=True)
            else:
                point = mp.fsub(b, offset, exact=True)
            v = f(point)
            fvals[pos_key] = v
        return v

    total_prev = None
    diff_prev = None
    for level in range(_MIN_LEVEL, _MAX_LEVEL + 1):
        h = mp.mpf(1) / (1 << level)
        shift = _MAX_LEVEL - level
        if 0 not in fvals:
            fvals[0] = f(center)
        acc = (mp.pi / 2) * fvals[0]
        for k, omx, w in _nodes(level, bucket):
            acc += w * (at(k << shift, omx) + at(-(k << shift), omx))
        total = h * half * acc
        if total_prev is not None:
            diff = abs(total - total_prev)
            tol = max(floor_abs, mp.mpf(cfg.rel_tol) * abs(total))
            if level >= _MIN_LEVEL + 2 and diff <= tol and \
                    (diff_prev is None or diff <= diff_prev or diff == 0):
                return total
            diff_prev = diff
        total_prev = total

    if _depth >= cfg.max_refinements:
        raise NonConvergence(
            f"tanh-sinh did not converge on ({float(a)}, {float(b)}) "
            f"after depth {_depth}")
    mid = center
    child_tol = floor_abs / 2
    left = quad_finite(f, a, mid, cfg, tol_abs=child_tol, _depth=_depth + 1)
    right = quad_finite(f, mid, b, cfg, tol_abs=child_tol, _depth=_depth + 1)
    return left + right


def integrate_decaying(f, cfg: QuadratureConfig, *, start=1.0, max_panels: int = 64):
    """Integrate f over (0, oo) for integrands that eventually decay.

    Panels (0, s), (s, 2s), (2s, 4s), ... are added until two consecutive
    panels contribute less than max(abs_tol, rel_tol * |total| * 1e-3); the
    relative term keeps us from polishing digits the caller can never see,
    while abs_tol stays the hard floor.
    """
    total = mp.mpc(0)
    a = mp.mpf(0)
    width = mp.mpf(start)
    quiet = 0
    for _ in range(max_panels):
        b = a + width
        part = quad_finite(f, a, b, cfg)
        total += part
        threshold = max(mp.mpf(cfg.abs_tol),
                        mp.mpf(cfg.rel_tol) * abs(total) * mp.mpf("1e-3"))
        if abs(part) < threshold:
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
        a = b
        width *= 2
    raise NonConvergence("semi-infinite integral still contributing after all panels")
