"""Expansion-independent reference values by quadrature of classical
integral representations.

Everything here is deliberately ignorant of the asymptotic machinery in the
rest of the package: these are the values the expansions get tested against.
Each oracle estimates how many digits the dominant cancellation inside its
integral will eat, works at a correspondingly elevated precision, and then
validates itself by recomputing at a shifted precision.
"""

from __future__ import annotations

import math

from mpmath import mp

from .errors import NonConvergence, SectorViolation
from .gammafns import gamma_real
from .quadrature import QuadratureConfig, integrate_decaying, quad_finite
from .sheeted import SheetedComplex

_DEFAULT_CFG = QuadratureConfig()


def _cfg_or_default(cfg):
    return _DEFAULT_CFG if cfg is None else cfg


def _self_validated(build, cfg: QuadratureConfig, extra_digits, what: str):
    """Run build() at two separated precisions until the results agree to
    the configured tolerance, then round to the caller's precision."""
    caller_dps = mp.dps
    d = caller_dps + 23 + max(0, int(math.ceil(extra_digits)))
    target = mp.mpf(cfg.rel_tol)
    for _ in range(3):
        with mp.workdps(d):
            first = build()
        with mp.workdps(d + 12):
            second = build()
            scale = abs(second)
            ok = scale == 0 or abs(first - second) <= 10 * target * scale
        if ok:
            return +second
        d += 24
    raise NonConvergence(f"{what} did not stabilize below {d} digits")


def _leg_exponent_max(nu, z_val) -> float:
    """Float scan of Re(z sinh u - nu u) over the integration path, used to
    size the cancellation allowance for the contour oracle."""
    zc = complex(z_val)
    nc = complex(nu)
    worst = 0.0
    for i in range(33):
        y = math.pi * i / 32
        worst = max(worst, -zc.imag * math.sin(y) + nc.imag * y)
    for i in range(1, 65):
        s = i / 8.0
        worst = max(worst,
                    -zc.real * math.sinh(s) + nc.real * s,
                    -zc.real * math.sinh(s) - nc.real * s + nc.imag * math.pi)
    return worst


def hankel1_contour(nu, z: SheetedComplex, cfg: QuadratureConfig = None):
    """H^(1)_nu(z) from the Schlaefli-Sommerfeld integral
    (1/pi i) int e^(z sinh u - nu u) du over -oo -> 0 -> i pi -> i pi + oo,
    for |arg z| < pi/2."""
    cfg = _cfg_or_default(cfg)
    if not isinstance(z, SheetedComplex):
        raise TypeError("z must be a SheetedComplex")
    theta = z.theta
    if abs(theta) >= math.pi / 2:
        raise SectorViolation(f"contour diverges for |arg z| = {abs(theta):.3f} >= pi/2")
    extra = _leg_exponent_max(nu, complex(z.value())) / math.log(10) \
        + math.log10(float(z.r)) / 3 + 4

    def build():
        zz = z.value()
        nn = mp.mpmathify(nu)

        def g(u):
            return mp.exp(zz * mp.sinh(u) - nn * u)

        leg1 = integrate_decaying(lambda s: g(-s), cfg)
        leg2 = quad_finite(lambda y: 1j * g(1j * y), 0, mp.pi, cfg)
        leg3 = integrate_decaying(lambda s: g(s + 1j * mp.pi), cfg)
        return (leg1 + leg2 + leg3) / (mp.pi * 1j)

    return _self_validated(build, cfg, extra, "hankel1_contour")


def bessel_JY_real(nu, x, cfg: QuadratureConfig = None):
    """(J_nu(x), Y_nu(x)) for real nu >= 0, x > 0, by the classical
    Bessel/Schlaefli integrals."""
    cfg = _cfg_or_default(cfg)
    if nu < 0 or x <= 0:
        raise ValueError("bessel_JY_real needs nu >= 0 and x > 0")

    def build():
        nn = mp.mpf(nu)
        xx = mp.mpf(x)
        front_J = quad_finite(lambda t: mp.cos(nn * t - xx * mp.sin(t)),
                              0, mp.pi, cfg) / mp.pi
        front_Y = quad_finite(lambda t: mp.sin(xx * mp.sin(t) - nn * t),
                              0, mp.pi, cfg) / mp.pi
        sin_npi = mp.sinpi(nn)
        cos_npi = mp.cospi(nn)
        tail_J = integrate_decaying(
            lambda s: mp.exp(-nn * s - xx * mp.sinh(s)), cfg)
        tail_Y = integrate_decaying(
            lambda s: (mp.exp(nn * s) + mp.exp(-nn * s) * cos_npi)
            * mp.exp(-xx * mp.sinh(s)), cfg)
        # the integrands are real; re() strips zero imaginary parts the
        # quadrature may have introduced so the pair packs cleanly
        return mp.mpc(mp.re(front_J - sin_npi / mp.pi * tail_J),
                      mp.re(front_Y - tail_Y / mp.pi))

    extra = math.log10(max(float(x), 2.0)) + 4
    pair = _self_validated(build, cfg, extra, "bessel_JY_real")
    return pair.real, pair.imag


def _k_bessel(order, t, cfg: QuadratureConfig):
    """K_order(t) by its cosh integral; order may be any complex number."""
    return integrate_decaying(
        lambda u: mp.exp(-t * mp.cosh(u)) * mp.cosh(order * u), cfg)


def _axis_guard_digits(tf: float, kr: float) -> float:
    """Cancellation allowance for the K-route. K_(it)(t) ~ e^(-pi t/2)
    while the integrand peaks near e^(-t), so large t eats (pi/2 - 1) t
    digits; below t = 1 the integrand is single-signed and nothing
    cancels, hence the clamp (an unclamped 1/t here once requested
    ~1e28 guard digits for t = 1e-30 and overflowed the backend)."""
    return ((math.pi / 2 - 1) * tf + kr * kr / (2 * max(tf, 1.0))) \
        / math.log(10)


def hankel1_imag_axis(t, kappa, cfg: QuadratureConfig = None):
    """H^(1)_(it+kappa)(it) = (2/pi i) e^(-i pi (it+kappa)/2) K_(it+kappa)(t)."""
    cfg = _cfg_or_default(cfg)
    if not t > 0:
        raise ValueError("t must be positive")
    kc = complex(kappa)
    extra = _axis_guard_digits(float(t), kc.real) + 5

    def build():
        tt = mp.mpf(t)
        kk = mp.mpmathify(kappa)
        order = 1j * tt + kk
        k_val = _k_bessel(order, tt, cfg)
        return 2 / (mp.pi * 1j) * mp.exp(-1j * mp.pi * order / 2) * k_val

    return _self_validated(build, cfg, extra, "hankel1_imag_axis")


def hankel1_prime_imag_axis(t, kappa, cfg: QuadratureConfig = None):
    """H^(1)'_(it+kappa)(it) through the functional relation
    2 C'_nu = C_(nu-1) - C_(nu+1), i.e. two shifted-order oracle calls."""
    cfg = _cfg_or_default(cfg)
    kk = mp.mpmathify(kappa)
    lower = hankel1_imag_axis(t, kk - 1, cfg)
    upper = hankel1_imag_axis(t, kk + 1, cfg)
    return (lower - upper) / 2


def _hankel1_imag_axis_once(t, kappa, cfg: QuadratureConfig):
    """Single-pass hankel1_imag_axis without the dual-precision replay.

    Remainder quadratures evaluate this thousands of times per integral;
    they own the end-to-end accuracy check (their results are compared
    against oracle-minus-partial-sum in the tests), so the per-node
    validation would only double the cost.
    """
    kc = complex(kappa)
    guard = int(math.ceil(_axis_guard_digits(float(t), kc.real))) + 8
    with mp.extradps(guard):
        order = 1j * mp.mpf(t) + mp.mpmathify(kappa)
        val = 2 / (mp.pi * 1j) * mp.exp(-1j * mp.pi * order / 2) \
            * _k_bessel(order, mp.mpf(t), cfg)
    return +val


def _hankel1_prime_imag_axis_once(t, kappa, cfg: QuadratureConfig):
    kk = mp.mpmathify(kappa)
    return (_hankel1_imag_axis_once(t, kk - 1, cfg)
            - _hankel1_imag_axis_once(t, kk + 1, cfg)) / 2


def _lower_gamma_series(a, w_val, extra):
    """gamma(a, w) = w^a sum_k (-w)^k / (k! (a+k)); converges everywhere,
    cancellation ~ e^|w| absorbed by the precision bump."""
    with mp.extradps(extra):
        total = mp.mpc(0)
        term = mp.mpc(1)
        k = 0
        while True:
            total += term / (a + k)
            k += 1
            term *= -w_val / k
            if abs(term) < mp.mpf(10) ** (-mp.dps) * (1 + abs(total)):
                break
            if k > 10000:
                raise NonConvergence("lower gamma series stalled")
        return +total


def _gamma_at(a, q: SheetedComplex, cfg: QuadratureConfig):
    """Principal-sheet upper incomplete gamma at angle in (-pi, pi]."""
    theta = q.theta

    if abs(theta) < math.pi - 1e-12:
        # for Re a < 1 the factor (w+s)^(a-1) spikes where the ray passes
        # the origin; the spike-to-result ratio grows like csc(pi-|theta|)^(1-Re a)
        gap = math.pi - abs(theta)
        spike = max(0.0, (1 - float(mp.re(a)))
                    * -math.log10(min(1.0, math.sin(gap))))

        def build():
            wv = q.value()
            tail = integrate_decaying(
                lambda s: mp.power(wv + s, a - 1) * mp.exp(-s), cfg,
                start=max(1.0, float(q.r) / 8))
            return mp.exp(-wv) * tail
        return _self_validated(build, cfg,
                               4 + math.log10(1 + float(q.r)) + spike,
                               "upper_incomplete_gamma")

    # on the cut: the boundary value continued from arg w < pi
    x = q.r
    cancel = float(x) / math.log(10) + 8
    a_int = (abs(mp.im(a)) < 1e-12 and
             abs(mp.re(a) - mp.nint(mp.re(a))) < 1e-12)
    if not a_int:
        def build():
            wv = q.power(1)  # |w| e^(i pi) with the sheet's branch of powers
            lower = q.power(a) * _lower_gamma_series(mp.mpmathify(a), wv,
                                                     int(cancel))
            return mp.gamma(mp.mpmathify(a)) - lower
        return _self_validated(build, cfg, cancel, "upper_incomplete_gamma")

    n = int(mp.nint(mp.re(a)))
    if n >= 1:
        # Gamma(n, w) = (n-1)! e^(-w) sum_(k<n) w^k / k!  (entire)
        def build():
            wv = q.value()
            s = mp.mpc(0)
            for k in range(n):
                s += wv ** k / mp.factorial(k)
            return mp.factorial(n - 1) * mp.exp(-wv) * s
        return _self_validated(build, cfg, cancel, "upper_incomplete_gamma")

    # integer a <= 0 on the cut: start from Gamma(0, x e^(i pi)) = -Ei(x) - i pi
    # and recurse downward; each division peels the leading asymptotic term
    steps = -n
    cancel_down = cancel + steps * math.log10(max(float(x), 2.0)) + 10

    def build():
        xx = mp.mpf(x)
        ei = mp.euler + mp.log(xx)
        term = mp.mpf(1)
        k = 0
        while True:
            k += 1
            term *= xx / k
            piece = term / k
            ei += piece
            if piece < mp.mpf(10) ** (-mp.dps) * (1 + abs(ei)):
                break
        side = 1 if theta > 0 else -1
        val = -ei - side * 1j * mp.pi  # Gamma(0, w) on this side of the cut
        wv = q.power(1)
        e_minus_w = mp.exp(-wv)
        for cur_a in range(0, n, -1):
            val = (val - q.power(cur_a - 1) * e_minus_w) / (cur_a - 1)
        return val

    return _self_validated(build, cfg, cancel_down, "upper_incomplete_gamma")


def upper_incomplete_gamma(a, w: SheetedComplex, cfg: QuadratureConfig = None):
    """Gamma(a, w) on the sheet w declares: principal values by the ray
    integral (or boundary formulas on the cut), other sheets by
    Gamma(a, w e^(2 pi i m)) = e^(2 pi i m a) Gamma(a, w) + (1 - e^(2 pi i m a)) Gamma(a)."""
    cfg = _cfg_or_default(cfg)
    if not isinstance(w, SheetedComplex):
        raise TypeError("w must be a SheetedComplex")
    theta = w.theta
    m = math.floor((math.pi - theta) / (2 * math.pi) + 1e-9)
    if m:
        principal = w.rotate(turns_of_pi=2 * m)
    else:
        principal = w
    base = _gamma_at(mp.mpmathify(a), principal, cfg)
    if m == 0:
        return base

    a_val = mp.mpmathify(a)
    a_int = (abs(mp.im(a_val)) < 1e-12 and
             abs(mp.re(a_val) - mp.nint(mp.re(a_val))) < 1e-12)
    if a_int:
        n = int(mp.nint(mp.re(a_val)))
        if n >= 1:
            return base  # entire in w, no monodromy
        # limit of (1 - e^(2 pi i m a)) Gamma(a) as a -> n <= 0
        jump = -2j * mp.pi * (-m) * (-1) ** (-n) / mp.factorial(-n)
        return base + jump
    phase = mp.exp(-2j * mp.pi * m * a_val)
    return phase * base + (1 - phase) * mp.gamma(a_val)
