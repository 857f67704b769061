"""Incomplete gamma functions Gamma(z,w), g(z,w), G(z,w) for complex z, w.

Regimes: a Pochhammer series and a continued fraction on the lower side
(|w| below |z|), an asymptotic series and a second continued fraction on the
upper side, uniform asymptotics in the transition zone, a Nielsen stepping
expansion, and an adaptive-quadrature fallback.  Dispatch thresholds follow
fixed ratios of |w|/|z| so the choice is testable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mpf, mpc

from .errors import AsymptoticFloor, DomainError, NonConvergence, PoleError, StepTooLarge
from .loggamma import gamma_raw, log_gamma_raw
from .powseries import ps_div, ps_deriv, ps_eval, ps_exp, ps_mul, ps_sqrt1p, ps_trim
from .precision import CERTIFIED, HEURISTIC, ComplexValue, PrecisionContext, DEFAULT_CTX

# dispatch thresholds (ratios of |w| to |z|)
LOWER_RATIO = 0.8
UPPER_RATIO = 1.25
UPPER_OFFSET = 10.0
TEMME_MIN_Z = 20.0
TEMME_DISC = 0.5

METHODS = (
    "pochhammer_series",
    "alternating_series",
    "cf_lower",
    "cf_upper",
    "asymptotic",
    "temme",
    "nielsen",
    "quadrature",
)


def _is_nonpositive_int(z: mpc) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == mpmath.floor(z.real)


def g_pochhammer_series(z, w, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """g(z,w) = e^-w sum_j w^j / (z)_{j+1}."""
    z, w = mpc(z), mpc(w)
    if _is_nonpositive_int(z):
        raise PoleError("(z)_{j+1} vanishes for non-positive integer z")
    with ctx.workdps(5):
        tol = mpf(10) ** (-(ctx.digits + 2))
        term = 1 / z
        acc = term
        max_j = 4 * ctx.digits
        for j in range(1, max_j + 1):
            term = term * w / (z + j)
            acc += term
            if abs(term) < tol * abs(acc):
                val = mpmath.exp(-w) * acc
                err = float(abs(val)) * 10.0 ** (-ctx.digits)
                return ComplexValue.from_mpc(val, err, HEURISTIC)
        raise NonConvergence("Pochhammer series: no convergence within %d terms" % max_j)


def g_alternating_series(z, w, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """g(z,w) = sum_j (-1)^j w^j / (j! (z+j)); guard digits cover the
    e^-w-style cancellation for |w| > 1."""
    z, w = mpc(z), mpc(w)
    aw = abs(w)
    guard = 5 + (math.ceil(2 * float(aw) / math.log(10)) if aw > 1 else 0)
    with ctx.workdps(guard):
        tol = mpf(10) ** (-(ctx.digits + 2))
        acc = mpc(0)
        term = mpc(1)  # (-w)^j / j!
        scale = mpf(0)
        for j in range(0, 4 * ctx.digits + int(2 * aw) + 10):
            if z + j == 0:
                raise PoleError("alternating series pole at z+j=0, j=%d" % j)
            piece = term / (z + j)
            acc += piece
            scale = max(scale, abs(piece))
            if j > abs(w) and abs(piece) < tol * max(abs(acc), scale * tol):
                break
            term = term * (-w) / (j + 1)
        err = float(scale) * 10.0 ** (-(ctx.digits + guard - 5)) + float(abs(acc)) * 10.0 ** (
            -ctx.digits
        )
        return ComplexValue.from_mpc(acc, err, HEURISTIC)


def _lentz(b0, a_fn, b_fn, digits: int, max_iter: int):
    """Modified Lentz evaluation of b0 + K(a_j / b_j)."""
    tiny = mpf(10) ** (-2 * mpmath.mp.dps)
    f = b0 if b0 != 0 else tiny
    c, d = f, mpc(0)
    tol = mpf(10) ** (-(digits + 2))
    for j in range(1, max_iter + 1):
        aj, bj = a_fn(j), b_fn(j)
        d = bj + aj * d
        if d == 0:
            d = tiny
        c = bj + aj / c
        if c == 0:
            c = tiny
        d = 1 / d
        delta = c * d
        f *= delta
        if abs(delta - 1) < tol:
            return f
    raise NonConvergence("continued fraction: no convergence within %d terms" % max_iter)


def g_continued_fraction(z, w, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """Lower continued fraction for g(z,w), Re z > 0."""
    z, w = mpc(z), mpc(w)
    if z.real <= 0:
        raise DomainError("lower continued fraction requires Re z > 0")
    with ctx.workdps(5):
        # displayed fraction: partial numerators -(z+j)w at odd depth 2j+1,
        # j*w at even depth 2j; partial denominators z+k at depth k
        def a_fn(j):
            if j % 2 == 1:
                return -(z + (j - 1) // 2) * w
            return (j // 2) * w

        def b_fn(j):
            return z + j

        f = _lentz(z, a_fn, b_fn, ctx.digits, 6 * ctx.digits)
        val = mpmath.exp(-w) / f
        err = float(abs(val)) * 10.0 ** (-ctx.digits)
    return ComplexValue.from_mpc(val, err, HEURISTIC)


def G_asymptotic(z, w, M: int | None = None, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """G(z,w) ~ (e^-w / w) sum_{j<M} (1-z)_j / (-w)^j with next-term bound."""
    z, w = mpc(z), mpc(w)
    with ctx.workdps(5):
        tol_abs = mpf(10) ** (-(ctx.digits + 2))
        term = mpc(1)
        acc = mpc(0)
        best = mpmath.inf
        j = 0
        limit = M if M is not None else 6 * ctx.digits
        while j < limit:
            acc += term
            nxt = term * (1 - z + j) / (-w)
            if abs(nxt) >= abs(term) and abs(term) > tol_abs * abs(acc):
                if M is None and abs(term) > tol_abs * max(abs(acc), mpf(1)):
                    raise AsymptoticFloor(
                        "asymptotic floor %.3g above target at j=%d" % (float(abs(term)), j)
                    )
                break
            term = nxt
            j += 1
            if abs(term) < tol_abs * abs(acc):
                acc += term
                break
        prefac = mpmath.exp(-w) / w
        val = prefac * acc
        # eps_M estimated via |(1-z)_M / (-w)^M| * |G(z-M, w)| bound
        denom = max(float(w.real - z.real + j + 1), 1e-9)
        eps = abs(term) * mpmath.exp(-w.real) / denom if w.real > 0 else abs(term * prefac)
        err = float(eps + abs(val) * mpf(10) ** (-ctx.digits))
    return ComplexValue.from_mpc(val, err, HEURISTIC)


def G_continued_fraction(z, w, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """Upper continued fraction for G(z,w), Re w > 0."""
    z, w = mpc(z), mpc(w)
    if w.real <= 0:
        raise DomainError("upper continued fraction requires Re w > 0")
    with ctx.workdps(5):

        def a_fn(j):
            if j % 2 == 1:
                return (j + 1) // 2 - z
            return j // 2

        def b_fn(j):
            return mpc(1) if j % 2 == 1 else w

        f = _lentz(w, a_fn, b_fn, ctx.digits, 6 * ctx.digits)
        val = mpmath.exp(-w) / f
        err = float(abs(val)) * 10.0 ** (-ctx.digits)
    return ComplexValue.from_mpc(val, err, HEURISTIC)


# ---------------------------------------------------------------------------
# Temme uniform asymptotics

TEMME_MAX_TERMS = 9

_temme_series_cache: dict = {}
_gamma_star_cache: dict = {}


def _gamma_star_coeffs(n_max: int, dps: int):
    """gamma_n of Gamma*(z) = sum (-1)^n gamma_n z^-n, generated from the
    Stirling series (exponentiate sum B_2j/((2j)(2j-1)) x^(2j-1))."""
    key = (n_max, dps)
    hit = _gamma_star_cache.get(key)
    if hit is not None:
        return hit
    from .bernoulli import bernoulli_number

    with mpmath.workdps(dps + 10):
        ser = [mpf(0)] * (n_max + 1)
        for j in range(1, (n_max + 2) // 2 + 1):
            if 2 * j - 1 <= n_max:
                b = bernoulli_number(2 * j)
                ser[2 * j - 1] = mpf(b.numerator) / b.denominator / ((2 * j) * (2 * j - 1))
        expser = ps_exp(ser, n_max)
        gammas = [mpf(-1) ** n * expser[n] for n in range(n_max + 1)]
    _gamma_star_cache[key] = gammas
    return gammas


def _temme_series(dps: int, n_coeffs: int, order: int):
    """Series in v = lambda-1 of eta/v and c_0..c_{n_coeffs-1}.

    c_0, c_1 from their closed forms (removable singularities cancelled in
    series arithmetic), higher ones by the recurrence
    eta c_n = dc_{n-1}/deta + (eta/v) gamma_n."""
    key = (dps, n_coeffs, order)
    hit = _temme_series_cache.get(key)
    if hit is not None:
        return hit
    gammas = _gamma_star_coeffs(n_coeffs + 1, dps)
    with mpmath.workdps(dps + 14):
        one = mpf(1)
        # q(v) = 2(v - log1p(v))/v^2 = 2 sum_{k>=0} (-1)^k v^k/(k+2)
        q = [2 * one * (-1) ** k / (k + 2) for k in range(order + 7)]
        pad = order + 6
        s = ps_sqrt1p([x - (1 if i == 0 else 0) for i, x in enumerate(q)], pad)  # eta/v
        s_inv = ps_div([one], s, pad)
        c0 = [-s_inv[k] for k in range(pad + 1)]
        c0[0] = one - s_inv[0]
        assert abs(c0[0]) < mpf(10) ** (-dps)
        c0 = ps_trim(c0[1:], pad)
        # c1 = (s^-3 - 1 - v - v^2/12)/v^3
        s3_inv = ps_div([one], ps_mul(ps_mul(s, s, pad), s, pad), pad)
        num = list(s3_inv)
        num[0] -= 1
        num[1] -= 1
        num[2] -= one / 12
        for i in range(3):
            assert abs(num[i]) < mpf(10) ** (-dps + 4)
        c1 = ps_trim(num[3:], pad)
        coeff_series = [c0, c1]
        deta_dv = ps_trim(ps_deriv([mpf(0)] + s[:pad]), pad)  # d(v s)/dv
        for n in range(2, n_coeffs):
            prev = coeff_series[-1]
            dprev_dv = ps_trim(ps_deriv(prev), pad)
            dprev_deta = ps_div(dprev_dv, deta_dv, pad)
            num_n = [dprev_deta[k] + gammas[n] * s[k] for k in range(pad + 1)]
            div_s = ps_div(num_n, s, pad)
            assert abs(div_s[0]) < mpf(10) ** (-dps + 8), "c_%d series shift failed" % n
            coeff_series.append(ps_trim(div_s[1:], pad))
        result = (ps_trim(s, order), [ps_trim(cs, order) for cs in coeff_series])
    _temme_series_cache[key] = result
    return result


def _temme_coeffs(lam: mpc, n_coeffs: int):
    """eta and [c_0 ... c_{n_coeffs-1}] at lambda = w/z (|lambda-1| <~ 0.6)."""
    v = lam - 1
    av = abs(v)
    if av > mpf("0.7"):
        raise DomainError("Temme coefficient series needs |w/z - 1| <= 0.7")
    dps = mpmath.mp.dps
    ratio = max(float(av), 0.05)
    order = min(int((dps + 8) / max(0.15, -math.log10(ratio))) + n_coeffs + 8, 700)
    s_ser, coeff_series = _temme_series(dps, n_coeffs, order)
    eta = v * ps_eval(s_ser, v)
    return eta, [ps_eval(cs, v) for cs in coeff_series]


def erfc_complex(x) -> mpc:
    """erfc for complex x at current precision.

    Small |x|: Maclaurin series with cancellation guard.  Otherwise routed
    through the upper continued fraction for Gamma(1/2, x^2); the reflection
    erfc(-x) = 2 - erfc(x) keeps Re x >= 0.
    """
    x = mpc(x)
    if x.real < 0:
        return 2 - erfc_complex(-x)
    ax = abs(x)
    if ax <= 3:
        guard = int(float(ax * ax) / math.log(10)) + 8
        with mpmath.workdps(mpmath.mp.dps + guard):
            acc = mpc(0)
            term = mpc(x)
            x2 = x * x
            j = 0
            tol = mpf(10) ** (-(mpmath.mp.dps))
            while True:
                acc += term / (2 * j + 1)
                term = term * (-x2) / (j + 1)
                j += 1
                if abs(term) < tol and j > 4:
                    break
            res = 1 - 2 / mpmath.sqrt(mpmath.pi) * acc
        return +res
    w = x * x
    digits = max(10, mpmath.mp.dps - 5)
    ctx = PrecisionContext(digits, 10)
    gv = G_continued_fraction(mpf(1) / 2, w, ctx) if w.real > 0 else None
    if gv is None:
        # Re(x^2) <= 0 with |x| > 3: still use the CF, it converges for |arg w| < pi
        with mpmath.workdps(mpmath.mp.dps + 10):

            def a_fn(j):
                return (j + 1) // 2 - mpf(1) / 2 if j % 2 == 1 else j // 2

            def b_fn(j):
                return mpc(1) if j % 2 == 1 else w

            f = _lentz(w, a_fn, b_fn, digits, 40 * digits)
            gval = mpmath.exp(-w) / f
    else:
        gval = gv.value
    # Gamma(1/2, x^2) = x * G(1/2, x^2) for Re x > 0
    return x * gval / mpmath.sqrt(mpmath.pi)


def temme_Q(z, w, n_terms: int | None = None, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """Gamma(z,w) = Q(z,w) Gamma(z) by uniform asymptotics in the transition
    zone; err_kind is always heuristic (no worked-out remainder).

    With n_terms=None the R_z series is truncated adaptively at its smallest
    term; the reported err carries that floor."""
    z, w = mpc(z), mpc(w)
    with ctx.workdps(10):
        lam = w / z
        n_coeffs = n_terms if n_terms is not None else TEMME_MAX_TERMS
        eta, coeffs = _temme_coeffs(lam, n_coeffs)
        arg = eta * mpmath.sqrt(z / 2)
        q_erfc = erfc_complex(arg) / 2
        # e^{-z eta^2/2} = e^{-(w - z - z log(w/z))}
        expo = mpmath.exp(-(w - z - z * mpmath.log(lam)))
        series = mpc(0)
        zp = mpc(1)
        floor = mpmath.inf
        used = 0
        for cval in coeffs:
            term = cval / zp
            size = abs(term)
            if used >= 2 and size > floor and n_terms is None:
                break  # asymptotic floor reached
            series += term
            floor = min(floor, size) if used else size
            zp *= z
            used += 1
        r_scale = expo / mpmath.sqrt(2 * mpmath.pi * z)
        r_val = r_scale * series
        q = q_erfc + r_val
        gam = gamma_raw(z)
        val = q * gam
        # floor of the asymptotic series, scaled like one more z-division
        err = float(abs(r_scale) * floor / abs(z) * abs(gam) + abs(val) * mpf(10) ** (-ctx.digits))
    return ComplexValue.from_mpc(val, err, HEURISTIC)


def nielsen_step(gamma_at_w, z, w, d, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """gamma(z, w+d) from gamma(z, w) by Nielsen's expansion.

    Uses the stable forward recursion for a_j with beta_j(d) summed directly;
    the inverted beta recursion is numerically unstable and never used.
    """
    z, w, d = mpc(z), mpc(w), mpc(d)
    if abs(d) >= abs(w):
        raise StepTooLarge("nielsen_step requires |d| < |w|")
    gamma_at_w = gamma_at_w.value if isinstance(gamma_at_w, ComplexValue) else mpc(gamma_at_w)
    if d == 0:
        return ComplexValue.from_mpc(gamma_at_w, 0.0, HEURISTIC)
    with ctx.workdps(8):
        tol = mpf(10) ** (-(ctx.digits + 2))

        def beta(j):
            acc = mpc(1)
            term = mpc(1)
            m = 0
            while True:
                term = term * d / (j + 2 + m)
                acc += term
                m += 1
                if abs(term) < mpf(10) ** (-(mpmath.mp.dps + 2)):
                    return acc

        a = -mpmath.expm1(-d)  # a_0 = 1 - e^-d
        acc = a
        scale = abs(a)
        max_j = 8 * ctx.digits
        prev = abs(a)
        for j in range(0, max_j):
            a = a * ((z - (j + 1)) / w) * (1 - 1 / beta(j))
            acc += a
            sz = abs(a)
            scale = max(scale, sz)
            if sz < tol * max(abs(acc), scale * mpf(10) ** (-3)):
                break
            if j > 24 and sz > prev * mpf("1.05"):
                raise NonConvergence("nielsen terms stopped decaying at j=%d" % j)
            prev = sz
        else:
            raise NonConvergence("nielsen expansion: %d terms without convergence" % max_j)
        corr = w ** (z - 1) * mpmath.exp(-w) * acc
        val = gamma_at_w + corr
        err = float(abs(corr)) * 10.0 ** (-ctx.digits) + float(scale * abs(w ** (z - 1) * mpmath.exp(-w))) * 10.0 ** (
            -(ctx.digits + 2)
        )
    return ComplexValue.from_mpc(val, err, HEURISTIC)


def g_quadrature(z, w, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """Fallback: adaptive quadrature of g(z,w) = int_0^1 e^{-wt} t^{z-1} dt
    at doubled working precision; recurrence lifts Re z above 1/2 first."""
    z, w = mpc(z), mpc(w)
    if _is_nonpositive_int(z):
        raise PoleError("g has poles at non-positive integer z")
    with ctx.workdps(ctx.working_digits):  # doubled working precision
        val = _g_quad_raw(z, w, ctx.digits)
        err = float(abs(val)) * 10.0 ** (-ctx.digits)
    return ComplexValue.from_mpc(val, err, HEURISTIC)


def _g_quad_raw(z, w, digits: int) -> mpc:
    if z.real <= 0.5:
        # g(z,w) = (w g(z+1,w) + e^-w)/z
        return (w * _g_quad_raw(z + 1, w, digits) + mpmath.exp(-w)) / z
    f = lambda t: mpmath.exp(-w * t) * t ** (z - 1)
    return mpmath.quad(f, [0, 1])


@dataclass
class IncGammaTriple:
    """G, g and Gamma_upper consistent with G + g = w^-z Gamma(z)."""

    G: ComplexValue
    g: ComplexValue
    Gamma_upper: ComplexValue
    method: str


def _dispatch_method(z: mpc, w: mpc) -> str:
    az, aw = abs(z), abs(w)
    if z.real > 0 and aw <= LOWER_RATIO * az:
        return "lower"
    if w.real > 0 and aw >= UPPER_RATIO * az + UPPER_OFFSET:
        return "upper"
    if az >= TEMME_MIN_Z and az > 0 and abs(w / z - 1) <= TEMME_DISC and z.real > -0.1 * az:
        return "temme"
    return "quadrature"


def _near_nonpositive_int(z: mpc, tol=0.05) -> bool:
    if abs(z.imag) > tol or z.real > tol:
        return False
    return abs(z.real - mpmath.nint(z.real)) <= tol


def G_quadrature(z, w, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """G(z,w) = int_1^inf e^{-wx} x^{z-1} dx by quadrature (Re w > 0);
    entire in z, so safe at non-positive integers."""
    z, w = mpc(z), mpc(w)
    if w.real <= 0:
        raise DomainError("G integral requires Re w > 0")
    with ctx.workdps(ctx.working_digits):
        val = mpmath.quad(lambda x: mpmath.exp(-w * x) * x ** (z - 1), [1, mpmath.inf])
        err = float(abs(val)) * 10.0 ** (-ctx.digits)
    return ComplexValue.from_mpc(val, err, HEURISTIC)


def G_value(z, w, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """G(z,w) alone, with escalation when a method cannot reach the target.

    Unlike inc_gamma this stays defined at non-positive integer z (where the
    g side has poles but G is entire)."""
    z, w = mpc(z), mpc(w)
    region = _dispatch_method(z, w)
    with ctx.workdps(8):
        if region == "lower" and not _near_nonpositive_int(z):
            try:
                if abs(w) <= 0.35 * abs(z) or abs(w) < 2 * ctx.digits:
                    gv = g_pochhammer_series(z, w, ctx)
                else:
                    gv = g_continued_fraction(z, w, ctx)
            except NonConvergence:
                gv = g_continued_fraction(z, w, ctx)
            wz_gamma = mpmath.exp(log_gamma_raw(z) - z * mpmath.log(w))
            return ComplexValue.from_mpc(wz_gamma - gv.value, gv.err, HEURISTIC)
        if region == "upper":
            try:
                return G_asymptotic(z, w, None, ctx)
            except AsymptoticFloor:
                return G_continued_fraction(z, w, ctx)
        if region == "temme" and not _near_nonpositive_int(z):
            gam_upper = temme_Q(z, w, None, ctx)
            w_pow = mpmath.exp(-z * mpmath.log(w))
            val = w_pow * gam_upper.value
            err = gam_upper.err * float(abs(w_pow))
            target = float(abs(val)) * 10.0 ** (-ctx.digits) + 10.0 ** (-2 * ctx.digits)
            if err <= 10 * target:
                return ComplexValue.from_mpc(val, err, HEURISTIC)
            # Temme floor insufficient: escalate to a continued fraction
            try:
                if z.real > 0:
                    gv = g_continued_fraction(z, w, ctx)
                    wz_gamma = mpmath.exp(log_gamma_raw(z) - z * mpmath.log(w))
                    return ComplexValue.from_mpc(wz_gamma - gv.value, gv.err, HEURISTIC)
            except NonConvergence:
                pass
            try:
                if w.real > 0:
                    return G_continued_fraction(z, w, ctx)
            except NonConvergence:
                pass
            return ComplexValue.from_mpc(val, err, HEURISTIC)
        # fallback: direct G quadrature when possible, else the g route
        if w.real > 0:
            return G_quadrature(z, w, ctx)
        gv = g_quadrature(z, w, ctx)
        wz_gamma = mpmath.exp(log_gamma_raw(z) - z * mpmath.log(w))
        return ComplexValue.from_mpc(wz_gamma - gv.value, gv.err, HEURISTIC)


def inc_gamma(z, w, ctx: PrecisionContext = DEFAULT_CTX, forced_method: str | None = None) -> IncGammaTriple:
    """Dispatching evaluator returning the (G, g, Gamma_upper) triple."""
    z, w = mpc(z), mpc(w)
    if _is_nonpositive_int(z):
        raise PoleError("inc_gamma requires z not a non-positive integer")
    with ctx.workdps(8):
        log_gam = log_gamma_raw(z)
        wz_gamma = mpmath.exp(log_gam - z * mpmath.log(w))  # w^-z Gamma(z)

        if forced_method is not None:
            g_or_G = _forced(z, w, ctx, forced_method)
            method = forced_method
        else:
            region = _dispatch_method(z, w)
            method = region
            if region == "lower":
                # series when the term count estimate is modest, else CF
                try:
                    if abs(w) <= 0.35 * abs(z) or abs(w) < 2 * ctx.digits:
                        g_or_G = ("g", g_pochhammer_series(z, w, ctx))
                        method = "pochhammer_series"
                    else:
                        g_or_G = ("g", g_continued_fraction(z, w, ctx))
                        method = "cf_lower"
                except NonConvergence:
                    g_or_G = ("g", g_continued_fraction(z, w, ctx))
                    method = "cf_lower"
            elif region == "upper":
                try:
                    g_or_G = ("G", G_asymptotic(z, w, None, ctx))
                    method = "asymptotic"
                except AsymptoticFloor:
                    g_or_G = ("G", G_continued_fraction(z, w, ctx))
                    method = "cf_upper"
            elif region == "temme":
                gam_upper = temme_Q(z, w, None, ctx)
                g_or_G = ("Gamma", gam_upper)
            else:
                g_or_G = ("g", g_quadrature(z, w, ctx))
                method = "quadrature"

        kind_tag, cv = g_or_G
        if kind_tag == "g":
            g_val = cv.value
            G_val = wz_gamma - g_val
            gam_val = mpmath.exp(z * mpmath.log(w)) * G_val
            base_err = cv.err
        elif kind_tag == "G":
            G_val = cv.value
            g_val = wz_gamma - G_val
            gam_val = mpmath.exp(z * mpmath.log(w)) * G_val
            base_err = cv.err
        else:
            gam_val = cv.value
            G_val = mpmath.exp(-z * mpmath.log(w)) * gam_val
            g_val = wz_gamma - G_val
            base_err = cv.err * float(abs(mpmath.exp(-z * mpmath.log(w)))) if cv.err else 0.0

        err = base_err + float(abs(wz_gamma)) * 10.0 ** (-ctx.digits)
        triple = IncGammaTriple(
            G=ComplexValue.from_mpc(G_val, err, HEURISTIC),
            g=ComplexValue.from_mpc(g_val, err, HEURISTIC),
            Gamma_upper=ComplexValue.from_mpc(gam_val, err * float(abs(w) ** float(z.real)) if abs(w) > 0 else err, HEURISTIC),
            method=method,
        )
    return triple


def _forced(z, w, ctx, method):
    if method == "pochhammer_series":
        return ("g", g_pochhammer_series(z, w, ctx))
    if method == "alternating_series":
        return ("g", g_alternating_series(z, w, ctx))
    if method == "cf_lower":
        return ("g", g_continued_fraction(z, w, ctx))
    if method == "cf_upper":
        return ("G", G_continued_fraction(z, w, ctx))
    if method == "asymptotic":
        return ("G", G_asymptotic(z, w, None, ctx))
    if method == "temme":
        return ("Gamma", temme_Q(z, w, None, ctx))
    if method == "quadrature":
        return ("g", g_quadrature(z, w, ctx))
    raise ValueError("unknown method %r" % method)


def lower_gamma(z, w, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """gamma(z,w) = w^z g(z,w) via the dispatcher."""
    z, w = mpc(z), mpc(w)
    triple = inc_gamma(z, w, ctx)
    with ctx.workdps(8):
        val = mpmath.exp(z * mpmath.log(w)) * triple.g.value
        err = triple.g.err * float(abs(mpmath.exp(z * mpmath.log(w))))
    return ComplexValue.from_mpc(val, err, HEURISTIC)
