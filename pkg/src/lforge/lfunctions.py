"""L-function data model and smoothed approximate functional equation.

An LFunction bundles the functional-equation tuple (Q, {kappa_j}, {lambda_j},
omega, poles) with a Dirichlet-coefficient source.  Two evaluators:

* evaluate_afe_a1 - the single-Gamma-factor formula via incomplete gamma
  sums, with a pair of half-kappa factors folded through Legendre
  duplication when possible;
* evaluate_afe_riemann_sum - the general-a route computing f1/f2 as Riemann
  sums over the Mellin line, with an optional Gaussian concentrator in g.

The free parameter c trades convergence speed against cancellation; the
working precision budgets ceil(c/ln10) + log10(2+|s|) guard digits for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf, mpc

from .characters import DirichletCharacter, gauss_sum
from .errors import (
    BadReduction,
    CoefficientShortfall,
    ContourTooLow,
    DomainError,
    NotSelfDual,
    PoleError,
    PrecisionExceeded,
    StepTooCoarse,
)
from .incgamma import G_value
from .loggamma import log_gamma_raw
from .precision import CERTIFIED, HEURISTIC, ComplexValue, PrecisionContext, DEFAULT_CTX

LN10 = math.log(10)


def _frac_mpf(x) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


@dataclass(frozen=True)
class QFactor:
    """Q = a * sqrt(b) * pi^(p/2), or a decimal literal for ingested data."""

    a: Fraction = Fraction(1)
    sqrt_of: int = 1
    pi_half_pow: int = 0
    literal: str | None = None

    def value(self) -> mpf:
        if self.literal is not None:
            return mpf(self.literal)
        v = _frac_mpf(self.a)
        if self.sqrt_of != 1:
            v = v * mpmath.sqrt(self.sqrt_of)
        if self.pi_half_pow:
            v = v * mpmath.pi ** (mpf(self.pi_half_pow) / 2)
        return v


@dataclass(frozen=True)
class GammaFactorSpec:
    kappa: Fraction
    lam_re: object  # Fraction or decimal string
    lam_im: object = Fraction(0)

    def kappa_mpf(self) -> mpf:
        return _frac_mpf(self.kappa)

    def lam_mpc(self) -> mpc:
        return mpc(_frac_mpf(self.lam_re), _frac_mpf(self.lam_im))


@dataclass
class FunctionalEquationData:
    """(Q, {kappa_j}, {lambda_j}, omega, poles) of the completed function."""

    q_factor: QFactor
    gammas: tuple  # of GammaFactorSpec
    omega_fn: object  # callable() -> mpc at current precision
    poles: tuple = ()  # of (s_k exact, residue_fn() -> mpc)
    self_dual: bool = True

    @property
    def degree(self) -> int:
        return len(self.gammas)

    def omega(self) -> mpc:
        w = self.omega_fn()
        return mpc(w)


class CoefficientSource:
    """Supplier of Dirichlet coefficients b(n) with growth metadata."""

    kind = "abstract"
    sigma1 = 1.0

    def bound(self, n: int) -> float:
        raise NotImplementedError

    def realize(self, n_max: int) -> list:
        """[b(1), ..., b(n_max)] at the current mpmath precision."""
        raise NotImplementedError


class OnesSource(CoefficientSource):
    kind = "zeta"
    sigma1 = 1.0

    def bound(self, n):
        return 1.0

    def realize(self, n_max):
        return [mpc(1)] * n_max


class DirichletSource(CoefficientSource):
    kind = "dirichlet"
    sigma1 = 1.0

    def __init__(self, chi: DirichletCharacter):
        self.chi = chi

    def bound(self, n):
        return 1.0

    def realize(self, n_max):
        return [self.chi.value_mpc(n) for n in range(1, n_max + 1)]


def tau_coefficients(n_max: int) -> list:
    """Ramanujan tau(n) for n <= n_max, exact integers.

    Delta = q prod (1-q^n)^24 = q (eta-cube series)^8 with Jacobi's sparse
    eta^3 = sum (-1)^k (2k+1) q^(k(k+1)/2); eight sparse multiplies keep the
    cost near n_max * sqrt(n_max)."""
    if n_max < 1:
        return []
    if n_max > 10**7:
        raise ValueError("n_max capped at 1e7")
    m = n_max  # coefficients of q-expansion up to q^(n_max-1) after the shift
    sparse = []
    k = 0
    while k * (k + 1) // 2 < m:
        sparse.append((k * (k + 1) // 2, (-1) ** k * (2 * k + 1)))
        k += 1
    acc = [0] * m
    acc[0] = 1
    for _ in range(8):
        new = [0] * m
        for e, cval in sparse:
            if e >= m:
                break
            if cval == 1:
                for i in range(m - e):
                    if acc[i]:
                        new[i + e] += acc[i]
            elif cval == -1:
                for i in range(m - e):
                    if acc[i]:
                        new[i + e] -= acc[i]
            else:
                for i in range(m - e):
                    if acc[i]:
                        new[i + e] += cval * acc[i]
        acc = new
    return acc  # tau(n) = acc[n-1]


class CuspFormSource(CoefficientSource):
    """Hecke eigenform coefficients, a_n normalized by n^((k-1)/2)."""

    kind = "cusp_form"
    sigma1 = 1.0

    def __init__(self, weight: int, an: list | None = None):
        self.weight = weight
        self._an = an  # exact integers; default tau generated on demand
        self._cache_len = len(an) if an else 0

    def _ensure(self, n_max):
        if self._an is None or self._cache_len < n_max:
            if self.weight == 12 and self._an is None or self.weight == 12 and self._cache_len < n_max:
                self._an = tau_coefficients(max(n_max, 64))
                self._cache_len = len(self._an)
            if self._cache_len < n_max:
                raise CoefficientShortfall(
                    "cusp form source has %d coefficients, needs %d" % (self._cache_len, n_max)
                )

    def bound(self, n):
        # Deligne: |a_n| <= sigma_0(n) n^((k-1)/2); sigma_0(n) <= n
        return float(n)

    def realize(self, n_max):
        self._ensure(n_max)
        ex = mpf(self.weight - 1) / 2
        return [mpc(self._an[n - 1]) / mpf(n) ** ex for n in range(1, n_max + 1)]


def elliptic_ap(ainvs, p: int) -> int:
    """a_p = p + 1 - #E(F_p) by direct point count (good reduction only)."""
    if p >= 10**6:
        raise ValueError("naive point count capped at p < 1e6")
    a1, a2, a3, a4, a6 = ainvs
    if curve_discriminant(ainvs) % p == 0:
        raise BadReduction("p=%d divides the discriminant" % p)
    if p == 2:
        count = 1  # infinity
        for x in range(2):
            for y in range(2):
                if (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)) % 2 == 0:
                    count += 1
        return 2 + 1 - count
    # complete the square: u^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    qr = [0] * p  # chi(n): 1 residue, -1 non-residue, 0 zero
    for u in range(1, (p + 1) // 2 + 1):
        qr[u * u % p] = 1
    chi_sum = 0
    for x in range(p):
        rhs = (4 * x**3 + b2 * x * x + 2 * b4 * x + b6) % p
        if rhs == 0:
            continue
        chi_sum += 1 if qr[rhs] else -1
    return -chi_sum


def curve_discriminant(ainvs) -> int:
    a1, a2, a3, a4, a6 = ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def elliptic_ap_bad(ainvs, p: int) -> int:
    """a_p for p | Delta: p minus the number of smooth points over F_p."""
    a1, a2, a3, a4, a6 = ainvs
    smooth = 1  # infinity is smooth for Weierstrass models
    for x in range(p):
        for y in range(p):
            f = (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)) % p
            if f:
                continue
            fx = (a1 * y - (3 * x * x + 2 * a2 * x + a4)) % p
            fy = (2 * y + a1 * x + a3) % p
            if fx or fy:
                smooth += 1
        # fall through
    return p - smooth


class EllipticSource(CoefficientSource):
    """a_n / sqrt(n) from the Euler product of an elliptic curve."""

    kind = "elliptic"
    sigma1 = 1.0

    def __init__(self, ainvs, conductor: int):
        self.ainvs = tuple(int(a) for a in ainvs)
        self.conductor = conductor
        self.disc = curve_discriminant(self.ainvs)
        self._an: list | None = None

    def _ap(self, p):
        if self.disc % p == 0:
            return elliptic_ap_bad(self.ainvs, p)
        return elliptic_ap(self.ainvs, p)

    def _ensure(self, n_max):
        if self._an is not None and len(self._an) >= n_max + 1:
            return
        size = max(n_max + 1, 64)
        an = [0] * size
        an[1] = 1
        spf = list(range(size))  # smallest prime factor
        for i in range(2, int(size**0.5) + 1):
            if spf[i] == i:
                for j in range(i * i, size, i):
                    if spf[j] == j:
                        spf[j] = i
        for n in range(2, size):
            p = spf[n]
            m = n // p
            if m % p:
                an[n] = an[m] * self._apn_cache(p, 1)
            else:
                # n = p^k * m', handled via prime-power values
                k = 0
                nn = n
                while nn % p == 0:
                    nn //= p
                    k += 1
                an[n] = an[nn] * self._apn_cache(p, k)
        self._an = an

    def _apn_cache(self, p, k):
        if not hasattr(self, "_pp"):
            self._pp = {}
        key = (p, k)
        if key not in self._pp:
            ap = self._pp.get((p, 1))
            if ap is None:
                ap = self._ap(p)
                self._pp[(p, 1)] = ap
            if k == 1:
                self._pp[key] = ap
            else:
                bad = self.disc % p == 0
                prev2, prev1 = 1, ap
                for _ in range(2, k + 1):
                    cur = ap * prev1 - (0 if bad else p * prev2)
                    prev2, prev1 = prev1, cur
                self._pp[key] = prev1
        return self._pp[key]

    def bound(self, n):
        return float(2 * n)  # sigma_0(n) sqrt(n) / sqrt(n) <= d(n) <= 2 sqrt(n) ... safe linear cap

    def realize(self, n_max):
        self._ensure(n_max)
        return [mpc(self._an[n]) / mpmath.sqrt(n) for n in range(1, n_max + 1)]


class FileSource(CoefficientSource):
    kind = "file_backed"

    def __init__(self, rows, sigma1=1.0):
        self.rows = rows  # list of (n, re_str, im_str)
        self.sigma1 = sigma1

    def bound(self, n):
        return max((abs(float(r)) + abs(float(i)) for _, r, i in self.rows[: min(n, 50)]), default=1.0) * max(
            1.0, n**0.5
        )

    def realize(self, n_max):
        if len(self.rows) < n_max:
            raise CoefficientShortfall(
                "file supplies %d coefficients, needs %d" % (len(self.rows), n_max)
            )
        return [mpc(mpf(r), mpf(i)) for _, r, i in self.rows[:n_max]]


@dataclass
class LFunction:
    kind: str
    label: str
    fe: FunctionalEquationData
    coeffs: CoefficientSource

    def __repr__(self):
        return "LFunction(%s)" % self.label


# ---------------------------------------------------------------------------
# construction of the builtin families


def make_zeta() -> LFunction:
    fe = FunctionalEquationData(
        q_factor=QFactor(pi_half_pow=-1),
        gammas=(GammaFactorSpec(Fraction(1, 2), Fraction(0)),),
        omega_fn=lambda: mpc(1),
        poles=((1, lambda: mpc(1)), (0, lambda: mpc(-1))),
        self_dual=True,
    )
    return LFunction("zeta", "zeta", fe, OnesSource())


def make_dirichlet(chi: DirichletCharacter) -> LFunction:
    if not chi.is_primitive or chi.is_principal:
        raise ValueError("AFE data requires a primitive non-principal character")
    q = chi.modulus
    a = chi.parity

    def omega():
        tau = gauss_sum(chi, PrecisionContext(max(15, mpmath.mp.dps - 5), 5)).value
        w = tau / mpmath.sqrt(q)
        if a == 1:
            w = w / mpc(0, 1)
        return w

    fe = FunctionalEquationData(
        q_factor=QFactor(sqrt_of=q, pi_half_pow=-1),
        gammas=(GammaFactorSpec(Fraction(1, 2), Fraction(a, 2)),),
        omega_fn=omega,
        poles=(),
        self_dual=chi.is_real(),
    )
    return LFunction("dirichlet", "dirichlet:%s" % chi.label, fe, DirichletSource(chi))


def make_cusp_form(weight: int = 12, an: list | None = None, label: str | None = None) -> LFunction:
    if weight % 2:
        raise ValueError("weight must be even")
    fe = FunctionalEquationData(
        q_factor=QFactor(a=Fraction(1, 2), pi_half_pow=-2),
        gammas=(GammaFactorSpec(Fraction(1), Fraction(weight - 1, 2)),),
        omega_fn=lambda: mpc((-1) ** (weight // 2)),
        poles=(),
        self_dual=True,
    )
    return LFunction("cusp_form", label or ("tau" if weight == 12 else "cusp%d" % weight), fe, CuspFormSource(weight, an))


BUILTIN_CURVES = {
    11: (0, -1, 1, -10, -20),
    14: (1, 0, 1, 4, -6),
    15: (1, 1, 1, -10, -10),
    17: (1, -1, 1, -1, -14),
    19: (0, 1, 1, -9, -15),
}
# root number of Lambda(s) = -eps Lambda(1-s); all five builtin curves have
# even functional equation (verified against the Dirichlet series in tests)
BUILTIN_EPS = {11: -1, 14: -1, 15: -1, 17: -1, 19: -1}


def make_elliptic(conductor: int, eps: int | None = None, ainvs=None) -> LFunction:
    if ainvs is None:
        if conductor not in BUILTIN_CURVES:
            raise ValueError("no builtin curve of conductor %d; pass ainvs" % conductor)
        ainvs = BUILTIN_CURVES[conductor]
    if eps is None:
        eps = BUILTIN_EPS.get(conductor)
        if eps is None:
            raise ValueError("sign eps required for non-builtin curves")
    fe = FunctionalEquationData(
        q_factor=QFactor(a=Fraction(1, 2), sqrt_of=conductor, pi_half_pow=-2),
        gammas=(GammaFactorSpec(Fraction(1), Fraction(1, 2)),),
        omega_fn=lambda: mpc(-eps),
        poles=(),
        self_dual=True,
    )
    return LFunction("elliptic", "elliptic:%d" % conductor, fe, EllipticSource(ainvs, conductor))


def make_from_file(path: str) -> LFunction:
    """Coefficient file: '# key value' headers then 'n b_re [b_im]' lines."""
    meta = {}
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].strip().split(None, 1)
                if len(parts) == 2:
                    meta[parts[0]] = parts[1]
                continue
            toks = line.split()
            n = int(toks[0])
            re_s = toks[1]
            im_s = toks[2] if len(toks) > 2 else "0"
            rows.append((n, re_s, im_s))
    rows.sort()
    kappas = [Fraction(t) for t in meta.get("kappas", "1/2").split()]
    lam_tokens = meta.get("lambdas", "0").split()
    gammas = []
    for kap, tok in zip(kappas, lam_tokens):
        re_s, _, im_s = tok.partition(",")
        gammas.append(GammaFactorSpec(kap, re_s, im_s or "0"))
    omega_re = meta.get("omega_re", "1")
    omega_im = meta.get("omega_im", "0")
    poles = []
    if "poles" in meta:
        for chunk in meta["poles"].split(";"):
            if not chunk.strip():
                continue
            sr, si, rr, ri = [x.strip() for x in chunk.split(",")]
            poles.append(
                (
                    mpc(mpf(sr), mpf(si)) if si not in ("0", "-0") else Fraction(sr),
                    (lambda rr=rr, ri=ri: mpc(mpf(rr), mpf(ri))),
                )
            )
    self_dual = meta.get("self_dual", "1") not in ("0", "false", "False")
    fe = FunctionalEquationData(
        q_factor=QFactor(literal=meta.get("Q", "1")),
        gammas=tuple(gammas),
        omega_fn=(lambda: mpc(mpf(omega_re), mpf(omega_im))),
        poles=tuple(poles),
        self_dual=self_dual,
    )
    return LFunction(meta.get("kind", "file"), "file:%s" % path, fe, FileSource(rows))


def save_coefficient_file(lf: LFunction, path: str, n_max: int, digits: int = 30) -> None:
    with mpmath.workdps(digits + 5):
        coeffs = lf.coeffs.realize(n_max)
        omega = lf.fe.omega()
        lines = ["# kind %s" % lf.kind]
        lines.append("# Q %s" % mpmath.nstr(lf.fe.q_factor.value(), digits))
        lines.append("# kappas %s" % " ".join(str(g.kappa) for g in lf.fe.gammas))
        lam_strs = []
        for g in lf.fe.gammas:
            lam = g.lam_mpc()
            lam_strs.append("%s,%s" % (mpmath.nstr(lam.real, digits), mpmath.nstr(lam.imag, digits)))
        lines.append("# lambdas %s" % " ".join(lam_strs))
        lines.append("# omega_re %s" % mpmath.nstr(omega.real, digits))
        lines.append("# omega_im %s" % mpmath.nstr(omega.imag, digits))
        if lf.fe.poles:
            chunks = []
            for s_k, r_fn in lf.fe.poles:
                sk = mpc(_frac_mpf(s_k)) if not isinstance(s_k, mpc) else s_k
                rk = r_fn()
                chunks.append(
                    "%s,%s,%s,%s"
                    % (
                        mpmath.nstr(sk.real, digits),
                        mpmath.nstr(sk.imag, digits),
                        mpmath.nstr(rk.real, digits),
                        mpmath.nstr(rk.imag, digits),
                    )
                )
            lines.append("# poles %s" % ";".join(chunks))
        lines.append("# self_dual %d" % int(lf.fe.self_dual))
        for n, b in enumerate(coeffs, start=1):
            if b.imag == 0:
                lines.append("%d %s" % (n, mpmath.nstr(b.real, digits)))
            else:
                lines.append("%d %s %s" % (n, mpmath.nstr(b.real, digits), mpmath.nstr(b.imag, digits)))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# delta choice and evaluators


@dataclass
class DeltaChoice:
    """Per-factor rotation data; delta = exp(i Phi), beta dropped."""

    c: float
    t_j: list
    theta_j: list
    phi_j: list  # arg of delta_j
    Phi: mpf  # arg of aggregate delta = prod delta_j^kappa_j

    def delta(self) -> mpc:
        return mpmath.exp(mpc(0, 1) * self.Phi)


def choose_delta(s, fe: FunctionalEquationData, c: float) -> DeltaChoice:
    if c <= 0:
        raise ValueError("c must be positive")
    s = mpc(s)
    a = fe.degree
    t_list, th_list, phi_list = [], [], []
    big_phi = mpf(0)
    for g in fe.gammas:
        kap = g.kappa_mpf()
        t_j = (kap * s + g.lam_mpc()).imag
        if abs(t_j) <= 2 * c / (a * mpmath.pi):
            th = mpmath.pi / 2
        else:
            th = mpf(c) / (a * abs(t_j))
        sgn = 0 if t_j == 0 else (1 if t_j > 0 else -1)
        phi = sgn * (mpmath.pi / 2 - th)
        t_list.append(t_j)
        th_list.append(th)
        phi_list.append(phi)
        big_phi += kap * phi
    return DeltaChoice(c=c, t_j=t_list, theta_j=th_list, phi_j=phi_list, Phi=big_phi)


def _foldable(fe: FunctionalEquationData):
    """Legendre-fold two (1/2, x), (1/2, x+1/2) factors into (1, 2x)."""
    if fe.degree == 1:
        g = fe.gammas[0]
        return g.kappa_mpf(), g.lam_mpc(), fe.q_factor.value(), mpc(0)
    if fe.degree == 2:
        g1, g2 = fe.gammas
        if g1.kappa == Fraction(1, 2) and g2.kappa == Fraction(1, 2):
            l1, l2 = g1.lam_mpc(), g2.lam_mpc()
            if abs(l2 - l1 - mpf(1) / 2) < mpf(10) ** (-12):
                lam = 2 * l1
                logc0 = mpmath.log(2 * mpmath.pi) / 2 + (mpf(1) / 2 - lam) * mpmath.log(2)
                return mpf(1), lam, fe.q_factor.value() / 2, logc0
            if abs(l1 - l2 - mpf(1) / 2) < mpf(10) ** (-12):
                lam = 2 * l2
                logc0 = mpmath.log(2 * mpmath.pi) / 2 + (mpf(1) / 2 - lam) * mpmath.log(2)
                return mpf(1), lam, fe.q_factor.value() / 2, logc0
    return None


@dataclass
class AfeResult:
    lambda_g: ComplexValue  # Lambda(s) delta^-s (Gaussian factor = 1 at z=s)
    l_value: ComplexValue
    delta: DeltaChoice
    n_terms: tuple
    method: str


def _afe_guard(c: float, s: mpc) -> int:
    return math.ceil(c / LN10) + math.ceil(math.log10(2 + abs(complex(s)))) + 10


def _g_bound_log(z: mpc, w: mpc) -> float:
    """log10 of the exponential-dropoff bound for |G(z,w)| (valid once
    Re w is past Re z - 1); +inf when not yet in the regime."""
    rw, rz = float(w.real), float(z.real)
    if rz <= 1:
        if rw <= 0.5:
            return math.inf
        return -rw / LN10 - math.log10(rw)
    if rw - rz + 1 <= 0.5:
        return math.inf
    return -rw / LN10 - math.log10(rw - rz + 1)


def evaluate_afe_a1(lf: LFunction, s, c: float = 30.0, ctx: PrecisionContext = DEFAULT_CTX) -> AfeResult:
    """Lambda(s) delta^-s and L(s) via the one-Gamma-factor formula."""
    s_in = mpc(s)
    folded = _foldable(lf.fe)
    if folded is None:
        raise DomainError("functional equation is not in (or foldable to) a=1 form")
    guard = _afe_guard(c, s_in)
    with ctx.workdps(guard):
        s = mpc(s_in)
        gam, lam, q_val, logc0 = _foldable(lf.fe)  # q_val is the folded Q
        # delta from the folded single-factor data
        t1 = (gam * s + lam).imag
        if abs(t1) <= 2 * c / mpmath.pi:
            th1 = mpmath.pi / 2
        else:
            th1 = mpf(c) / abs(t1)
        sgn = 0 if t1 == 0 else (1 if t1 > 0 else -1)
        phi1 = sgn * (mpmath.pi / 2 - th1)
        delta_choice = DeltaChoice(c=c, t_j=[t1], theta_j=[th1], phi_j=[phi1], Phi=gam * phi1)
        ln_q = mpmath.log(q_val)
        c0 = mpmath.exp(logc0)
        i_phi = mpc(0, 1) * phi1  # log delta_1; log delta = gam * i_phi

        # pole terms sum r'_k delta^-s_k / (s - s_k), r'_k = r_k / C0
        pole_sum = mpc(0)
        for s_k, r_fn in lf.fe.poles:
            sk = mpc(_frac_mpf(s_k)) if not isinstance(s_k, mpc) else s_k
            if abs(s - sk) < mpf(10) ** (-(ctx.digits + guard)):
                raise PoleError("AFE evaluation at a pole s=%s" % s_k)
            pole_sum += (r_fn() / c0) * mpmath.exp(-sk * gam * i_phi) / (s - sk)

        z1 = gam * s + lam
        z2 = gam * (1 - s) + mpmath.conj(lam)
        omega = lf.fe.omega()
        front1 = mpmath.exp(lam * i_phi - (lam / gam) * ln_q)
        front2 = omega * mpmath.exp(-gam * i_phi) * mpmath.exp(
            -mpmath.conj(lam) / gam * (ln_q + gam * i_phi)
        )

        inner_digits = ctx.digits + guard - 6
        inner_ctx = PrecisionContext(max(12, inner_digits), 6)

        # scale estimate *, for absolute truncation targets
        star_log10 = (
            float(s.real * ln_q + 0.5 * mpmath.log(2 * mpmath.pi)) / LN10
            + float((gam * s.real + lam.real - 0.5) * mpmath.log(max(abs(z1), mpf(2)))) / LN10
            - c / LN10
        )
        target_log10 = star_log10 - (ctx.digits + 2)

        def g_sum(z_arg, front_log10, phi_sign, conj_coeffs):
            total = mpc(0)
            err_acc = 0.0
            below = 0
            n = 0
            batch = 64
            coeffs: list = []
            lam_over_gam = (mpmath.conj(lam) if conj_coeffs else lam) / gam
            while True:
                if n >= len(coeffs):
                    need = len(coeffs) + batch
                    coeffs = lf.coeffs.realize(need)
                    batch = min(2 * batch, 4096)
                n += 1
                if n > 200000:
                    raise PrecisionExceeded("AFE n-sum failed to truncate")
                ln_w = (mpmath.log(n) - ln_q) / gam + mpc(0, 1) * phi_sign * phi1
                w = mpmath.exp(ln_w)
                bnd = _g_bound_log(z_arg, w)
                term_scale_log10 = (
                    math.log10(max(lf.coeffs.bound(n), 1e-300))
                    + float((lam_over_gam.real) * mpmath.log(n)) / LN10
                    + front_log10
                )
                if bnd < math.inf and bnd + term_scale_log10 < target_log10:
                    below += 1
                    if below >= 3:
                        break
                    continue
                below = 0
                b = mpmath.conj(coeffs[n - 1]) if conj_coeffs else coeffs[n - 1]
                if b == 0:
                    continue
                gv = G_value(z_arg, w, inner_ctx)
                term = b * mpmath.exp(lam_over_gam * mpmath.log(n)) * gv.value
                total += term
                err_acc += gv.err * float(abs(b) * mpmath.exp(lam_over_gam.real * mpmath.log(n)))
            return total, err_acc, n

        front1_log10 = float(mpmath.log(abs(front1))) / LN10 if front1 != 0 else -300.0
        front2_log10 = float(mpmath.log(abs(front2))) / LN10 if front2 != 0 else -300.0
        s1, e1, n1 = g_sum(z1, front1_log10, +1, False)
        s2, e2, n2 = g_sum(z2, front2_log10, -1, True)

        lam_g_folded = pole_sum + front1 * s1 + front2 * s2
        lam_g = c0 * lam_g_folded
        err = float(abs(c0)) * (
            float(abs(front1)) * e1 + float(abs(front2)) * e2
        ) + 10.0 ** (target_log10 + 2) * 20.0

        # recover L(s) in log space so the Gamma decay cancels analytically
        # (q_val is already the folded Q; the constant C0 drops out of L)
        expo = gam * i_phi * s - s * ln_q - log_gamma_raw(z1)
        l_val = lam_g_folded * mpmath.exp(expo)
        l_err = err / max(float(abs(c0)), 1e-300) * float(abs(mpmath.exp(expo)))
    return AfeResult(
        lambda_g=ComplexValue.from_mpc(lam_g, err, HEURISTIC),
        l_value=ComplexValue.from_mpc(l_val, l_err, HEURISTIC),
        delta=delta_choice,
        n_terms=(n1, n2),
        method="afe_a1",
    )


@dataclass
class RiemannSumParams:
    """Contour and step choices for the f1/f2 Riemann sums."""

    c: float = 30.0
    v: float | None = None
    A: float | None = None
    delta_step: float | None = None
    u_max: float | None = None


def evaluate_afe_riemann_sum(
    lf: LFunction,
    s,
    params: RiemannSumParams | None = None,
    ctx: PrecisionContext = DEFAULT_CTX,
    check_step: bool = False,
) -> AfeResult:
    """Lambda(s) g(s) with f1/f2 computed as Riemann sums over the Mellin
    line, g(z) = exp(A (z-s)^2) prod_j delta_j^(-kappa_j z)."""
    p = params or RiemannSumParams()
    s_in = mpc(s)
    res = _riemann_sum_eval(lf, s_in, p, ctx)
    if check_step:
        half = RiemannSumParams(
            c=p.c,
            v=p.v,
            A=p.A,
            delta_step=(p.delta_step or res.delta_used) / 2,
            u_max=p.u_max,
        )
        res2 = _riemann_sum_eval(lf, s_in, half, ctx)
        move = abs(res.lambda_g.value - res2.lambda_g.value)
        tol = max(res.lambda_g.err, float(abs(res.lambda_g.value)) * 10.0 ** (-ctx.digits))
        if float(move) > 4 * tol + 1e-300:
            raise StepTooCoarse("halving the u-step moved the result by %.3g" % float(move))
    return res


def _riemann_sum_eval(lf, s_in, p: RiemannSumParams, ctx: PrecisionContext):
    c = p.c
    guard = _afe_guard(c, s_in) + 4
    with ctx.workdps(guard):
        s = mpc(s_in)
        fe = lf.fe
        a = fe.degree
        q_val = fe.q_factor.value()
        ln_q = mpmath.log(q_val)
        dc = choose_delta(s, fe, c)
        digits = ctx.digits

        # contour: v strictly above the theorem's lower bound
        nu_min = 0.0
        for g in fe.gammas:
            lo = -float((g.lam_mpc() / g.kappa_mpf() + s).real)
            nu_min = max(nu_min, lo)
        v = p.v if p.v is not None else nu_min + 1.0
        if v <= nu_min or v <= 0:
            raise ContourTooLow("need v > max(0, max_j -Re(lambda_j/kappa_j + s)) = %.3f" % nu_min)
        v = mpf(v)

        u_max0 = (2.0 / math.pi) * ((digits + 6) * LN10 + c)
        u_max = p.u_max if p.u_max is not None else u_max0
        A = p.A if p.A is not None else (math.pi / 2) * (digits * LN10) / float(u_max) ** 2
        A = mpf(A)
        step = p.delta_step if p.delta_step is not None else 2 * math.pi / ((digits + 6) * LN10 + c)
        step = mpf(step)

        i_phi = mpc(0, 1) * dc.Phi  # log delta

        def g_of(z):
            return mpmath.exp(A * (z - s) ** 2 - z * i_phi)

        # pole terms against g
        pole_sum = mpc(0)
        for s_k, r_fn in fe.poles:
            sk = mpc(_frac_mpf(s_k)) if not isinstance(s_k, mpc) else s_k
            if abs(s - sk) < mpf(10) ** (-(ctx.digits + guard)):
                raise PoleError("evaluation at a pole s=%s" % s_k)
            pole_sum += r_fn() * g_of(sk) / (s - sk)

        # u-grid cores, truncated once |h| stays tiny for 16 consecutive nodes
        thresh_log10 = None

        def build_core(side: int):
            """side=+1: f1 integrand; side=-1: f2 integrand (z = v+iu)."""
            nodes, vals = [], []
            scale = mpf(0)
            for direction in (1, -1):
                below = 0
                k = 0 if direction == 1 else 1
                while True:
                    u = direction * k * step
                    z = v + mpc(0, 1) * u
                    lg = mpc(0)
                    for g in fe.gammas:
                        kap = g.kappa_mpf()
                        arg = kap * ((s + z) if side == 1 else (z + 1 - s)) + (
                            g.lam_mpc() if side == 1 else mpmath.conj(g.lam_mpc())
                        )
                        lg += log_gamma_raw(arg)
                    gz = g_of(s + z) if side == 1 else g_of(s - z)
                    val = mpmath.exp(lg) * gz / z * mpmath.exp(z * ln_q)
                    nodes.append(u)
                    vals.append(val)
                    scale = max(scale, abs(val))
                    if abs(val) < scale * mpf(10) ** (-(digits + 4)):
                        below += 1
                        if below >= 16:
                            break
                    else:
                        below = 0
                    k += 1
                    if k * step > 40 * u_max0:
                        raise PrecisionExceeded("Riemann-sum integrand failed to decay")
            return nodes, vals

        nodes1, core1 = build_core(+1)
        nodes2, core2 = build_core(-1)

        def n_sum(nodes, core, side):
            """sum over n of b(n) n^-(s or 1-s) * (step/2pi) sum_u core * n^-z."""
            total = mpc(0)
            err = mpf(0)
            n = 0
            below = 0
            coeffs = []
            batch = 64
            core_scale = max(abs(x) for x in core)
            while True:
                n += 1
                if n > 100000:
                    raise PrecisionExceeded("Riemann-sum n-loop failed to truncate")
                if n > len(coeffs):
                    coeffs = lf.coeffs.realize(len(coeffs) + batch)
                    batch = min(2 * batch, 4096)
                ln_n = mpmath.log(n)
                # f(s,n) = step/(2 pi) * sum core(u) * exp(-(v+iu) ln n)
                acc = mpc(0)
                damp = mpmath.exp(-v * ln_n)
                rot0 = mpmath.exp(mpc(0, -nodes[0]) * ln_n) if nodes else mpc(1)
                for u, cv in zip(nodes, core):
                    acc += cv * mpmath.exp(mpc(0, -u) * ln_n)
                f_val = acc * damp * step / (2 * mpmath.pi)
                b = coeffs[n - 1] if side == 1 else mpmath.conj(coeffs[n - 1])
                outer = mpmath.exp(-(s if side == 1 else (1 - s)) * ln_n)
                term = b * outer * f_val
                total += term
                bound = lf.coeffs.bound(n) * float(abs(outer)) * float(damp * core_scale * step)
                if bound < 10.0 ** (-(digits + 3)) * max(float(abs(total)), 10.0 ** (-c / LN10)):
                    below += 1
                    if below >= 3:
                        break
                else:
                    below = 0
            return total, n

        sum1, n1 = n_sum(nodes1, core1, +1)
        sum2, n2 = n_sum(nodes2, core2, -1)
        omega = fe.omega()
        lam_g = (
            pole_sum
            + mpmath.exp(s * ln_q) * sum1
            + omega * mpmath.exp((1 - s) * ln_q) * sum2
        )
        # alias + truncation budget: heuristic at the target scale
        err = float(abs(lam_g)) * 10.0 ** (-digits) + 10.0 ** (
            -(digits + 1) - c / LN10
        )
        # recover L(s): divide by Q^s prod Gamma(kappa_j s + lambda_j) delta^-s
        lg_sum = mpc(0)
        for g in fe.gammas:
            lg_sum += log_gamma_raw(g.kappa_mpf() * s + g.lam_mpc())
        expo = s * i_phi - s * ln_q - lg_sum
        l_val = lam_g * mpmath.exp(expo)
        l_err = err * float(abs(mpmath.exp(expo)))
    res = AfeResult(
        lambda_g=ComplexValue.from_mpc(lam_g, err, HEURISTIC),
        l_value=ComplexValue.from_mpc(l_val, l_err, HEURISTIC),
        delta=dc,
        n_terms=(n1, n2),
        method="afe_riemann_sum",
    )
    res.delta_used = float(step)
    return res


def evaluate_l(lf: LFunction, s, c: float = 30.0, ctx: PrecisionContext = DEFAULT_CTX) -> AfeResult:
    """L(s) by the cheapest applicable AFE route."""
    if _foldable(lf.fe) is not None:
        return evaluate_afe_a1(lf, s, c, ctx)
    return evaluate_afe_riemann_sum(lf, s, RiemannSumParams(c=c), ctx)


def rotated_Z(lf: LFunction, t, ctx: PrecisionContext = DEFAULT_CTX, c: float = 30.0) -> ComplexValue:
    """e^(i theta_L(t)) L(1/2+it), real for self-dual data."""
    if not lf.fe.self_dual:
        raise NotSelfDual("rotated_Z requires a self-dual L-function")
    t = mpf(t)
    s = mpc(mpf(1) / 2, t)
    res = evaluate_l(lf, s, c, ctx)
    with ctx.workdps(_afe_guard(c, s)):
        lg_sum = mpc(0)
        for g in lf.fe.gammas:
            lg_sum += log_gamma_raw(g.kappa_mpf() * s + g.lam_mpc())
        omega = lf.fe.omega()
        rho = mpmath.sqrt(omega)
        phase = mpmath.exp(mpc(0, 1) * (t * mpmath.log(lf.fe.q_factor.value()) + lg_sum.imag)) / rho
        z = res.l_value.value * phase
        err = res.l_value.err
        leak = abs(z.imag)
    return ComplexValue(z.real, 0, err + float(leak), HEURISTIC)


def functional_equation_residual(lf: LFunction, s, c: float = 30.0, ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """|Lambda(s) - omega conj(Lambda(1-conj(s)))| / max |Lambda|, both sides
    evaluated independently through the AFE."""
    s = mpc(s)
    with ctx.workdps(_afe_guard(c, s) + 4):
        lam_s = _lambda_value(lf, s, c, ctx)
        lam_dual = _lambda_value(lf, 1 - mpmath.conj(s), c, ctx)
        omega = lf.fe.omega()
        resid = abs(lam_s - omega * mpmath.conj(lam_dual))
        scale = max(abs(lam_s), abs(lam_dual))
        return float(resid / scale) if scale > 0 else 0.0


def _lambda_value(lf, s, c, ctx):
    res = evaluate_l(lf, s, c, ctx)
    lg_sum = mpc(0)
    for g in lf.fe.gammas:
        lg_sum += log_gamma_raw(g.kappa_mpf() * s + g.lam_mpc())
    return res.l_value.value * mpmath.exp(s * mpmath.log(lf.fe.q_factor.value()) + lg_sum)
