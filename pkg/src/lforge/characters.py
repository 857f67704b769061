"""Dirichlet characters mod q, Kronecker symbol, Gauss sums.

Characters are indexed by exponent vectors on generators of the unit group
(lexicographic ordering, principal character first), so CLI selectors
"q.index" are reproducible.  Values are stored exactly as roots of unity
e(value_num / group_exponent) and realized numerically on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mpf, mpc

from .precision import CERTIFIED, ComplexValue, PrecisionContext, DEFAULT_CTX


def _factorize(q: int):
    out = []
    d = 2
    while d * d <= q:
        if q % d == 0:
            e = 0
            while q % d == 0:
                q //= d
                e += 1
            out.append((d, e))
        d += 1
    if q > 1:
        out.append((q, 1))
    return out


def _primitive_root(p: int) -> int:
    """Smallest primitive root mod odd prime p."""
    phi = p - 1
    fac = [f for f, _ in _factorize(phi)]
    g = 2
    while True:
        if all(pow(g, phi // f, p) != 1 for f in fac):
            return g
        g += 1


@lru_cache(maxsize=None)
def _unit_group(q: int):
    """Generators and orders of (Z/q)^*, CRT component per prime power."""
    comps = []  # (prime_power, [(generator mod q_i, order)])
    for p, e in _factorize(q):
        pe = p**e
        if p == 2:
            if e == 1:
                comps.append((pe, []))
            elif e == 2:
                comps.append((pe, [(3, 2)]))
            else:
                comps.append((pe, [(pe - 1, 2), (3, 2 ** (e - 2))]))
        else:
            g = _primitive_root(p)
            phi = pe - pe // p
            # a primitive root mod p lifts to p^e unless g^(p-1) = 1 mod p^2
            if e > 1 and pow(g, (p - 1) * p ** (e - 2), pe) == 1:
                g += p
            comps.append((pe, [(g % pe, phi)]))
    # lift generators to mod q via CRT: g_i at its component, 1 elsewhere
    gens = []
    orders = []
    for pe, glist in comps:
        rest = q // pe
        for g, order in glist:
            if rest == 1:
                lift = g % q
            else:
                inv = pow(pe, -1, rest)
                # x = g mod pe, x = 1 mod rest
                lift = (g + pe * ((1 - g) * inv % rest)) % q
            gens.append(lift)
            orders.append(order)
    # discrete logs for every unit
    dlogs = {}
    if q == 1:
        dlogs[0] = ()
    else:
        from itertools import product

        ranges = [range(o) for o in orders]
        for exps in product(*ranges):
            n = 1
            for g, e in zip(gens, exps):
                n = n * pow(g, e, q) % q
            dlogs[n] = exps
    return tuple(gens), tuple(orders), dlogs


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod q with exact root-of-unity value table."""

    modulus: int
    index: int
    exponents: tuple
    orders: tuple
    value_num: tuple  # value_num[n] = k meaning chi(n) = e(k / group_exp); -1 for gcd>1
    group_exp: int
    conductor: int
    parity: int  # 0 even, 1 odd
    order: int

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_principal(self) -> bool:
        return all(e == 0 for e in self.exponents)

    @property
    def label(self) -> str:
        return "%d.%d" % (self.modulus, self.index)

    def value_exponent(self, n: int) -> int | None:
        """k with chi(n) = e(k/group_exp), or None when gcd(n,q) > 1."""
        k = self.value_num[n % self.modulus]
        return None if k < 0 else k

    def __call__(self, n: int) -> complex:
        k = self.value_num[n % self.modulus]
        if k < 0:
            return 0j
        return complex(
            math.cos(2 * math.pi * k / self.group_exp),
            math.sin(2 * math.pi * k / self.group_exp),
        )

    def value_mpc(self, n: int) -> mpc:
        """chi(n) at the current mpmath precision."""
        k = self.value_num[n % self.modulus]
        if k < 0:
            return mpc(0)
        if 2 * k % self.group_exp == 0:
            return mpc(1) if k == 0 else mpc(-1)
        ang = 2 * mpmath.pi * k / self.group_exp
        return mpc(mpmath.cos(ang), mpmath.sin(ang))

    def is_real(self) -> bool:
        return self.order <= 2

    def conjugate_index(self) -> int:
        """Index of the conjugate character in characters_mod ordering."""
        conj_exps = tuple((-e) % o for e, o in zip(self.exponents, self.orders))
        for i, ch in enumerate(characters_mod(self.modulus)):
            if ch.exponents == conj_exps:
                return i
        raise RuntimeError("conjugate character not found")


def _build_character(q: int, index: int, exps: tuple, gens, orders, dlogs) -> DirichletCharacter:
    group_exp = 1
    for o in orders:
        group_exp = group_exp * o // math.gcd(group_exp, o)
    vals = [-1] * q if q > 1 else [0]
    if q == 1:
        vals = [0]
    else:
        for n, dl in dlogs.items():
            k = 0
            for e, o, d in zip(exps, orders, dl):
                k = (k + e * d * (group_exp // o)) % group_exp
            vals[n] = k
    # conductor: smallest divisor f with chi trivial on n = 1 mod f
    conductor = q
    for f in sorted(_divisors(q)):
        ok = True
        for n in range(1, q + 1):
            if vals[n % q] >= 0 and n % f == 1 % f and vals[n % q] != 0:
                ok = False
                break
        if ok:
            conductor = f
            break
    parity = 0
    if q > 2:
        km1 = vals[q - 1]
        parity = 0 if km1 == 0 else 1
    order = 1
    for e, o in zip(exps, orders):
        d = o // math.gcd(e, o)
        order = order * d // math.gcd(order, d)
    return DirichletCharacter(
        modulus=q,
        index=index,
        exponents=exps,
        orders=tuple(orders),
        value_num=tuple(vals),
        group_exp=group_exp,
        conductor=conductor,
        parity=parity,
        order=order,
    )


def _divisors(q: int):
    out = []
    d = 1
    while d * d <= q:
        if q % d == 0:
            out.append(d)
            if d != q // d:
                out.append(q // d)
        d += 1
    return sorted(out)


@lru_cache(maxsize=None)
def characters_mod(q: int) -> tuple:
    """All phi(q) Dirichlet characters mod q, principal first."""
    if q < 1:
        raise ValueError("modulus must be positive")
    gens, orders, dlogs = _unit_group(q)
    from itertools import product

    exp_vectors = sorted(product(*[range(o) for o in orders]))
    return tuple(
        _build_character(q, i, exps, gens, orders, dlogs) for i, exps in enumerate(exp_vectors)
    )


def character_by_label(label: str) -> DirichletCharacter:
    """Selector 'q.index' with the deterministic lexicographic ordering."""
    q_str, _, i_str = label.partition(".")
    q, i = int(q_str), int(i_str)
    chars = characters_mod(q)
    if not 0 <= i < len(chars):
        raise ValueError("character index out of range for q=%d" % q)
    return chars[i]


def kronecker_symbol(d: int, n: int) -> int:
    """Kronecker symbol (d/n) with the standard 2 and sign conventions."""
    if n == 0:
        return 1 if d in (1, -1) else 0
    if n < 0:
        raise ValueError("kronecker_symbol expects n >= 1")
    result = 1
    # factor out 2s using (d/2) = 0, +-1 by d mod 8
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    d %= n if n > 1 else 1
    # now n odd positive: Jacobi with reciprocity
    a = d % n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(d: int) -> bool:
    """d = 1 mod 4 squarefree, or d = 4m with m = 2,3 mod 4 squarefree; d != 1."""
    if d == 1 or d == 0:
        return False
    if d % 4 == 1:
        return _squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


def _squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def gauss_sum(chi: DirichletCharacter, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """tau(chi) = sum_m chi(m) e(m/q), direct summation."""
    q = chi.modulus
    with ctx.workdps(5):
        acc = mpc(0)
        for m in range(1, q + 1):
            v = chi.value_mpc(m)
            if v != 0:
                ang = 2 * mpmath.pi * m / q
                acc += v * mpc(mpmath.cos(ang), mpmath.sin(ang))
        err = float(q * abs(acc) + q) * 10.0 ** (-ctx.working_digits + 1)
    return ComplexValue.from_mpc(acc, err, CERTIFIED)
