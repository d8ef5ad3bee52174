"""Teichmueller characters, Jacobi sums and Gauss-sum ratios in Z/p^N.

Gauss sums themselves live in Z_p[zeta_p], which is ramified, so they are
never formed p-adically.  Products and quotients of Gauss sums are reduced
to Jacobi sums by the telescoping rule

    G_a G_b = c(a, b) G_{a+b},

    c(a, b) = J(a, b)            if a + b != 0 mod (q-1)
            = p * J(a, -a)       if a + b == 0, a != 0
            = -1                 if a == b == 0        (G_0 = -1)

and every J(a, b) = sum_{x != 0,1} T^a(x) T^b(1-x) lies in Z/p^N.
A complex embedding of the same sums is provided for validation only.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

from .finite_field import ExtField, make_ext_field, trace
from .numeric import ModRing, valuation

DEFAULT_N = 5


class DegenerateRatioError(ValueError):
    """A Gauss-sum ratio the Jacobi factorization cannot express."""

    def __init__(self, message, num=None, den=None):
        super().__init__(message)
        self.num = num
        self.den = den

    def to_json(self):
        return {"error": "degenerate_ratio", "message": str(self),
                "num": self.num, "den": self.den}


# -- unramified extension Z_q / p^N = (Z/p^N)[t] / (lifted modulus) --

@dataclass(frozen=True)
class UnramifiedRing:
    p: int
    N: int
    modulus: tuple   # monic, low first, integer lift of the F_p modulus

    @property
    def pN(self):
        return self.p ** self.N

    @property
    def r(self):
        return len(self.modulus) - 1

    def reduce(self, a):
        a = [x % self.pN for x in a]
        r = self.r
        for i in range(len(a) - 1, r - 1, -1):
            c = a[i]
            if c:
                for j in range(r + 1):
                    a[i - r + j] = (a[i - r + j] - c * self.modulus[j]) % self.pN
        a = a[:r] + [0] * (r - len(a[:r]))
        return tuple(a)

    def mul(self, a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.reduce(out)

    def add(self, a, b):
        return tuple((x + y) % self.pN for x, y in zip(a, b))

    def pow(self, a, e):
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def one(self):
        return tuple([1 % self.pN] + [0] * (self.r - 1))

    def zero(self):
        return tuple([0] * self.r)


def unramified_ring(F: ExtField, N: int) -> UnramifiedRing:
    return UnramifiedRing(F.p, N, tuple(F.modulus))


@dataclass(frozen=True)
class TeichValue:
    base: int          # encoded element of F_q*
    lift: object       # ModRing for q = p, coefficient tuple mod p^N otherwise
    N: int


def teichmuller(x: int, p: int, r: int = 1, N: int = DEFAULT_N) -> TeichValue:
    """Teichmueller lift of x in F_{p^r}* to precision N.

    T(x) = x^{q^{N-1}} computed in the unramified ring: the q-th power map is
    a contraction toward the unique (q-1)-st root of unity above x.
    """
    if x % (p ** r) == 0 or x == 0:
        raise ValueError("the Teichmueller lift is defined on nonzero elements")
    if r == 1:
        pN = p ** N
        return TeichValue(x, ModRing(pow(x, p ** (N - 1), pN), pN), N)
    F = make_ext_field(p, r)
    R = unramified_ring(F, N)
    a = tuple(F.coeffs(x))
    for _ in range(N - 1):
        a = R.pow(a, F.q)
    return TeichValue(x, a, N)


@lru_cache(maxsize=256)
def teich_table(p: int, N: int) -> tuple:
    """T(x) mod p^N for x = 0..p-1 (entry 0 is 0)."""
    pN = p ** N
    return tuple(0 if x == 0 else pow(x, p ** (N - 1), pN) for x in range(p))


def char_value(m: int, x: int, p: int, N: int = DEFAULT_N) -> int:
    """T^m(x) mod p^N for x in F_p*, as an integer."""
    if x % p == 0:
        raise ValueError("characters are evaluated on F_p*")
    t = teich_table(p, N)[x % p]
    return pow(t, m % (p - 1), p ** N)


def jacobi_sum(a: int, b: int, p: int, N: int = DEFAULT_N) -> ModRing:
    """J(a, b) = sum_{x != 0, 1} T^a(x) T^b(1 - x) mod p^N."""
    return ModRing(_jacobi(a % (p - 1), b % (p - 1), p, N), p ** N)


@lru_cache(maxsize=65536)
def _jacobi(a, b, p, N):
    pN = p ** N
    t = teich_table(p, N)
    s = 0
    for x in range(2, p):
        s += pow(t[x], a, pN) * pow(t[(1 - x) % p], b, pN)
    return s % pN


@dataclass(frozen=True)
class GaussRatio:
    num: tuple
    den: tuple
    p: int
    N: int
    p_power: int
    value: ModRing      # p^p_power * prod G_num / prod G_den mod p^N
    valuation: int | None

    def to_json(self):
        return {"num": list(self.num), "den": list(self.den), "p": self.p,
                "N": self.N, "p_power": self.p_power,
                "value": str(self.value.value),
                "valuation": self.valuation}


def _split(n, p, W):
    """n mod p^W -> (v, unit) with unit known mod p^(W - v)."""
    n %= p ** W
    if n == 0:
        raise DegenerateRatioError("Jacobi factor vanishes to working precision")
    v = valuation(n, p)
    return v, n // p ** v


def _telescope(indices, p, W):
    """prod G_i = p^v * u * G_s; returns (v, u, s)."""
    m = p - 1
    if not indices:
        return 0, -1, 0          # 1 = -G_0
    v, u, s = 0, 1, indices[0] % m
    for b in indices[1:]:
        b %= m
        if s == 0 and b == 0:
            fv, fu = 0, -1
        elif (s + b) % m == 0:
            fv, fu = _split(_jacobi(s, b, p, W), p, W)
            fv += 1
        else:
            fv, fu = _split(_jacobi(s, b, p, W), p, W)
        v += fv
        u = u * fu % p ** W
        s = (s + b) % m
    return v, u, s


def gauss_ratio(num, den, p: int, N: int = DEFAULT_N, p_power: int = 0) -> GaussRatio:
    """p^p_power * prod_{a in num} G_a / prod_{b in den} G_b in Z/p^N."""
    num = tuple(a % (p - 1) for a in num)
    den = tuple(b % (p - 1) for b in den)
    # each Jacobi factor has valuation <= 1, so this much slack covers every
    # unit division
    W = N + len(num) + len(den) + 2
    vn, un, sn = _telescope(list(num), p, W)
    vd, ud, sd = _telescope(list(den), p, W)
    if sn != sd:
        raise DegenerateRatioError(
            f"index sums differ mod {p - 1} ({sn} vs {sd}); not a Jacobi product",
            list(num), list(den))
    v = p_power + vn - vd
    if v < 0:
        raise DegenerateRatioError(
            f"ratio has negative valuation {v}; not in Z_p", list(num), list(den))
    prec = W - (len(num) + len(den))
    unit = un * pow(ud, -1, p ** prec) % p ** prec
    pN = p ** N
    val = ModRing(p ** v * unit, pN)
    return GaussRatio(num, den, p, N, p_power, val, v if val.value else None)


# -- complex embedding, validation only --

@dataclass(frozen=True)
class ComplexGauss:
    m: int
    p: int
    r: int
    value: complex


def _exact_g0(q_field: ExtField) -> int:
    """sum_{x != 0} zeta_p^{Tr x} in Z[zeta_p], reduced via 1 + z + ... + z^{p-1} = 0.

    Returns the rational integer it equals.
    """
    p = q_field.p
    coeff = [0] * p
    for x in range(1, q_field.q):
        coeff[trace(x, q_field)] += 1
    # subtract coeff[p-1] * (1 + z + ... + z^{p-1}) to clear the top term
    top = coeff[p - 1]
    coeff = [c - top for c in coeff]
    if any(coeff[1:]):
        raise ArithmeticError("G_0 is not rational; trace map is broken")
    return coeff[0]


def complex_gauss_sum(m: int, p: int, r: int = 1) -> ComplexGauss:
    """G_m = sum_{x != 0} theta(Tr x) chi^m(x) with theta(y) = exp(2 pi i y / p).

    chi sends the field generator to exp(2 pi i / (q - 1)), a fixed complex
    embedding of the Teichmueller character.
    """
    F = make_ext_field(p, r)
    q = F.q
    m %= q - 1
    if m == 0:
        return ComplexGauss(0, p, r, complex(_exact_g0(F), 0.0))
    total = 0j
    x = 1
    for j in range(q - 1):
        total += cmath.exp(2j * cmath.pi * (trace(x, F) / p + j * m / (q - 1)))
        x = F.mul(x, F.generator)
    return ComplexGauss(m, p, r, total)


def complex_jacobi_sum(a: int, b: int, p: int) -> complex:
    F = make_ext_field(p)
    log = {}
    x = 1
    for j in range(p - 1):
        log[x] = j
        x = x * F.generator % p
    tot = 0j
    for x in range(2, p):
        e = a * log[x] + b * log[(1 - x) % p]
        tot += cmath.exp(2j * cmath.pi * e / (p - 1))
    return tot
