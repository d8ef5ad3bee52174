"""Finite fields F_p and F_{p^r}.

Elements are encoded as integers 0 <= x < q: the coefficient vector
(c_0, ..., c_{r-1}) of c_0 + c_1 t + ... in F_p[t]/(modulus) becomes
sum c_i p^i.  For r = 1 this is the usual residue.  Zero is always 0 and
one is always 1; constants of the prime subfield encode as themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np

from .numeric import is_prime

ENUM_CAP = 2 ** 24
TABLE_CAP = 2 ** 12   # add/mul tables are q*q entries


class FieldError(ValueError):
    pass


# -- polynomials over F_p as coefficient lists, low degree first --

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod(a, m, p):
    a = list(a)
    inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(_trim(a)) - 1 >= dm:
        c = a[-1] * inv % p
        s = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[s + i] = (a[s + i] - c * y) % p
    return a


def _is_irreducible(m, p):
    r = len(m) - 1
    for d in range(1, r // 2 + 1):
        for low in range(p ** d):
            f = [(low // p ** i) % p for i in range(d)] + [1]
            if not _trim(_pmod(m, f, p)):
                return False
    return True


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class ExtField:
    """F_q with q = p^r, given by an irreducible monic modulus and a generator."""

    p: int
    r: int
    modulus: tuple          # r+1 coefficients, low first, monic
    generator: int          # encoded element of order q-1
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p ** self.r)

    # encoding
    def coeffs(self, x: int) -> list:
        return [(x // self.p ** i) % self.p for i in range(self.r)]

    def from_coeffs(self, c) -> int:
        c = list(c) + [0] * (self.r - len(c))
        if len(c) > self.r:
            c = _pmod([v % self.p for v in c], list(self.modulus), self.p)
            c = list(c) + [0] * (self.r - len(c))
        return sum((v % self.p) * self.p ** i for i, v in enumerate(c[:self.r]))

    # arithmetic
    def add(self, x, y):
        if self.r == 1:
            return (x + y) % self.p
        a, b = self.coeffs(x), self.coeffs(y)
        return self.from_coeffs([u + v for u, v in zip(a, b)])

    def neg(self, x):
        if self.r == 1:
            return -x % self.p
        return self.from_coeffs([-u for u in self.coeffs(x)])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self.r == 1:
            return x * y % self.p
        prod = _pmul(_trim(self.coeffs(x)), _trim(self.coeffs(y)), self.p)
        return self.from_coeffs(_pmod(prod, list(self.modulus), self.p))

    def pow(self, x, e):
        if e < 0:
            x, e = self.inv(x), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(x, self.q - 2)

    def frobenius(self, x):
        return self.pow(x, self.p)

    def scalar(self, c: int) -> int:
        """The prime-subfield element c."""
        return c % self.p

    # tables (built lazily; only for small q)
    @cached_property
    def exp_table(self) -> np.ndarray:
        """exp_table[j] = generator^j for j = 0..q-2."""
        out = np.empty(self.q - 1, dtype=np.int64)
        x = 1
        for j in range(self.q - 1):
            out[j] = x
            x = self.mul(x, self.generator)
        return out

    @cached_property
    def log_table(self) -> np.ndarray:
        """log_table[x] = discrete log of x to the generator; entry 0 is -1."""
        out = np.full(self.q, -1, dtype=np.int64)
        out[self.exp_table] = np.arange(self.q - 1)
        return out

    @cached_property
    def digits(self) -> np.ndarray:
        """digits[x] = coefficient vector of x, shape (q, r)."""
        x = np.arange(self.q)
        return np.stack([(x // self.p ** i) % self.p for i in range(self.r)], axis=1)

    @cached_property
    def add_table(self) -> np.ndarray:
        if self.q > TABLE_CAP:
            raise FieldError(f"q = {self.q} too large for an addition table")
        d = self.digits
        s = (d[:, None, :] + d[None, :, :]) % self.p
        w = self.p ** np.arange(self.r)
        return (s * w).sum(axis=2)

    @cached_property
    def neg_table(self) -> np.ndarray:
        d = (-self.digits) % self.p
        return (d * self.p ** np.arange(self.r)).sum(axis=1)

    def mul_vec(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Elementwise product of encoded arrays via log tables."""
        lt, et = self.log_table, self.exp_table
        lx, ly = lt[x], lt[y]
        out = et[(lx + ly) % (self.q - 1)]
        return np.where((x == 0) | (y == 0), 0, out)

    def pow_vec(self, x: np.ndarray, e: int) -> np.ndarray:
        lt, et = self.log_table, self.exp_table
        out = et[(lt[x] * e) % (self.q - 1)]
        if e == 0:
            return np.ones_like(out)
        return np.where(x == 0, 0, out)

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r,
                "modulus": list(self.modulus),
                "generator": self.coeffs(self.generator)}

    @classmethod
    def from_json(cls, d) -> "ExtField":
        f = make_ext_field(d["p"], d.get("r", 1))
        mod = tuple(d.get("modulus", f.modulus))
        if mod != f.modulus:
            raise FieldError("modulus differs from the deterministic choice")
        return f


def _element_order_is_full(F: ExtField, g: int) -> bool:
    n = F.q - 1
    return all(F.pow(g, n // ell) != 1 for ell in _prime_factors(n))


_CACHE = {}


def make_ext_field(p: int, r: int = 1, cap: int = ENUM_CAP) -> ExtField:
    """Deterministic F_{p^r}.

    The modulus is the first monic irreducible in lexicographic order of its
    lower coefficients (encoded as integers); the generator is the smallest
    encoded element of full order q-1.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if r < 1:
        raise FieldError("degree must be >= 1")
    if p ** r > cap:
        raise FieldError(f"p^r = {p ** r} exceeds cap {cap}")
    key = (p, r)
    if key in _CACHE:
        return _CACHE[key]
    for low in range(p ** r):
        m = [(low // p ** i) % p for i in range(r)] + [1]
        if _is_irreducible(m, p):
            break
    F0 = ExtField(p, r, tuple(m), 1)
    if F0.q == 2:
        g = 1
    else:
        g = next(x for x in range(2 if r == 1 else 1, F0.q)
                 if _element_order_is_full(F0, x))
    F = ExtField(p, r, tuple(m), g)
    _CACHE[key] = F
    return F


def PrimeField(p: int) -> ExtField:
    return make_ext_field(p, 1)


def trace(x: int, F: ExtField) -> int:
    """Tr(x) = x + x^p + ... + x^{p^{r-1}}, returned as an element of F_p."""
    t, y = 0, x
    for _ in range(F.r):
        t = F.add(t, y)
        y = F.frobenius(y)
    c = F.coeffs(t)
    if any(c[1:]):
        raise FieldError("trace did not land in the prime field")
    return c[0]


def enumerate_field(F: ExtField, cap: int = ENUM_CAP) -> Iterator[int]:
    """Every element exactly once, 0 first, in encoding order."""
    if F.q > cap:
        raise FieldError(f"q = {F.q} exceeds enumeration cap {cap}")
    return iter(range(F.q))


def embedding(small: ExtField, big: ExtField) -> list:
    """Field embedding small -> big as a list of images of encoded elements.

    The class of t in small goes to the first power of the big generator
    that is a root of the small modulus.
    """
    if small.p != big.p or big.r % small.r:
        raise FieldError("no embedding between these fields")
    if small.r == 1:
        # prime-field elements share their encoding in every extension
        return list(range(small.q))
    mod = small.modulus
    # image of t must satisfy modulus(t) = 0
    for k in range(big.q - 1):
        t = big.pow(big.generator, k)
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, t), big.scalar(c))
        if acc == 0:
            break
    else:
        raise FieldError("modulus has no root in the larger field")
    out = [0] * small.q
    tp = [big.pow(t, i) for i in range(small.r)]
    for x in range(small.q):
        acc = 0
        for c, ti in zip(small.coeffs(x), tp):
            acc = big.add(acc, big.mul(big.scalar(c), ti))
        out[x] = acc
    return out
