"""Exhaustive point counting over F_q.

Polynomials are evaluated on blocks of encoded tuples using log/exp and
addition tables, so inner loops are numpy gathers.  Blocks are summed as
Python integers; results do not depend on the block size or thread count.

The ``*_fast`` counters are exact too.  They organise the same enumeration
as a convolution over F_q x Z/(q-1) (additive value, discrete log of the
product) and are used where q^n tuples are too many to visit one by one.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb, gcd

import numpy as np

from .families import (DworkFamily, FermatDeformation, Polynomial, SingularMirror,
                       SuperellipticCurve, defining_polynomial, family_to_json)
from .finite_field import ExtField, FieldError, make_ext_field

DEFAULT_CAP = 2 ** 26
BLOCK = 2 ** 18


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class CountResult:
    N: object                       # int, or Fraction for weighted stacks
    field: tuple                    # (p, r)
    variant: str                    # projective | weighted | torus | affine | cone
    family: dict | None = None
    nonzero_only: bool = False

    def to_json(self):
        N = self.N
        if isinstance(N, Fraction) and N.denominator != 1:
            Ns = f"{N.numerator}/{N.denominator}"
        else:
            Ns = str(int(N))
        return {"N": Ns, "field": {"p": self.field[0], "r": self.field[1]},
                "variant": self.variant, "nonzero_only": self.nonzero_only,
                "family": self.family}


@dataclass
class CountTable:
    rows: list = field(default_factory=list)
    truncated: bool = False
    reason: str | None = None

    def to_json(self):
        return {"rows": [r.to_json() for r in self.rows],
                "truncated": self.truncated, "reason": self.reason}


def _as_field(F) -> ExtField:
    if isinstance(F, ExtField):
        return F
    if isinstance(F, int):
        return make_ext_field(F, 1)
    return make_ext_field(*F)


# -- vectorized evaluation --

class _Evaluator:
    """Evaluate sum_t c_t x^{e_t} on encoded coordinate arrays."""

    def __init__(self, F: ExtField, terms):
        self.F = F
        self.terms = [(tuple(e), int(c)) for e, c in terms if c != 0]
        if F.r == 1:
            self.prime = True
        else:
            self.prime = False
            self.lt = F.log_table
            self.et = F.exp_table
            self.add = F.add_table

    def __call__(self, X: np.ndarray) -> np.ndarray:
        """X has shape (nvars, M); returns encoded values of shape (M,)."""
        F = self.F
        M = X.shape[1]
        if self.prime:
            p = F.p
            tot = np.zeros(M, dtype=np.int64)
            for e, c in self.terms:
                t = np.full(M, c % p, dtype=np.int64)
                for i, k in enumerate(e):
                    if k:
                        t = t * _powmod(X[i], k, p) % p
                tot = (tot + t) % p
            return tot
        q1 = F.q - 1
        tot = np.zeros(M, dtype=np.int64)
        for e, c in self.terms:
            lg = np.full(M, int(self.lt[c]), dtype=np.int64)
            zero = np.zeros(M, dtype=bool)
            for i, k in enumerate(e):
                if k:
                    lx = self.lt[X[i]]
                    zero |= lx < 0
                    lg = lg + k * lx
            t = np.where(zero, 0, self.et[lg % q1])
            tot = self.add[tot, t]
        return tot


def _powmod(x, k, p):
    out = np.ones_like(x)
    b = x % p
    while k:
        if k & 1:
            out = out * b % p
        b = b * b % p
        k >>= 1
    return out


def _digits(idx: np.ndarray, q: int, width: int) -> np.ndarray:
    out = np.empty((width, idx.size), dtype=np.int64)
    for j in range(width):
        out[width - 1 - j] = idx % q
        idx = idx // q
    return out


def _count_blocks(total, q, width, make_coords, pred, threads=1, block=BLOCK):
    """Sum pred over all q^width tuples, in blocks; integer result."""
    starts = list(range(0, total, block))

    def work(s):
        idx = np.arange(s, min(s + block, total), dtype=np.int64)
        X = make_coords(_digits(idx, q, width))
        return int(pred(X))

    if threads and threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(work, starts))
    else:
        parts = [work(s) for s in starts]
    return sum(parts)


def _poly_terms(poly, F):
    if isinstance(poly, Polynomial):
        if poly.symbolic:
            raise ValueError("need a fiber with a concrete parameter value")
        return poly.nvars, poly.terms
    nvars, terms = poly
    return nvars, terms


def count_projective(poly, F, cap=DEFAULT_CAP, threads=1, block=BLOCK) -> CountResult:
    """Points of {poly = 0} in P^{n-1}(F_q) via normalized representatives."""
    F = _as_field(F)
    n, terms = _poly_terms(poly, F)
    q = F.q
    size = (q ** n - 1) // (q - 1)
    if size > cap:
        raise CapExceeded(f"{size} projective points exceed cap {cap}")
    ev = _Evaluator(F, terms)
    N = 0
    for lead in range(n):
        width = n - 1 - lead

        def make(D, lead=lead, width=width):
            M = D.shape[1]
            X = np.zeros((n, M), dtype=np.int64)
            X[lead] = 1
            if width:
                X[lead + 1:] = D
            return X

        N += _count_blocks(q ** width, q, width, make,
                           lambda X: np.count_nonzero(ev(X) == 0), threads, block)
    return CountResult(N, (F.p, F.r), "projective")


def count_affine_cone(poly, F, cap=DEFAULT_CAP, threads=1, block=BLOCK) -> CountResult:
    """Solutions in F_q^n including the origin."""
    F = _as_field(F)
    n, terms = _poly_terms(poly, F)
    q = F.q
    if q ** n > cap:
        raise CapExceeded(f"{q ** n} tuples exceed cap {cap}")
    ev = _Evaluator(F, terms)
    N = _count_blocks(q ** n, q, n, lambda D: D,
                      lambda X: np.count_nonzero(ev(X) == 0), threads, block)
    return CountResult(N, (F.p, F.r), "cone")


def stabilizer_order(x, weights, q) -> int:
    """|{l in F_q* : l^{w_i} = 1 for i in supp(x)}| = gcd(q-1, w_i : x_i != 0)."""
    g = q - 1
    for xi, w in zip(x, weights):
        if xi:
            g = gcd(g, w)
    return g


def count_weighted_projective(poly, weights, F, cap=DEFAULT_CAP, threads=1,
                              block=BLOCK) -> CountResult:
    """Rational points of {poly = 0} in P(w)(F_q).

    Each orbit of the action l.x = (l^{w_i} x_i) on nonzero solutions is
    weighted by 1/|stabilizer|; equivalently the count is
    #(nonzero solutions) / (q - 1).  For the whole space this gives
    (q^n - 1)/(q - 1) for every weight vector.
    """
    F = _as_field(F)
    n, terms = _poly_terms(poly, F)
    q = F.q
    if q ** n > cap:
        raise CapExceeded(f"{q ** n} tuples exceed cap {cap}")
    ev = _Evaluator(F, terms) if terms else None
    # group solutions by support, since the stabilizer depends only on it
    total = Fraction(0)
    for supp in itertools.product((0, 1), repeat=n):
        if not any(supp):
            continue
        k = sum(supp)
        pos = [i for i in range(n) if supp[i]]

        def make(D, pos=pos):
            X = np.zeros((n, D.shape[1]), dtype=np.int64)
            X[pos] = D + 1
            return X

        if ev is None:
            cnt = (q - 1) ** k
        else:
            cnt = _count_blocks((q - 1) ** k, q - 1, k, make,
                                lambda X: np.count_nonzero(ev(X) == 0), threads, block)
        stab = stabilizer_order(supp, weights, q)
        orbit = (q - 1) // stab
        total += Fraction(cnt, orbit) / stab
    N = int(total) if total.denominator == 1 else total
    return CountResult(N, (F.p, F.r), "weighted")


def count_weighted_orbits_explicit(poly, weights, F) -> Fraction:
    """Tiny-q cross-check: enumerate orbits as sets, sum 1/|stabilizer|."""
    F = _as_field(F)
    n, terms = _poly_terms(poly, F)
    ev = _Evaluator(F, terms) if terms else None
    seen = set()
    total = Fraction(0)
    units = range(1, F.q)
    for x in itertools.product(range(F.q), repeat=n):
        if not any(x) or x in seen:
            continue
        if ev is not None and ev(np.array(x, dtype=np.int64).reshape(n, 1))[0] != 0:
            continue
        orbit = {tuple(F.mul(F.pow(l, w), xi) for w, xi in zip(weights, x)) for l in units}
        seen |= orbit
        stab = (F.q - 1) // len(orbit)
        total += Fraction(1, stab)
    return total


def count_torus(mirror: SingularMirror, F=None, cap=DEFAULT_CAP, threads=1,
                block=BLOCK) -> CountResult:
    """Solutions of x_1 + ... + x_{n-1} + 1/(x_1...x_{n-1}) = n psi on (F_q*)^{n-1}."""
    F = _as_field(F if F is not None else mirror.field)
    m = mirror.n - 1
    q = F.q
    if (q - 1) ** m > cap:
        raise CapExceeded(f"{(q - 1) ** m} torus tuples exceed cap {cap}")
    lt, et = F.log_table, F.exp_table
    target = F.mul(F.scalar(mirror.n), mirror.psi)

    if F.r == 1:
        p = F.p

        def pred(D):
            X = D + 1
            s = X.sum(axis=0) % p
            lg = lt[X].sum(axis=0) % (q - 1)
            inv = et[(-lg) % (q - 1)]
            return np.count_nonzero((s + inv - target) % p == 0)
    else:
        add = F.add_table

        def pred(D):
            X = D + 1
            s = np.zeros(X.shape[1], dtype=np.int64)
            for row in X:
                s = add[s, row]
            lg = lt[X].sum(axis=0) % (q - 1)
            inv = et[(-lg) % (q - 1)]
            return np.count_nonzero(add[s, inv] == target)

    N = _count_blocks((q - 1) ** m, q - 1, m, lambda D: D, pred, threads, block)
    return CountResult(N, (F.p, F.r), "torus", family_to_json(mirror), nonzero_only=True)


def count_affine_curve(curve: SuperellipticCurve, F=None) -> CountResult:
    """Pairs (x, y) in F_q^2 with y^d = x^e1 (1-x)^e2 (x - psi^d)^e3."""
    F = _as_field(F if F is not None else curve.field)
    d = curve.degree
    e1, e2, e3 = curve.exponents
    q = F.q
    roots = np.zeros(q, dtype=np.int64)       # roots[v] = #{y : y^d = v}
    for y in range(q):
        roots[F.pow(y, d)] += 1
    c = F.pow(curve.psi, d)
    N = 0
    for x in range(q):
        rhs = F.mul(F.mul(F.pow(x, e1), F.pow(F.sub(1, x), e2)),
                    F.pow(F.sub(x, c), e3))
        N += int(roots[rhs])
    return CountResult(N, (F.p, F.r), "affine", family_to_json(curve))


# -- fast exact counters by convolution --

def _power_sum_distribution(F: ExtField, k: int, power: int) -> np.ndarray:
    """f[u, e] = #{x in (F*)^k : sum x_i^power = u, sum log x_i = e mod q-1}."""
    q, q1 = F.q, F.q - 1
    et = F.exp_table
    add, neg = F.add_table, F.neg_table
    d = gcd(power, q1)
    period = q1 // d
    f = np.zeros((q, q1), dtype=np.int64)
    f[et[(np.arange(q1) * power) % q1], np.arange(q1)] = 1
    for _ in range(k - 1):
        P = f.copy()
        for j in range(1, d):
            P += np.roll(f, j * period, axis=1)
        new = np.zeros_like(f)
        for a0 in range(period):
            s = int(et[(a0 * power) % q1])
            idx = add[np.arange(q), neg[s]]          # u - s
            new += np.roll(P[idx], a0, axis=1)
        f = new
    return f


def count_dwork_fast(n: int, psi: int, F) -> dict:
    """Exact counts for x_1^n + ... + x_n^n - n psi x_1...x_n over F_q.

    Returns the affine-cone count A (origin included), the projective count
    (A - 1)/(q - 1) and the all-nonzero count.
    """
    F = _as_field(F)
    q, q1 = F.q, F.q - 1
    et = F.exp_table
    f = _power_sum_distribution(F, n, n)
    c = F.mul(F.scalar(n), psi)
    e = np.arange(q1)
    if c == 0:
        nonzero = int(f[0].sum())
    else:
        lc = int(F.log_table[c])
        nonzero = int(f[et[(lc + e) % q1], e].sum())
    # tuples with some zero coordinate: the monomial vanishes
    A = 1 + nonzero
    for s in range(1, n):
        h = _power_sum_distribution(F, s, n)[0].sum()
        A += comb(n, s) * int(h)
    return {"affine": A, "projective": (A - 1) // q1, "nonzero": nonzero}


def count_torus_fast(n: int, psi: int, F) -> int:
    """Same count as ``count_torus`` via convolution."""
    F = _as_field(F)
    q1 = F.q - 1
    et = F.exp_table
    f = _power_sum_distribution(F, n - 1, 1)
    target = F.mul(F.scalar(n), psi)
    e = np.arange(q1)
    inv = et[(-e) % q1]
    u = F.add_table[target, F.neg_table[inv]]
    return int(f[u, e].sum())


def mirror_boundary_count(n: int, F) -> int:
    """Points of {x_1...x_{n-1} (x_1 + ... + x_{n-1}) = 0} in P^{n-2}(F_q)."""
    F = _as_field(F)
    q = F.q
    m = n - 2
    proj = (q ** (m + 1) - 1) // (q - 1)
    torus = (q - 1) ** m
    # torus points of P^m with x_0 + ... + x_m = 0: normalize x_0 = 1
    zero_sum = ((q - 1) ** m - (-1) ** m) // q
    return proj - torus + zero_sum


def count_mirror_closure(n: int, psi: int, F, fast: bool = True) -> int:
    """Projective closure in P^{n-1} of the torus model.

    Homogenizing x-sum * prod + 1 - n psi prod with x_0 gives
    sum_i x_i prod_j x_j + x_0^n - n psi x_0 prod_j x_j; the affine chart adds
    no points off the torus, and x_0 = 0 gives the boundary hypersurface.
    """
    F = _as_field(F)
    if fast:
        torus = count_torus_fast(n, psi, F)
    else:
        torus = count_torus(SingularMirror(n, psi, (F.p, F.r)), F).N
    return torus + mirror_boundary_count(n, F)


def mirror_closure_polynomial(n: int, psi: int, F) -> Polynomial:
    """The homogenized polynomial in variables (x_0, x_1, ..., x_{n-1})."""
    F = _as_field(F)
    m = n - 1
    terms = []
    for i in range(m):
        e = [0] + [1] * m
        e[i + 1] += 1
        terms.append((tuple(e), 1))
    terms.append(((n,) + (0,) * m, 1))
    terms.append(((1,) + (1,) * m, F.neg(F.mul(F.scalar(n), psi))))
    return Polynomial(n, tuple(terms), field=(F.p, F.r))


# -- dispatch and tables --

def count_family(fam, F=None, cap=DEFAULT_CAP, threads=1) -> CountResult:
    F = _as_field(F if F is not None else fam.field)
    if isinstance(fam, SingularMirror):
        return count_torus(fam, F, cap, threads)
    if isinstance(fam, SuperellipticCurve):
        return count_affine_curve(fam, F)
    poly = defining_polynomial(fam, fam.psi, F)
    if isinstance(fam, FermatDeformation) and any(w != 1 for w in fam.weights):
        res = count_weighted_projective(poly, fam.weights, F, cap, threads)
    else:
        res = count_projective(poly, F, cap, threads)
    return CountResult(res.N, res.field, res.variant, family_to_json(fam))


def count_table(fam, p: int, r_max: int, cap=DEFAULT_CAP, threads=1) -> CountTable:
    """N_r over F_{p^r} for r = 1..r_max; truncated at the first cap overflow.

    The parameter must lie in the prime field, so it is the same element of
    every extension.
    """
    if getattr(fam, "field", None) not in (None, (p, 1)):
        raise ValueError("count_table needs a parameter in F_p")
    table = CountTable()
    for r in range(1, r_max + 1):
        try:
            F = make_ext_field(p, r, cap=cap)
            table.rows.append(count_family(replace(fam, field=(p, r)), F, cap, threads))
        except (CapExceeded, FieldError) as exc:
            table.truncated = True
            table.reason = f"r = {r}: {exc}"
            break
    return table


def dwork_count(fam: DworkFamily, F=None) -> int:
    """Projective count of a Dwork fiber, brute force when small, else convolution."""
    F = _as_field(F if F is not None else fam.field)
    if (F.q ** fam.n - 1) // (F.q - 1) <= 2 ** 22:
        return count_projective(defining_polynomial(fam, fam.psi, F), F).N
    return count_dwork_fast(fam.n, fam.psi, F)["projective"]
