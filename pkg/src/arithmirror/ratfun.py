"""Univariate polynomials, rational functions and truncated series over Q.

Also: operators in theta = z d/dz with polynomial coefficients, log-series
blocks, fraction-free linear dependence over Q(x), and the coefficient ring
Q[Z2, Z3, Z4] of formal zeta symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


# -- polynomials --

class Poly:
    """Polynomial with Fraction coefficients, low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def _raw(cls, c):
        """Build from a list of Fractions without re-coercing."""
        while c and not c[-1]:
            c.pop()
        p = cls.__new__(cls)
        p.c = tuple(c)
        return p

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def const(cls, a):
        return cls([a])

    @property
    def deg(self):
        return len(self.c) - 1     # -1 for zero

    def is_zero(self):
        return not self.c

    def lead(self):
        return self.c[-1] if self.c else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        n = max(len(self.c), len(other.c))
        a = self.c + (0,) * (n - len(self.c))
        b = other.c + (0,) * (n - len(other.c))
        return Poly._raw([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-x for x in self.c])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            o = Fraction(other)
            return Poly._raw([x * o for x in self.c])
        if not self.c or not other.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = Poly([1])
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(len(r) - len(other.c) + 1, 0)
        inv = 1 / other.lead()
        d = other.deg
        while len(r) - 1 >= d and r:
            k = len(r) - 1 - d
            f = r[-1] * inv
            q[k] = f
            for i, y in enumerate(other.c):
                r[k + i] -= f * y
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return Poly._raw(q), Poly._raw(r)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self):
        return self * (1 / self.lead()) if self.c else self

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def deriv(self):
        return Poly([i * a for i, a in enumerate(self.c)][1:])

    def scale_var(self, s):
        """p(s x)."""
        s = Fraction(s)
        return Poly([a * s ** i for i, a in enumerate(self.c)])

    def shift(self, k):
        """x^k p(x)."""
        return Poly([0] * k + list(self.c))

    def content_primitive(self):
        """(c, q) with p = c q, q integer-coefficient primitive with positive lead."""
        if not self.c:
            return Fraction(0), Poly()
        den = lcm(*[a.denominator for a in self.c])
        ints = [int(a * den) for a in self.c]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), Poly([v // g for v in ints])

    def rational_roots(self):
        """Rational roots with multiplicity, and the cofactor without them."""
        roots = []
        rest = self
        while rest.deg >= 1:
            _, prim = rest.content_primitive()
            a0 = next((int(c) for c in prim.c if c != 0), 0)
            lowest = next(i for i, c in enumerate(prim.c) if c != 0)
            if lowest > 0:
                roots.append(Fraction(0))
                rest = rest.exact_div(Poly([0, 1]))
                continue
            an = int(prim.lead())
            found = None
            for num in _divisors(abs(a0)):
                for den in _divisors(abs(an)):
                    for sgn in (1, -1):
                        r = Fraction(sgn * num, den)
                        if prim(r) == 0:
                            found = r
                            break
                    if found is not None:
                        break
                if found is not None:
                    break
            if found is None:
                break
            roots.append(found)
            rest = rest.exact_div(Poly([-found, 1]))
        return sorted(roots), rest

    def to_str(self, var="x"):
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(a)
            coef = str(mag) if (mag != 1 or not mono) else ""
            body = "*".join(s for s in (coef, mono) if s)
            parts.append(("-" if a < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self):
        return f"Poly({self.to_str()})"


def _divisors(n):
    if n == 0:
        return [0]
    out = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(out + [n // d for d in out]))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else Poly([1])


# -- rational functions --

class RatFun:
    """num/den in one variable; den monic, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly([num])
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly([den])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        if den.deg > 0:
            g = poly_gcd(num, den)
            if g.deg > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lead()
        self.num, self.den = num * (1 / lc), den * (1 / lc)

    @classmethod
    def x(cls):
        return cls(Poly.x())

    def is_zero(self):
        return self.num.is_zero()

    def is_const(self):
        return self.num.deg <= 0 and self.den.deg == 0

    def const_value(self):
        return self.num.c[0] if self.num.c else Fraction(0)

    def _lift(self, o):
        return o if isinstance(o, RatFun) else RatFun(o)

    @classmethod
    def _make(cls, num, den):
        """Skip normalization; caller guarantees coprime, den monic."""
        r = cls.__new__(cls)
        if num.is_zero():
            den = Poly([1])
        r.num, r.den = num, den
        return r

    def __add__(self, o):
        o = self._lift(o)
        if self.den.deg == 0 and o.den.deg == 0:
            return RatFun._make(self.num + o.num, self.den)
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        r = RatFun.__new__(RatFun)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        if o.is_const() and not o.is_zero():
            r = RatFun.__new__(RatFun)
            r.num, r.den = self.num * o.const_value(), self.den
            return r
        if self.is_const() and not self.is_zero():
            return RatFun._make(o.num * self.const_value(), o.den)
        if self.den.deg == 0 and o.den.deg == 0:
            return RatFun._make(self.num * o.num, self.den)
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def __pow__(self, e):
        if e < 0:
            return RatFun(1) / (self ** (-e))
        return RatFun(self.num ** e, self.den ** e)

    def __eq__(self, o):
        o = self._lift(o)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def deriv(self):
        return RatFun(self.num.deriv() * self.den - self.num * self.den.deriv(),
                      self.den * self.den)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def to_str(self, var="x"):
        if self.den.deg == 0:
            return self.num.to_str(var)
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"

    def __repr__(self):
        return f"RatFun({self.to_str()})"


# -- formal zeta symbols --

class ZetaPoly:
    """Element of Q[Z2, Z3, Z4]: dict from exponent triples to Fractions."""

    __slots__ = ("t",)
    NAMES = ("Z2", "Z3", "Z4")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {(0, 0, 0): Fraction(terms)}
        self.t = {k: Fraction(v) for k, v in terms.items() if v != 0}

    @classmethod
    def symbol(cls, j):
        e = [0, 0, 0]
        e[j - 2] = 1
        return cls({tuple(e): Fraction(1)})

    def _lift(self, o):
        return o if isinstance(o, ZetaPoly) else ZetaPoly(o)

    def __add__(self, o):
        o = self._lift(o)
        out = dict(self.t)
        for k, v in o.t.items():
            out[k] = out.get(k, 0) + v
        return ZetaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ZetaPoly({k: -v for k, v in self.t.items()})

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        out = {}
        for k1, v1 in self.t.items():
            for k2, v2 in o.t.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return ZetaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self * (1 / Fraction(o))

    def __eq__(self, o):
        return self.t == self._lift(o).t

    def __hash__(self):
        return hash(tuple(sorted(self.t.items())))

    def is_rational(self):
        return all(k == (0, 0, 0) for k in self.t)

    def degree(self):
        """Total weight with Z_j of weight j."""
        return max((2 * a + 3 * b + 4 * c for a, b, c in self.t), default=0)

    def monomials(self):
        return sorted(self.t)

    def __repr__(self):
        if not self.t:
            return "0"
        parts = []
        for k in sorted(self.t):
            mono = "*".join(f"{n}^{e}" if e > 1 else n for n, e in zip(self.NAMES, k) if e)
            v = self.t[k]
            parts.append(f"{v}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


# -- truncated series and log blocks --

@dataclass(frozen=True)
class TruncSeries:
    """c_0 + c_1 z + ... known for indices < prec."""

    coeffs: tuple
    prec: int
    var: str = "z"

    def __post_init__(self):
        c = tuple(self.coeffs)[:self.prec]
        zero = c[0] * 0 if c else Fraction(0)
        c = c + (zero,) * (self.prec - len(c))
        object.__setattr__(self, "coeffs", c)

    def __getitem__(self, k):
        return self.coeffs[k]


def _check_var(a, b):
    if a.var != b.var:
        raise ValueError(f"variable mismatch: {a.var} vs {b.var}")


def series_arith(op: str, a: TruncSeries, b=None) -> TruncSeries:
    """add / sub / mul of two series, or scalar multiplication."""
    if op == "scalar":
        return TruncSeries(tuple(b * x for x in a.coeffs), a.prec, a.var)
    _check_var(a, b)
    m = min(a.prec, b.prec)
    if op == "add":
        return TruncSeries(tuple(a[k] + b[k] for k in range(m)), m, a.var)
    if op == "sub":
        return TruncSeries(tuple(a[k] - b[k] for k in range(m)), m, a.var)
    if op == "mul":
        out = []
        for k in range(m):
            s = a[0] * b[k]
            for i in range(1, k + 1):
                s = s + a[i] * b[k - i]
            out.append(s)
        return TruncSeries(tuple(out), m, a.var)
    raise ValueError(f"unknown op {op}")


@dataclass(frozen=True)
class LogSeries:
    """sum_j blocks[j] (log z)^j."""

    blocks: tuple

    @property
    def prec(self):
        return min(b.prec for b in self.blocks)

    @property
    def var(self):
        return self.blocks[0].var

    def is_zero(self):
        return all(c == 0 for b in self.blocks for c in b.coeffs)


def as_log_series(s) -> LogSeries:
    return s if isinstance(s, LogSeries) else LogSeries((s,))


def theta_once(s: LogSeries) -> LogSeries:
    """theta(z^k log^j z) = k z^k log^j z + j z^k log^{j-1} z."""
    out = []
    J = len(s.blocks)
    for j in range(J):
        b = s.blocks[j]
        c = [k * b[k] for k in range(b.prec)]
        if j + 1 < J:
            nb = s.blocks[j + 1]
            for k in range(min(b.prec, nb.prec)):
                c[k] = c[k] + (j + 1) * nb[k]
        out.append(TruncSeries(tuple(c), b.prec, b.var))
    return LogSeries(tuple(out))


@dataclass(frozen=True)
class ThetaOperator:
    """sum_j var^j P_j(theta), P_j polynomials with rational coefficients."""

    parts: tuple          # tuple of (j, Poly)
    var: str = "z"

    def normalized(self):
        d = {}
        for j, P in self.parts:
            d[j] = d.get(j, Poly()) + P
        return ThetaOperator(tuple(sorted((j, P) for j, P in d.items() if not P.is_zero())),
                             self.var)

    def order(self):
        return max(P.deg for _, P in self.parts)

    def to_text(self, theta="t", var=None) -> str:
        return operator_text(self, theta, var or _short(self.var))

    def to_json(self):
        return {"variable": self.var,
                "terms": [{"var_power": j, "theta_poly": [f"{c.numerator}/{c.denominator}" for c in P.c]}
                          for j, P in self.parts]}

    def __eq__(self, other):
        return (isinstance(other, ThetaOperator)
                and self.normalized().parts == other.normalized().parts)

    def scaled(self, c):
        return ThetaOperator(tuple((j, P * c) for j, P in self.parts), self.var)


def _short(var):
    return {"lambda": "l", "psi": "p"}.get(var, var)


def theta_apply(op: ThetaOperator, s) -> LogSeries:
    """Apply sum_j z^j P_j(theta) to a (log-)series."""
    s = as_log_series(s)
    top = max(P.deg for _, P in op.parts)
    powers = [s]
    for _ in range(top):
        powers.append(theta_once(powers[-1]))
    J = len(s.blocks)
    prec = s.prec
    acc = [[None] * prec for _ in range(J)]
    zero = s.blocks[0][0] * 0 if prec else Fraction(0)
    for jb in range(J):
        for k in range(prec):
            acc[jb][k] = zero
    for shift, P in op.parts:
        for i, a in enumerate(P.c):
            if a == 0:
                continue
            for jb in range(J):
                blk = powers[i].blocks[jb]
                for k in range(shift, prec):
                    acc[jb][k] = acc[jb][k] + a * blk[k - shift]
    return LogSeries(tuple(TruncSeries(tuple(acc[jb]), prec, s.var) for jb in range(J)))


def operator_text(op: ThetaOperator, theta="t", var="z") -> str:
    """Canonical text: terms by increasing var power, theta polynomials
    factored over Q into primitive linear factors."""
    parts = []
    for j, P in op.normalized().parts:
        c, items = _factored(P, theta)
        mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
        head = [] if abs(c) == 1 and (items or mono) else [str(abs(c))]
        body = "*".join(head + ([mono] if mono else []) + items)
        parts.append((c < 0, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _factored(P: Poly, t: str):
    """P = c * t^z * prod (a t + b) * R with R primitive and irreducible over Q
    in degree-one terms; returns (c, list of factor strings)."""
    roots, rest = P.rational_roots()
    zero_mult = roots.count(0)
    c = P.lead()
    items = []
    if zero_mult:
        items.append(t if zero_mult == 1 else f"{t}^{zero_mult}")
    for r in sorted(roots, key=lambda r: (abs(r), r)):
        if r == 0:
            continue
        a, b = r.denominator, -r.numerator          # root -b/a -> (a t + b)
        c /= a
        items.append(f"({'' if a == 1 else a}{t}{'+' if b > 0 else '-'}{abs(b)})")
    if rest.deg >= 1:
        _, prim = rest.content_primitive()
        c /= prim.lead()
        items.append(f"({prim.to_str(t)})")
    return c, items


# -- linear dependence over Q(x) --

def _clear_denominators(vec):
    """Multiply a RatFun vector by the lcm of denominators -> Poly vector."""
    L = Poly([1])
    for r in vec:
        if r.den.deg > 0:
            L = L * r.den.exact_div(poly_gcd(L, r.den))
    return [r.num * L.exact_div(r.den) if r.den.deg > 0 else r.num * (1 / r.den.lead())
            for r in vec]


def bareiss_rank_profile(M):
    """Fraction-free elimination on a Poly matrix (list of rows).

    Returns (echelon rows, pivot columns).  Divisions by the previous pivot
    are exact.
    """
    A = [list(row) for row in M]
    nr, nc = len(A), len(A[0]) if A else 0
    pivots = []
    prev = Poly([1])
    r = 0
    for c in range(nc):
        piv = None
        best = None
        for i in range(r, nr):
            if not A[i][c].is_zero():
                key = (A[i][c].deg, len(A[i][c].c))
                if best is None or key < best:
                    piv, best = i, key
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]).exact_div(prev)
            A[i][c] = Poly()
        prev = A[r][c]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return A, pivots


def solve_dependency(vectors):
    """Smallest s with v_s in span(v_0..v_{s-1}); returns [c_0, ..., c_{s-1}, 1]
    with sum c_j v_j = 0, or the string "independent"."""
    vecs = [[x if isinstance(x, RatFun) else RatFun(x) for x in v] for v in vectors]
    if not vecs:
        return "independent"
    dim = len(vecs[0])
    if any(len(v) != dim for v in vecs):
        raise ValueError("vectors of different dimension")
    cols = [_clear_denominators(v) for v in vecs]
    for s in range(len(vecs)):
        M = [[cols[j][i] for j in range(s + 1)] for i in range(dim)]
        _, piv = bareiss_rank_profile(M)
        if len(piv) < s + 1:
            return _nullvector(vecs[:s + 1])
    return "independent"


def _nullvector(vecs):
    """Monic kernel vector of the column matrix [v_0 .. v_s] (last entry 1),
    solved over Q(x) by Gauss-Jordan on the first s columns."""
    s = len(vecs) - 1
    dim = len(vecs[0])
    A = [[vecs[j][i] for j in range(s)] + [-vecs[s][i]] for i in range(dim)]
    sol = rational_solve(A, s)
    return sol + [RatFun(1)]


def rational_solve(A, ncols):
    """Solve the augmented RatFun system A (last column = rhs) by naive
    Gauss-Jordan; raises if inconsistent.  Free variables are set to 0."""
    A = [list(r) for r in A]
    nr = len(A)
    row = 0
    where = [-1] * ncols
    for c in range(ncols):
        piv = next((i for i in range(row, nr) if not A[i][c].is_zero()), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = RatFun(1) / A[row][c]
        A[row] = [x * inv for x in A[row]]
        for i in range(nr):
            if i != row and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[row])]
        where[c] = row
        row += 1
    for i in range(row, nr):
        if not A[i][ncols].is_zero():
            raise ArithmeticError("inconsistent system")
    return [A[where[c]][ncols] if where[c] >= 0 else RatFun(0) for c in range(ncols)]


def naive_dependency(vectors):
    """Same contract as solve_dependency using plain Gauss-Jordan ranks."""
    vecs = [[x if isinstance(x, RatFun) else RatFun(x) for x in v] for v in vectors]
    for s in range(len(vecs)):
        M = [[vecs[j][i] for j in range(s + 1)] for i in range(len(vecs[0]))]
        if _rank(M) < s + 1:
            return _nullvector(vecs[:s + 1])
    return "independent"


def _rank(M):
    A = [list(r) for r in M]
    nr, nc = len(A), len(A[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if not A[i][c].is_zero()), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, nr):
            if not A[i][c].is_zero():
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
    return r
