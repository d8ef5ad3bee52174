"""Series solutions at the point of maximal unipotent monodromy.

For the Dwork family in lambda = 1/(n psi)^n the deformed series is

    w(lambda, s) = sum_k a_k(s) lambda^{k+s},   a_k(s) = Gamma(n(k+s)+1) / Gamma(k+s+1)^n.

The default (normalized) convention divides by a_0(s):

    ta_k(s) = prod_{j=1}^{nk} (n s + j) / prod_{j=1}^{k} (s + j)^n,

whose logarithmic derivatives at s = 0 are generalized harmonic numbers:

    d^i/ds^i log ta_k |_0 = (-1)^{i-1} (i-1)! (n^i H_{nk}^{(i)} - n H_k^{(i)}).

Blocks g_i[k] = d^i/ds^i ta_k |_0, and the log solutions are
w_i = sum_j C(i, j) g_j (log lambda)^{i-j}.

The unnormalized blocks carry a_0(s) = exp(sum_{j>=2} (-1)^j (n^j - n) Z_j s^j / j)
with formal symbols Z_j = zeta(j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .families import DworkFamily, FermatDeformation, multinomial
from .numeric import harmonic
from .ratfun import LogSeries, Poly, ThetaOperator, TruncSeries, ZetaPoly


DEFAULT_M = 30


class FrobeniusError(ValueError):
    pass


# -- fundamental period --

def _as_deformation(fam):
    if isinstance(fam, DworkFamily):
        return fam.as_deformation()
    if isinstance(fam, FermatDeformation):
        return fam
    raise FrobeniusError(f"unsupported family {type(fam).__name__}")


def _solve_counts(base, target):
    """Nonnegative integer c with sum_t c_t base[t] == target, if any
    (base assumed linearly independent)."""
    n = len(target)
    m = len(base)
    # exact Gaussian elimination on the n x m system
    A = [[Fraction(base[t][i]) for t in range(m)] + [Fraction(target[i])] for i in range(n)]
    row = 0
    where = [-1] * m
    for c in range(m):
        piv = next((i for i in range(row, n) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = 1 / A[row][c]
        A[row] = [x * inv for x in A[row]]
        for i in range(n):
            if i != row and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[row])]
        where[c] = row
        row += 1
    if any(A[i][m] != 0 for i in range(row, n)) or -1 in where:
        return None
    sol = [A[where[c]][m] for c in range(m)]
    if any(x.denominator != 1 or x < 0 for x in sol):
        return None
    return [int(x) for x in sol]


@dataclass(frozen=True)
class PeriodVariable:
    """The series variable z = sign / (c psi)^step for c the deformation coefficient."""

    step: int
    coefficient: Fraction

    def describe(self):
        c = self.coefficient
        if c == -self.step:
            return f"1/({self.step}*psi)^{self.step}"
        sign = (-1) ** self.step
        return f"{sign}/({c}*psi)^{self.step}" if c != 1 else f"psi^(-{self.step})"


def _period_terms(fam, m):
    """Coefficient of x^{(m+1)a - 1} in G^m (None if no such term)."""
    a = fam.deformation
    target = [(m + 1) * x - 1 for x in a]
    counts = _solve_counts(fam.base, target)
    if counts is None or sum(counts) != m:
        return None
    return multinomial(counts)


def period_variable(fam) -> PeriodVariable:
    fam = _as_deformation(fam)
    for m in range(1, 10 * sum(fam.weights) + 1):
        if _period_terms(fam, m) is not None:
            return PeriodVariable(m, Fraction(fam.coefficient))
    raise FrobeniusError("no nonconstant period terms found")


def fundamental_period(fam, M: int = DEFAULT_M) -> TruncSeries:
    """Holomorphic period (times psi, up to a constant) as a series in
    z = (-1)^N / (c psi)^N, coefficients for powers 0..M.

    Dwork-n gives (n m)!/(m!)^n in 1/(n psi)^n.
    """
    fam = _as_deformation(fam)
    N = period_variable(fam).step
    coeffs = []
    for t in range(M + 1):
        c = _period_terms(fam, N * t)
        coeffs.append(Fraction(c if c is not None else 0))
    var = "lambda" if Fraction(fam.coefficient) == -len(fam.weights) and N == len(fam.weights) else "z"
    return TruncSeries(tuple(coeffs), M + 1, var)


# -- Frobenius blocks --

def _series_exp(c, order):
    """exp of sum_{j>=1} c[j] s^j truncated at s^order (c[0] ignored)."""
    out = [c[0] * 0 + 1] + [c[0] * 0] * order
    # e' = f' e  =>  k e_k = sum_j j c_j e_{k-j}
    for k in range(1, order + 1):
        acc = c[0] * 0
        for j in range(1, k + 1):
            acc = acc + c[j] * out[k - j] * j
        out[k] = acc / k
    return out


@lru_cache(maxsize=None)
def _normalized_s_series(n, k, order):
    """Taylor coefficients [s^i] ta_k(s), i = 0..order."""
    a0 = Fraction(factorial(n * k), factorial(k) ** n)
    logc = [Fraction(0)]
    for i in range(1, order + 1):
        d = (-1) ** (i - 1) * factorial(i - 1) * (n ** i * harmonic(n * k, i) - n * harmonic(k, i))
        logc.append(d / factorial(i))
    e = _series_exp(logc, order)
    return tuple(a0 * x for x in e)


def a0_zeta_series(n, order):
    """[s^j] a_0(s) = [s^j] Gamma(ns+1)/Gamma(s+1)^n in Q[Z2, Z3, Z4]."""
    if order > 4:
        raise FrobeniusError("formal zeta symbols are available up to Z4")
    logc = [ZetaPoly(0), ZetaPoly(0)]
    for j in range(2, order + 1):
        logc.append(ZetaPoly.symbol(j) * Fraction((-1) ** j * (n ** j - n), j))
    return _series_exp(logc, order)


def dwork_log_blocks(n: int, i_max: int, M: int, normalized: bool = True):
    """g[i][k] for i <= i_max, k < M (lists of Fractions or ZetaPoly)."""
    if i_max > 4 and not normalized:
        raise FrobeniusError("unnormalized blocks are available for i <= 4")
    g = [[None] * M for _ in range(i_max + 1)]
    for k in range(M):
        ser = _normalized_s_series(n, k, i_max)
        for i in range(i_max + 1):
            g[i][k] = factorial(i) * ser[i]
    if normalized:
        return g
    A = [factorial(j) * c for j, c in enumerate(a0_zeta_series(n, i_max))]
    out = [[ZetaPoly(0)] * M for _ in range(i_max + 1)]
    for i in range(i_max + 1):
        for k in range(M):
            acc = ZetaPoly(0)
            for j in range(i + 1):
                acc = acc + A[j] * (comb(i, j) * g[i - j][k])
            out[i][k] = acc
    return out


def unnormalized_blocks_direct(n: int, i_max: int, M: int):
    """Unnormalized blocks from the digamma expansion of log a_k(s):

        d^j/ds^j log a_k |_0 = (-1)^j (j-1)! [n^j (Z_j - H_{nk}^{(j)}) - n (Z_j - H_k^{(j)})],  j >= 2,

    and n (H_{nk} - H_k) for j = 1.  Independent of the normalized route.
    """
    if i_max > 4:
        raise FrobeniusError("formal zeta symbols are available up to Z4")
    out = [[None] * M for _ in range(i_max + 1)]
    for k in range(M):
        ak = Fraction(factorial(n * k), factorial(k) ** n)
        logc = [ZetaPoly(0)]
        for j in range(1, i_max + 1):
            if j == 1:
                d = ZetaPoly(n * (harmonic(n * k) - harmonic(k)))
            else:
                Z = ZetaPoly.symbol(j)
                d = (Z * (n ** j - n) - ZetaPoly(n ** j * harmonic(n * k, j) - n * harmonic(k, j))) \
                    * ((-1) ** j * factorial(j - 1))
            logc.append(d * Fraction(1, factorial(j)))
        e = _series_exp(logc, i_max)
        for i in range(i_max + 1):
            out[i][k] = e[i] * (ak * factorial(i))
    return out


ZETA_RELATION = Fraction(5, 2)      # zeta(2)^2 = (5/2) zeta(4)


def reduce_zeta(z: ZetaPoly) -> ZetaPoly:
    """Apply zeta(2)^2 = (5/2) zeta(4) (both are rational multiples of pi^4)."""
    out = ZetaPoly(0)
    for (a, b, c), v in z.t.items():
        term = ZetaPoly({(a % 2, b, c + a // 2): v * ZETA_RELATION ** (a // 2)})
        out = out + term
    return out


def change_of_basis(n: int = 5, i_max: int = 4, M: int = 12, reduce: bool = True):
    """Matrix T with g^u_i = sum_j T[i][j] g_j, solved from the first i_max+1
    coefficients and checked on the rest.  Returns T (ZetaPoly entries)."""
    gn = dwork_log_blocks(n, i_max, M, normalized=True)
    gu = unnormalized_blocks_direct(n, i_max, M)
    size = i_max + 1
    # columns k = 0..size-1: gu_i[k] = sum_j T_ij gn_j[k]
    A = [[gn[j][k] for j in range(size)] for k in range(size)]
    inv = _rat_inverse(A)
    T = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = ZetaPoly(0)
            for k in range(size):
                acc = acc + gu[i][k] * inv[j][k]
            row.append(reduce_zeta(acc) if reduce else acc)
        T.append(row)
    for i in range(size):
        for k in range(M):
            pred = ZetaPoly(0)
            for j in range(size):
                pred = pred + T[i][j] * gn[j][k]
            lhs = reduce_zeta(gu[i][k]) if reduce else gu[i][k]
            if reduce_zeta(pred) != lhs:
                raise FrobeniusError(f"change of basis fails at i = {i}, k = {k}")
    return T


def _rat_inverse(A):
    n = len(A)
    M = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise FrobeniusError("singular block matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [r[n:] for r in M]


def is_unit_lower_triangular(T) -> bool:
    for i, row in enumerate(T):
        for j, x in enumerate(row):
            if j > i and x != ZetaPoly(0):
                return False
            if j == i and x != ZetaPoly(1):
                return False
    return True


# -- log solutions --

@dataclass(frozen=True)
class LogSolution:
    index: int
    blocks: tuple        # g_0 .. g_index as TruncSeries

    def series(self) -> LogSeries:
        """w_i = sum_j C(i, j) g_j (log)^{i-j} as a LogSeries (block m = log^m)."""
        i = self.index
        out = []
        for m in range(i + 1):
            g = self.blocks[i - m]
            c = comb(i, m)
            out.append(TruncSeries(tuple(c * x for x in g.coeffs), g.prec, g.var))
        return LogSeries(tuple(out))

    def to_json(self):
        return {"index": self.index,
                "assembly": "w_i = sum_j C(i,j) g_j (log z)^(i-j)",
                "blocks": [[f"{c.numerator}/{c.denominator}" for c in b.coeffs]
                           for b in self.blocks]}


def indicial_roots(op: ThetaOperator):
    """Roots (with multiplicity) of the theta polynomial at var^0."""
    op = op.normalized()
    if not op.parts:
        raise FrobeniusError("zero operator")
    P = dict(op.parts).get(0)
    if P is None or P.is_zero():
        raise FrobeniusError("no var^0 part: not written at a regular singular point")
    roots, rest = P.rational_roots()
    if rest.deg > 0:
        raise FrobeniusError(f"indicial polynomial has irrational roots: {rest.to_str('t')}")
    return roots


def log_solutions(fam, i_max: int = 4, M: int = DEFAULT_M, op: ThetaOperator | None = None):
    """Normalized log solutions w_0..w_{i_max} for a Dwork family."""
    if isinstance(fam, DworkFamily):
        n = fam.n
    elif isinstance(fam, int):
        n = fam
    else:
        raise FrobeniusError("log solutions are implemented for Dwork families")
    if op is not None:
        roots = indicial_roots(op)
        if any(r != 0 for r in roots) or len(roots) < i_max + 1:
            raise FrobeniusError(f"operator is not maximally unipotent: roots {roots}")
    if i_max > n - 2 and op is None:
        raise FrobeniusError(f"Dwork-{n} has {n - 1} log solutions")
    g = dwork_log_blocks(n, i_max, M + 1)
    var = "lambda"
    blocks = [TruncSeries(tuple(g[i]), M + 1, var) for i in range(i_max + 1)]
    return [LogSolution(i, tuple(blocks[:i + 1])) for i in range(i_max + 1)]


# -- hypergeometric data --

@dataclass(frozen=True)
class HypergeometricData:
    upper: tuple
    lower: tuple
    scale: Fraction
    variable: str = "z"

    def ratio(self, k):
        num = self.scale
        for a in self.upper:
            num *= k + a
        den = Fraction(k + 1)
        for b in self.lower:
            den *= k + b
        return num / den

    def series(self, M):
        c = [Fraction(1)]
        for k in range(M):
            c.append(c[-1] * self.ratio(k))
        return TruncSeries(tuple(c), M + 1, self.variable)

    def label(self):
        def f(xs):
            return ",".join(str(x) for x in xs)
        return f"{len(self.upper)}F{len(self.lower)}({f(self.upper)}; {f(self.lower)}; {self.scale}*{self.variable})"

    def to_json(self):
        return {"upper": [str(a) for a in self.upper], "lower": [str(b) for b in self.lower],
                "scale": str(self.scale), "variable": self.variable}


def _nullspace_vector(rows, ncols):
    """One nonzero rational kernel vector, or None if the kernel is trivial."""
    A = [list(map(Fraction, r)) for r in rows]
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in piv_cols]
    if not free:
        return None
    fc = free[0]
    v = [Fraction(0)] * ncols
    v[fc] = Fraction(1)
    for i, c in enumerate(piv_cols):
        v[c] = -A[i][fc]
    return v


def extract_hypergeometric(series: TruncSeries, max_degree: int = 8) -> HypergeometricData:
    """Fit C(k+1) Q(k) = C(k) P(k) with deg P, deg Q <= d for the smallest d,
    verify on all coefficients, and read off parameters from rational roots."""
    C = list(series.coeffs)
    nz = 0
    while nz < len(C) and C[nz] != 0:
        nz += 1
    if nz < 12:
        raise FrobeniusError("need at least 12 nonzero leading coefficients")
    if C[0] != 1:
        C = [c / C[0] for c in C]
    K = nz - 1
    for d in range(max_degree + 1):
        if 2 * (d + 1) > K:
            break
        rows = []
        for k in range(K):
            rows.append([C[k] * k ** i for i in range(d + 1)] +
                        [-C[k + 1] * k ** i for i in range(d + 1)])
        v = _nullspace_vector(rows, 2 * (d + 1))
        if v is None:
            continue
        P, Q = Poly(v[:d + 1]), Poly(v[d + 1:])
        if Q.is_zero() or P.is_zero():
            continue
        if any(C[k + 1] * Q(k) != C[k] * P(k) for k in range(len(C) - 1)):
            continue
        pr, prest = P.rational_roots()
        qr, qrest = Q.rational_roots()
        if prest.deg > 0 or qrest.deg > 0:
            raise FrobeniusError("ratio does not split over Q")
        scale = P.lead() / Q.lead()
        upper = sorted(-r for r in pr)
        lower = sorted(-r for r in qr)
        # cancel common factors
        for a in list(upper):
            if a in lower:
                upper.remove(a)
                lower.remove(a)
        if 1 in lower:
            lower.remove(Fraction(1))
        else:
            upper.append(Fraction(1))
            upper.sort()
        return HypergeometricData(tuple(upper), tuple(lower), scale, series.var)
    raise FrobeniusError("no rational ratio fit at the attempted degrees")


def dwork_hypergeometric(n: int) -> HypergeometricData:
    """(1/n, ..., (n-1)/n; 1, ..., 1) with scale n^n."""
    return HypergeometricData(tuple(Fraction(i, n) for i in range(1, n)),
                              tuple([Fraction(1)] * (n - 2)), Fraction(n ** n), "lambda")
