"""Zeta functions from point counts.

Z(X, T) = exp(sum_r N_r T^r / r).  For a smooth projective curve of genus g
this is P_1(T) / ((1 - T)(1 - qT)) with P_1(T) = prod (1 - alpha_i T),
|alpha_i| = sqrt(q), and N_r = q^r + 1 - sum alpha_i^r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .counting import (CountResult, count_affine_curve, count_dwork_fast,
                       count_mirror_closure, count_projective)
from .families import DworkFamily, SuperellipticCurve, defining_polynomial
from .finite_field import ExtField, embedding, make_ext_field
from .numeric import valuation
from .ratfun import TruncSeries


ROOT_TOL = 1e-9


class ZetaError(ValueError):
    pass


# -- series --

def zeta_series(counts, R: int | None = None) -> TruncSeries:
    """Coefficients of exp(sum_{r<=R} N_r T^r / r), T^0..T^R, asserted integral."""
    N = list(counts)
    R = len(N) if R is None else R
    if R > len(N):
        raise ZetaError(f"need counts through r = {R}, have {len(N)}")
    # Z' = Z * sum N_r T^{r-1}  =>  k z_k = sum_{r=1}^k N_r z_{k-r}
    z = [Fraction(1)]
    for k in range(1, R + 1):
        z.append(sum(Fraction(N[r - 1]) * z[k - r] for r in range(1, k + 1)) / k)
        if z[k].denominator != 1:
            raise ZetaError(f"non-integral zeta coefficient at T^{k}: {z[k]} (miscount?)")
    return TruncSeries(tuple(z), R + 1, "T")


def series_of_rational(num, den, R: int) -> TruncSeries:
    """Power series of num(T)/den(T) (integer lists, low first, den[0] = 1)."""
    if den[0] != 1:
        raise ZetaError("denominator must have constant term 1")
    out = []
    for k in range(R + 1):
        c = Fraction(num[k] if k < len(num) else 0)
        for j in range(1, min(k, len(den) - 1) + 1):
            c -= den[j] * out[k - j]
        out.append(c)
    return TruncSeries(tuple(out), R + 1, "T")


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# -- Newton identities --

def power_sums_from_poly(P, R):
    """s_r = sum alpha_i^r for P(T) = prod (1 - alpha_i T), r = 1..R."""
    g2 = len(P) - 1
    s = []
    for r in range(1, R + 1):
        # T P'(T)/P(T) = -sum_r s_r T^r
        acc = -r * (P[r] if r <= g2 else 0)
        for j in range(1, r):
            acc -= (P[j] if j <= g2 else 0) * s[r - j - 1]
        s.append(acc)
    return s


def counts_from_numerator(P, q, R):
    """Predicted N_r = q^r + 1 - s_r for a curve with numerator P."""
    return [q ** r + 1 - s for r, s in enumerate(power_sums_from_poly(P, R), start=1)]


@dataclass
class ZetaData:
    q: int
    counts: list
    series: TruncSeries
    numerator: list | None = None
    denominator: list = field(default_factory=list)
    roots: list | None = None          # complex reciprocal roots

    def to_json(self):
        return {"q": str(self.q), "counts": [str(n) for n in self.counts],
                "series": [str(c) for c in self.series.coeffs],
                "numerator": None if self.numerator is None else [str(a) for a in self.numerator],
                "denominator": [str(a) for a in self.denominator],
                "root_abs": None if self.roots is None else [f"{abs(a):.12f}" for a in self.roots]}


def reciprocal_roots(P):
    """Complex alpha with P(T) = prod (1 - alpha T)."""
    if len(P) <= 1:
        return []
    # alpha are roots of T^d P(1/T) = sum P[j] T^{d-j}
    return list(np.roots([float(c) for c in P]))


def fit_weil_curve(counts, q: int, g: int) -> list:
    """Numerator P_1 (integers, low first) of a genus-g curve from N_1..N_m, m >= g.

    The first g power sums fix a_1..a_g by Newton's identities; the
    functional equation a_{2g-j} = q^{g-j} a_j fills in the rest.  Extra
    counts are checked, and the Weil bound |alpha| = sqrt(q) is enforced.
    """
    if g == 0:
        P = [1]
    else:
        if len(counts) < g:
            raise ZetaError(f"need at least {g} counts")
        s = [q ** r + 1 - counts[r - 1] for r in range(1, g + 1)]
        a = [Fraction(1)]
        for k in range(1, g + 1):
            # k a_k = -sum_{j=1}^{k} s_j a_{k-j}
            a.append(-sum(s[j - 1] * a[k - j] for j in range(1, k + 1)) / k)
        if any(x.denominator != 1 for x in a):
            raise ZetaError("non-integral numerator coefficients")
        a = [int(x) for x in a]
        P = a + [q ** (g - j) * a[j] for j in range(g - 1, -1, -1)]
        # bound |a_1| <= 2 g sqrt(q) first (exact), then all roots
        if a[1] * a[1] > 4 * g * g * q:
            raise ZetaError(f"a_1 = {a[1]} violates the Weil bound 2g*sqrt(q) for q = {q}")
        for alpha in reciprocal_roots(P):
            if abs(abs(alpha) - q ** 0.5) > ROOT_TOL * max(1.0, q ** 0.5):
                raise ZetaError(f"reciprocal root {alpha} has |alpha| != sqrt({q})")
    pred = counts_from_numerator(P, q, len(counts))
    if pred != list(counts):
        raise ZetaError(f"counts {list(counts)} inconsistent with fitted numerator (predicts {pred})")
    return P


def curve_zeta(counts, q, g) -> ZetaData:
    P = fit_weil_curve(counts, q, g)
    den = poly_mul([1, -1], [1, -q])
    ser = zeta_series(counts)
    fitted = series_of_rational(P, den, len(counts))
    if fitted.coeffs != ser.coeffs:
        raise ZetaError("fitted rational function does not reproduce the series")
    return ZetaData(q, list(counts), ser, P, den, reciprocal_roots(P))


# -- slopes --

@dataclass(frozen=True)
class SlopeProfile:
    slopes: tuple          # ((slope, multiplicity), ...)

    def total(self):
        return sum(m for _, m in self.slopes)

    def part(self, lo=Fraction(0), hi=Fraction(1)):
        """Slopes in [lo, hi) (the unit-root style part for [0, 1))."""
        return SlopeProfile(tuple((s, m) for s, m in self.slopes if lo <= s < hi))

    def expanded(self):
        return sorted(s for s, m in self.slopes for _ in range(m))

    def to_json(self):
        return [{"slope": f"{s.numerator}/{s.denominator}", "multiplicity": m}
                for s, m in self.slopes]


def newton_slopes(P, p: int) -> SlopeProfile:
    """Lower convex hull of (i, ord_p P_i); slopes with horizontal lengths."""
    if not P or P[0] != 1:
        raise ZetaError("need P(0) = 1")
    pts = [(i, valuation(int(c), p)) for i, c in enumerate(P) if c != 0]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point if it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    out = {}
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = Fraction(y2 - y1, x2 - x1)
        out[s] = out.get(s, 0) + (x2 - x1)
    return SlopeProfile(tuple(sorted(out.items())))


# -- mirror congruence --

@dataclass
class WanRow:
    r: int
    q: int
    N_X: int
    N_Y: int
    difference: int
    valuation: int | None
    required: int
    passed: bool

    def to_json(self):
        return {"r": self.r, "q": str(self.q), "N_X": str(self.N_X), "N_Y": str(self.N_Y),
                "difference": str(self.difference), "valuation": self.valuation,
                "required": self.required, "pass": self.passed}


@dataclass
class WanReport:
    n: int
    p: int
    base_r: int
    psi: int
    rows: list

    @property
    def passed(self):
        return all(r.passed for r in self.rows)

    def to_json(self):
        return {"n": self.n, "p": self.p, "base_degree": self.base_r, "psi": str(self.psi),
                "rows": [r.to_json() for r in self.rows], "pass": self.passed}


def wan_congruence_check(n: int, psi: int, p: int, r_max: int, base_r: int = 1) -> WanReport:
    """Compare N_r(X_psi) with N_r of the projective closure of the torus mirror.

    ``psi`` is an element of F_{p^base_r} (integer encoding); counts run over
    F_{q^r}, q = p^base_r, with psi embedded.
    """
    base = make_ext_field(p, base_r)
    if psi != 0 and base.pow(psi, n) == 1:
        raise ZetaError(f"psi^{n} = 1: singular fiber")
    if n % p == 0:
        raise ZetaError("p divides n: the family degenerates")
    rows = []
    for r in range(1, r_max + 1):
        F = make_ext_field(p, base_r * r)
        x = psi if r == 1 else embedding(base, F)[psi]
        NX = _dwork_projective(n, x, F)
        NY = count_mirror_closure(n, x, F)
        diff = NX - NY
        v = None if diff == 0 else valuation(diff, p)
        need = r * base_r
        rows.append(WanRow(r, F.q, NX, NY, diff, v, need, diff == 0 or v >= need))
    return WanReport(n, p, base_r, psi, rows)


def _dwork_projective(n, psi, F: ExtField):
    if (F.q ** n - 1) // (F.q - 1) <= 2 ** 20:
        return count_projective(defining_polynomial(DworkFamily(n), psi, F), F).N
    return count_dwork_fast(n, psi, F)["projective"]


# -- curves A and B --

@dataclass
class CurvePair:
    A: CountResult
    B: CountResult
    degenerate: bool

    def to_json(self):
        return {"A": self.A.to_json(), "B": self.B.to_json(), "degenerate": self.degenerate}


def count_curves_AB(psi: int, p: int, r: int = 1) -> CurvePair:
    F = make_ext_field(p, r)
    A = count_affine_curve(SuperellipticCurve("A", psi, (p, r)), F)
    B = count_affine_curve(SuperellipticCurve("B", psi, (p, r)), F)
    c = F.pow(psi, 5)
    return CurvePair(A, B, c in (0, 1))


# -- elliptic convenience --

def fermat_cubic_counts(psi: int, p: int, R: int) -> list:
    """Projective counts of x^3 + y^3 + z^3 - 3 psi xyz over F_{p^r}, r = 1..R."""
    out = []
    for r in range(1, R + 1):
        F = make_ext_field(p, r)
        out.append(count_projective(defining_polynomial(DworkFamily(3), psi, F), F).N)
    return out

