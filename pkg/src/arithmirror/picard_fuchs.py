"""Picard-Fuchs operators by Griffiths-Dwork pole-order reduction.

A label (u, k) stands for the form x^u dx / Q^k (equivalently x^u Omega/Q^k
in projective notation) with weighted homogeneity

    k * deg Q = wdeg(u) + sum(w).

For Q = sum_t c_t x^{m_t}, differentiating x^a / Q^{k-1} gives the relation

    (k-1) sum_t c_t m_{t,i} [a + m_t - e_i, k] = a_i [a - e_i, k-1]

for every a >= 0 and coordinate i.  Relations only connect labels in one
coset u0 + Lambda, Lambda the lattice spanned by the m_t, so each derivation
works inside the coset of its starting label.

Reduction runs from the highest pole order down.  At each level the top
parts of all relations are brought to row echelon form over Q(psi);
pivot labels are eliminated in favour of the remaining labels plus lower
order terms.  Relations whose top part cancels become relations one level
down.  The non-pivot labels of all levels form the reduced basis.

The parameter derivative of a label is

    d/dpsi [u, k] = -k c'(psi) [u + a, k + 1]

for the deformation term c(psi) x^a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod

from .families import DworkFamily, FermatDeformation
from .ratfun import Poly, RatFun, ThetaOperator, poly_gcd, solve_dependency


class ReductionError(ValueError):
    pass


# -- families as polynomials over Q(psi) --

@dataclass(frozen=True)
class PFSystem:
    """Q = sum of base monomials + coefficient * psi * x^deformation."""

    weights: tuple
    degree: int
    monomials: tuple        # exponent vectors
    coeffs: tuple           # RatFun in psi
    dcoeffs: tuple          # d/dpsi of coeffs

    @property
    def n(self):
        return len(self.weights)


def pf_system(fam) -> PFSystem:
    if isinstance(fam, DworkFamily):
        fam = fam.as_deformation()
    if not isinstance(fam, FermatDeformation):
        raise ReductionError("supported: Dwork families and Fermat-type deformations")
    psi = RatFun.x()
    monos = tuple(tuple(m) for m in fam.base) + (tuple(fam.deformation),)
    c = Fraction(fam.coefficient)
    coeffs = tuple([RatFun(1)] * len(fam.base)) + (psi * c,)
    dcoeffs = tuple([RatFun(0)] * len(fam.base)) + (RatFun(c),)
    return PFSystem(tuple(fam.weights), fam.degree, monos, coeffs, dcoeffs)


# -- lattice membership via Hermite normal form --

def hermite_rows(gens):
    """Row-style HNF basis of the Z-span of integer vectors."""
    rows = [list(g) for g in gens if any(g)]
    n = len(rows[0]) if rows else 0
    basis = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                f = r[col] // piv[col]
                for j in range(n):
                    r[j] -= f * piv[j]
            nz = [r for r in nz if r[col] != 0]
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        rows = [r for r in rows if r[col] == 0 and any(r)]
        basis.append(piv)
        col += 1
    return basis


def in_lattice(v, hnf) -> bool:
    v = list(v)
    for row in hnf:
        c = next(j for j, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        f = v[c] // row[c]
        v = [a - f * b for a, b in zip(v, row)]
    return not any(v)


# -- the reduction engine --

Label = tuple      # (u tuple, k)


def _add_into(d, label, c):
    v = d.get(label)
    v = c if v is None else v + c
    if v.is_zero():
        d.pop(label, None)
    else:
        d[label] = v


def _compositions(weights, total):
    """All u >= 0 with sum w_i u_i == total."""
    n = len(weights)
    out = []

    def rec(i, rem, cur):
        if i == n - 1:
            if rem % weights[i] == 0:
                out.append(tuple(cur + [rem // weights[i]]))
            return
        for x in range(rem // weights[i] + 1):
            rec(i + 1, rem - x * weights[i], cur + [x])

    if total >= 0:
        rec(0, total, [])
    return out


class GDEngine:
    """Reduced echelon of Griffiths-Dwork relations up to pole order ``kmax``."""

    def __init__(self, system: PFSystem, u0, kmax: int):
        self.S = system
        self.u0 = tuple(u0)
        self.kmax = 0
        self.hnf = hermite_rows(system.monomials)
        # integer-polynomial coefficients, all scaled by one common integer
        dens = [x.denominator for c in system.coeffs for x in c.num.c]
        self._iscale = lcm(*dens)
        self._icoeffs = [tuple(int(x * self._iscale) for x in c.num.c) for c in system.coeffs]
        sw = sum(system.weights)
        if (sum(a * w for a, w in zip(self.u0, system.weights)) + sw) % system.degree:
            raise ReductionError(f"start label {self.u0} is not weighted-homogeneous")
        self.rows = {}        # level -> {pivot label: (top dict, low dict)}
        self._labels = {}
        self.extend_to(kmax)

    def in_coset(self, u) -> bool:
        return in_lattice([a - b for a, b in zip(u, self.u0)], self.hnf)

    def labels(self, k):
        S = self.S
        tot = k * S.degree - sum(S.weights)
        return [u for u in _compositions(S.weights, tot) if self.in_coset(u)]

    def relations(self, k):
        """Relations whose top level is k: (top dict, low dict), top == low."""
        S = self.S
        out = []
        tot = (k - 1) * S.degree - sum(S.weights)
        for i in range(S.n):
            # a >= 0 with wdeg(a - e_i) = tot
            for a in _compositions(S.weights, tot + S.weights[i]):
                b = tuple(x - (j == i) for j, x in enumerate(a))
                if not self.in_coset(b):
                    continue
                top = {}
                for m, c in zip(S.monomials, self._icoeffs):
                    if m[i]:
                        lab = (tuple(x + y for x, y in zip(b, m)), k)
                        _ip_add_into(top, lab, _ip_scale(c, (k - 1) * m[i]), 1)
                low = {}
                if a[i] and k - 1 >= 1:
                    low[(b, k - 1)] = (a[i] * self._iscale,)
                if top or low:
                    out.append((top, low))
        return out

    def extend_to(self, kmax: int):
        """Add pole-order levels up to kmax; lower echelons absorb the
        relations pushed down from the new levels."""
        for k in range(self.kmax + 1, kmax + 1):
            self.rows[k] = {}
            self._labels[k] = self.labels(k)
            for top, low in (self.relations(k) if k >= 2 else []):
                self._insert(k, dict(top), dict(low))
        self.kmax = max(self.kmax, kmax)

    def _insert(self, k, top, low):
        rows = self.rows[k]
        self._reduce_against(rows, top, low)
        if not top:
            if low and k >= 2:
                # sum(low) = 0 is a relation one level down
                self._insert(k - 1, low, {})
            return
        piv = min(top, key=lambda lab: _pivot_key(lab, top[lab]))
        # row echelon in insertion order: later rows never contain earlier
        # pivots, so one ordered pass eliminates every pivot
        rows[piv] = (top[piv], top, low)

    def basis_at(self, k):
        return sorted((u, k) for u in self._labels[k] if (u, k) not in self.rows[k])

    @staticmethod
    def _reduce_against(rows, top, low):
        """Fraction-free elimination of a relation with integer polynomial
        entries; relations may be rescaled freely."""
        polyscaled = False
        for piv, (alpha, t2, l2) in rows.items():
            f = top.get(piv)
            if f is None:
                continue
            if len(alpha) == 1:
                a0 = alpha[0]
                # top <- a0 * top - f * t2
                for d in (top, low):
                    for lab in d:
                        d[lab] = _ip_scale(d[lab], a0)
            else:
                for d in (top, low):
                    for lab in d:
                        d[lab] = _ip_mul(d[lab], alpha)
                polyscaled = True
            for lab, c in t2.items():
                _ip_add_into(top, lab, _ip_mul(f, c), -1)
            for lab, c in l2.items():
                _ip_add_into(low, lab, _ip_mul(f, c), -1)
        _ip_normalize(top, low, polyscaled)

    def reduce_level(self, k, elem):
        """Eliminate pivot labels of level k from elem (in place)."""
        for piv, (alpha, top, low) in self.rows.get(k, {}).items():
            f = elem.get(piv)
            if f is None:
                continue
            g = f / RatFun(Poly(alpha))
            for l2, c in top.items():
                _add_into(elem, l2, -(g * RatFun(Poly(c))))
            # pivot = (low - (top - alpha pivot)) / alpha
            for l2, c in low.items():
                _add_into(elem, l2, g * RatFun(Poly(c)))

    def normal_form(self, elem):
        elem = dict(elem)
        for lab in elem:
            if lab[1] > self.kmax:
                raise ReductionError(f"label {lab} above engine level {self.kmax}")
            if lab[1] < 1:
                raise ReductionError("pole order must be >= 1")
        for k in range(self.kmax, 0, -1):
            self.reduce_level(k, elem)
        return elem

    def basis_labels(self):
        return [lab for k in range(1, self.kmax + 1) for lab in self.basis_at(k)]

    def vector(self, elem):
        nf = self.normal_form(elem)
        idx = self.basis_labels()
        extra = set(nf) - set(idx)
        if extra:
            raise ReductionError(f"normal form left non-basis labels {sorted(extra)[:3]}")
        return [nf.get(lab, RatFun(0)) for lab in idx]


def _pivot_key(label, coeff):
    u, _ = label
    return (0 if len(coeff) == 1 else 1, -max(u), tuple(-x for x in u))


# -- integer polynomials as int tuples, low degree first --

def _ip_trim(c):
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _ip_scale(a, k):
    return tuple(x * k for x in a) if k else ()


def _ip_mul(a, b):
    if not a or not b:
        return ()
    if len(b) == 1:
        return _ip_scale(a, b[0])
    if len(a) == 1:
        return _ip_scale(b, a[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _ip_add_into(d, label, c, sign):
    v = d.get(label)
    if v is None:
        v = c if sign > 0 else tuple(-x for x in c)
    else:
        n = max(len(v), len(c))
        v = v + (0,) * (n - len(v))
        cc = c + (0,) * (n - len(c))
        v = _ip_trim([x + sign * y for x, y in zip(v, cc)])
    if v:
        d[label] = v
    else:
        d.pop(label, None)


def _ip_normalize(top, low, polyscaled):
    """Divide a relation by its integer content (and polynomial content if a
    polynomial pivot was used)."""
    entries = list(top.values()) + list(low.values())
    if not entries:
        return
    if polyscaled:
        cont = Poly(entries[0])
        for e in entries[1:]:
            if cont.deg == 0:
                break
            cont = poly_gcd(cont, Poly(e))
        if cont.deg > 0:
            for d in (top, low):
                for lab in d:
                    q = Poly(d[lab]).exact_div(cont)
                    d[lab] = q
            # back to integers with a common denominator
            den = lcm(*(x.denominator for d in (top, low) for v in d.values() for x in v.c))
            for d in (top, low):
                for lab in d:
                    d[lab] = tuple(int(x * den) for x in d[lab].c)
            entries = list(top.values()) + list(low.values())
    g = 0
    for e in entries:
        for x in e:
            g = gcd(g, x)
            if g == 1:
                return
    if g > 1:
        for d in (top, low):
            for lab in d:
                d[lab] = tuple(x // g for x in d[lab])


# -- terms and derivatives --

@dataclass(frozen=True)
class MonomialTerm:
    label: tuple      # (u, k)
    coeff: RatFun


def psi_derivative(elem, system: PFSystem):
    """d/dpsi of sum coeff * [u, k] (coefficients are RatFun in psi)."""
    if isinstance(elem, MonomialTerm):
        elem = {elem.label: elem.coeff}
    out = {}
    for (u, k), c in elem.items():
        dc = c.deriv()
        if not dc.is_zero():
            _add_into(out, (u, k), dc)
        for m, cp in zip(system.monomials, system.dcoeffs):
            if cp.is_zero():
                continue
            lab = (tuple(x + y for x, y in zip(u, m)), k + 1)
            _add_into(out, lab, c * cp * (-k))
    return out


def griffiths_reduce(term: MonomialTerm, fam, u0=None):
    """Rewrite one term through the level-k relations.

    Returns the resulting terms; if the label lies in the Jacobian span the
    result has pole order k - 1 only.
    """
    S = pf_system(fam)
    u, k = term.label
    eng = GDEngine(S, u0 if u0 is not None else u, k)
    elem = {term.label: term.coeff}
    eng.reduce_level(k, elem)
    return [MonomialTerm(lab, c) for lab, c in sorted(elem.items())]


# -- operators --

@dataclass(frozen=True)
class DifferentialOperator:
    """sum_j coeffs[j] (d/dvar)^j with RatFun coefficients."""

    coeffs: tuple
    var: str = "psi"

    @property
    def order(self):
        return len(self.coeffs) - 1

    def monic(self):
        lead = self.coeffs[-1]
        return DifferentialOperator(tuple(c / lead for c in self.coeffs), self.var)

    def to_text(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            d = "" if j == 0 else ("D" if j == 1 else f"D^{j}")
            parts.append("*".join(s for s in (f"({c.to_str('psi')})", d) if s))
        return " + ".join(parts)

    def to_json(self):
        return {"variable": self.var, "style": "d",
                "terms": [{"order": j, "coeff": c.to_str(self.var)}
                          for j, c in enumerate(self.coeffs) if not c.is_zero()]}


@dataclass
class PFResult:
    operator: DifferentialOperator
    basis: list
    vectors: list
    start: tuple
    prefactor: RatFun


def derive_picard_fuchs(fam, start=None, prefactor=None, max_order=8) -> PFResult:
    """Minimal operator in d/dpsi annihilating prefactor(psi) * [u0, k0].

    ``start`` is the label (u0, k0); by default the holomorphic form
    (0, 1).  The pole-order range of the engine grows until a dependence
    among the successive derivatives appears.
    """
    S = pf_system(fam)
    if start is None:
        start = (tuple([0] * S.n), 1)
    u0, k0 = start
    pre = RatFun(1) if prefactor is None else prefactor
    eng = GDEngine(S, u0, k0)
    chain = [{(tuple(u0), k0): pre}]
    for s in range(1, max_order + 1):
        eng.extend_to(k0 + s)
        chain.append(eng.normal_form(psi_derivative(chain[-1], S)))
        vecs = [eng.vector(e) for e in chain]
        dep = solve_dependency(vecs)
        if dep != "independent":
            op = DifferentialOperator(tuple(dep), "psi")
            return PFResult(op, eng.basis_labels(), vecs, (tuple(u0), k0), pre)
    raise ReductionError(f"no dependence up to order {max_order}")


def apply_to_elem(op: DifferentialOperator, elem, system, engine):
    """Normal form of op applied to a label combination (should vanish)."""
    acc = {}
    cur = dict(elem)
    for c in op.coeffs:
        for lab, v in cur.items():
            _add_into(acc, lab, v * c)
        cur = psi_derivative(cur, system)
    return engine.normal_form(acc)


# -- variable changes --

def falling(j) -> Poly:
    """theta (theta - 1) ... (theta - j + 1)."""
    out = Poly([1])
    for i in range(j):
        out = out * Poly([-i, 1])
    return out


def to_theta_laurent(op: DifferentialOperator) -> dict:
    """Write op (times a common factor) as sum_e psi^e R_e(theta_psi)."""
    terms = [(c / RatFun(Poly.x()) ** j, j) for j, c in enumerate(op.coeffs)]
    den = Poly([1])
    for c, _ in terms:
        if not c.is_zero():
            g = c.den
            den = den * g.exact_div(poly_gcd(den, g))
    out = {}
    for c, j in terms:
        if c.is_zero():
            continue
        A = (c * RatFun(den)).num     # polynomial
        if (c * RatFun(den)).den.deg > 0:
            raise ReductionError("denominator clearing failed")
        ff = falling(j)
        for e, a in enumerate(A.c):
            if a:
                out[e] = out.get(e, Poly()) + ff * a
    return {e: P for e, P in out.items() if not P.is_zero()}


def change_variable(laurent: dict, N: int, c=Fraction(1), var="z") -> ThetaOperator:
    """Substitute z = c psi^{-N}, theta_psi = -N theta_z.

    Requires all psi exponents congruent mod N.  The result is scaled so
    that the lowest z power has leading theta coefficient 1.
    """
    es = sorted(laurent)
    e0 = es[0]
    if any((e - e0) % N for e in es):
        raise ReductionError("operator is not a function of psi^N")
    J = max((e - e0) // N for e in es)
    parts = []
    c = Fraction(c)
    for e in es:
        j = (e - e0) // N
        R = laurent[e].scale_var(-N) * c ** j
        parts.append((J - j, R))
    op = ThetaOperator(tuple(parts), var).normalized()
    lead = op.parts[0][1].lead()
    return op.scaled(1 / lead)


def theta_form_in_psi(op: DifferentialOperator) -> ThetaOperator:
    """Polynomial-coefficient theta_psi form, normalized like change_variable
    (psi powers kept positive)."""
    lau = to_theta_laurent(op)
    e0 = min(lau)
    parts = tuple((e - e0, P) for e, P in sorted(lau.items()))
    opt = ThetaOperator(parts, "psi").normalized()
    return opt.scaled(1 / opt.parts[-1][1].lead())


def normalize_theta(op: ThetaOperator) -> ThetaOperator:
    """Divide by the leading coefficient of the lowest power part."""
    op = op.normalized()
    return op.scaled(1 / op.parts[0][1].lead())


def quintic_lambda_operator(fam=None) -> ThetaOperator:
    """Derived quintic operator in lambda = 1/(5 psi)^5, theta = lambda d/dlambda."""
    fam = fam or DworkFamily(5)
    res = derive_picard_fuchs(fam, prefactor=RatFun.x())
    return change_variable(to_theta_laurent(res.operator), 5, Fraction(1, 5 ** 5), "lambda")


def dwork_theta_operator(n: int, var="lambda") -> ThetaOperator:
    """Derived Dwork-n operator in lambda = 1/(n psi)^n applied to psi * [0, 1]."""
    res = derive_picard_fuchs(DworkFamily(n), prefactor=RatFun.x())
    return change_variable(to_theta_laurent(res.operator), n, Fraction(1, n ** n), var)


# -- mirror invariant basis --

def invariant_basis_relations(n: int = 5):
    """Matrix M with theta_w^j omega_1 = sum_l M[j][l] omega_{l+1}.

    omega_l = P_l Omega / Q^l with P_l = (-1)^{l-1} (l-1)! psi^l (x_1...x_n)^{l-1},
    theta_w = -(1/n) psi d/dpsi.  Each step is computed with psi_derivative
    and matched against the omega_l label by label.
    """
    S = pf_system(DworkFamily(n))
    eps = tuple([1] * n)
    psi = RatFun.x()

    def omega(l):
        c = (-1) ** (l - 1) * prod(range(1, l))
        return {(tuple((l - 1) * e for e in eps), l): psi ** l * c}

    size = n - 1
    omegas = [omega(l) for l in range(1, size + 1)]

    def theta_w(elem):
        d = psi_derivative(elem, S)
        return {lab: c * psi * Fraction(-1, n) for lab, c in d.items()}

    def coords(elem):
        row = []
        rest = dict(elem)
        for om in omegas:
            (lab, c), = om.items()
            f = rest.pop(lab, RatFun(0)) / c
            if not f.is_const():
                raise ReductionError("coordinate is not constant")
            row.append(f.const_value())
        if rest:
            raise ReductionError("element leaves the omega span")
        return row

    M = []
    cur = omegas[0]
    for _ in range(size):
        M.append(coords(cur))
        cur = theta_w(cur)
    return M


# -- printed operators for comparison --

def k3_printed_operator() -> ThetaOperator:
    """psi^12 t^3 (t+3)(t+6)(t+9) - 2^8 3^9 (t-1)(t-2)(t-5)(t-7)(t-10)(t-11), t = theta_psi."""
    t = Poly.x()
    hi = t ** 3 * (t + 3) * (t + 6) * (t + 9)
    lo = Poly([1])
    for r in (1, 2, 5, 7, 10, 11):
        lo = lo * (t - r)
    return ThetaOperator(((12, hi), (0, lo * (-(2 ** 8) * 3 ** 9))), "psi")


def psi_theta_to_z(op: ThetaOperator, N: int, var="z") -> ThetaOperator:
    """Rewrite a theta_psi operator with psi-power parts in z = psi^{-N}."""
    return change_variable({e: P for e, P in op.parts}, N, Fraction(1), var)


def cubic_printed_psi_operator() -> DifferentialOperator:
    """3 + 3 psi D + ((psi^2 - 1)/psi) D^2 as printed."""
    psi = RatFun.x()
    return DifferentialOperator((RatFun(3), psi * 3, (psi * psi - 1) / psi), "psi")


def cubic_corrected_psi_operator() -> DifferentialOperator:
    """1 + 3 psi D + ((psi^3 - 1)/psi) D^2."""
    psi = RatFun.x()
    return DifferentialOperator((RatFun(1), psi * 3, (psi ** 3 - 1) / psi), "psi")


def same_operator(a: DifferentialOperator, b: DifferentialOperator) -> bool:
    """Equal up to a left factor in Q(psi)."""
    if a.order != b.order:
        return False
    return all(x == y for x, y in zip(a.monic().coeffs, b.monic().coeffs))
