"""Family descriptors.

Families are plain immutable data.  Counting, Picard-Fuchs and period code
take these descriptors as input; a new family is added by data only.

A parameter value ``psi`` is one of
  * ``None``: formal symbol (Picard-Fuchs derivation),
  * a ``Fraction``/``int``: rational value,
  * an encoded field element together with ``field = (p, r)``.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import factorial

from .finite_field import ExtField, make_ext_field
from .numeric import rat_to_json


class FamilyError(ValueError):
    pass


# -- polynomials --

@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial: terms are (exponent tuple, coefficient).

    For symbolic fibers each coefficient is a pair (c, k) meaning c * psi^k.
    """

    nvars: int
    terms: tuple
    symbolic: bool = False
    field: tuple | None = None

    def __str__(self):
        parts = []
        for exps, c in self.terms:
            mono = "*".join(f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                            for i, e in enumerate(exps) if e)
            if self.symbolic:
                coef, k = c
                sym = "psi" if k == 1 else (f"psi^{k}" if k else "")
                head = "*".join(s for s in (str(abs(coef)) if abs(coef) != 1 else "", sym) if s)
                sign = "-" if coef < 0 else "+"
            else:
                head = str(c) if c != 1 else ""
                sign = "+"
            body = "*".join(s for s in (head, mono) if s) or "1"
            parts.append((sign, body))
        out = ""
        for i, (sign, body) in enumerate(parts):
            if i == 0:
                out = ("-" if sign == "-" else "") + body
            else:
                out += f" {sign} {body}"
        return out

    def to_json(self):
        def enc(c):
            if self.symbolic:
                return {"coeff": rat_to_json(c[0]), "psi_power": c[1]}
            return rat_to_json(c) if isinstance(c, Fraction) else str(c)
        return {"nvars": self.nvars,
                "terms": [{"exponents": list(e), "coeff": enc(c)} for e, c in self.terms]}


# -- family types --

@dataclass(frozen=True)
class DworkFamily:
    """x_1^n + ... + x_n^n - n psi x_1 ... x_n in P^{n-1}."""

    n: int
    psi: object = None
    field: tuple | None = None

    def __post_init__(self):
        if self.n < 2:
            raise FamilyError("Dwork family needs n >= 2")

    def as_deformation(self) -> "FermatDeformation":
        n = self.n
        return FermatDeformation(tuple([n] * n), tuple([1] * n), tuple([1] * n),
                                 self.psi, self.field, coefficient=Fraction(-n))


@dataclass(frozen=True)
class FermatDeformation:
    """G(x) + c psi x^a in weighted projective space.

    ``base`` lists the exponent vectors of G (all with coefficient 1); when
    omitted G is the Fermat sum of x_i^{d_i}.  ``coefficient`` is c.
    """

    exponents: tuple
    weights: tuple
    deformation: tuple
    psi: object = None
    field: tuple | None = None
    coefficient: Fraction = Fraction(1)
    base: tuple | None = None

    def __post_init__(self):
        n = len(self.weights)
        if self.base is None:
            if len(self.exponents) != n:
                raise FamilyError("exponents and weights differ in length")
            object.__setattr__(self, "base", tuple(
                tuple(self.exponents[i] if j == i else 0 for j in range(n))
                for i in range(n)))
        d = self.degree
        for mono in self.base:
            if _wdeg(mono, self.weights) != d:
                raise FamilyError(f"base monomial {mono} is not of weighted degree {d}")
        if len(self.deformation) != n or any(a < 0 for a in self.deformation):
            raise FamilyError("deformation exponents must be n nonnegative integers")
        if _wdeg(self.deformation, self.weights) != d:
            raise FamilyError(
                f"deformation monomial {self.deformation} has weighted degree "
                f"{_wdeg(self.deformation, self.weights)}, expected {d}")
        if sum(self.weights) != d:
            warnings.warn(f"sum of weights {sum(self.weights)} != degree {d}: "
                          "not Calabi-Yau", stacklevel=2)

    @property
    def degree(self) -> int:
        return _wdeg(self.base[0], self.weights)

    @property
    def nvars(self) -> int:
        return len(self.weights)


def _wdeg(v, w):
    return sum(a * b for a, b in zip(v, w))


@dataclass(frozen=True)
class SingularMirror:
    """x_1 + ... + x_{n-1} + 1/(x_1 ... x_{n-1}) - n psi on the torus (F_q*)^{n-1}."""

    n: int
    psi: object = None
    field: tuple | None = None


CURVE_EXPONENTS = {"A": (2, 3, 2), "B": (2, 4, 1)}


@dataclass(frozen=True)
class SuperellipticCurve:
    """Affine curve y^5 = x^e1 (1 - x)^e2 (x - psi^5)^e3."""

    kind: str
    psi: object = None
    field: tuple | None = None
    degree: int = 5
    exponents: tuple = dc_field(init=False)

    def __post_init__(self):
        if self.kind not in CURVE_EXPONENTS:
            raise FamilyError("curve kind must be 'A' or 'B'")
        object.__setattr__(self, "exponents", CURVE_EXPONENTS[self.kind])


def k3_3678(psi=None, fieldspec=None, printed=(4, 4, 4, 0)) -> FermatDeformation:
    """K3 family x1^8 + x2^4 + x1 x3^3 + x4^3 + psi x^a in P(3,6,7,8).

    The printed deformation exponents are checked against homogeneity and
    repaired if needed (see ``repair_deformation``).
    """
    weights = (3, 6, 7, 8)
    base = ((8, 0, 0, 0), (0, 4, 0, 0), (1, 0, 3, 0), (0, 0, 0, 3))
    a = repair_deformation(weights, 24, printed)
    return FermatDeformation((8, 4, 3, 3), weights, a, psi, fieldspec, base=base)


def repair_deformation(weights, degree, printed):
    """Return ``printed`` if it has the right weighted degree, else the unique
    full-support exponent vector of that degree with smallest entries."""
    if _wdeg(printed, weights) == degree:
        return tuple(printed)
    n = len(weights)
    cands = []
    for a in itertools.product(range(1, degree + 1), repeat=n):
        if _wdeg(a, weights) == degree:
            cands.append(a)
    if not cands:
        raise FamilyError("no full-support monomial of the required degree")
    cands.sort(key=lambda a: (sum(a), a))
    warnings.warn(f"deformation exponents {tuple(printed)} have weighted degree "
                  f"{_wdeg(printed, weights)} != {degree}; using {cands[0]}",
                  stacklevel=2)
    return cands[0]


# -- parameter handling --

def _field_of(fam, field_override=None):
    spec = field_override if field_override is not None else fam.field
    if spec is None:
        return None
    if isinstance(spec, ExtField):
        return spec
    return make_ext_field(*spec)


def _psi_of(fam, psi):
    return fam.psi if psi is None else psi


def is_singular_fiber(fam, psi=None, fieldspec=None) -> bool:
    """Whether the fiber at psi is singular (or degenerate)."""
    psi = _psi_of(fam, psi)
    F = _field_of(fam, fieldspec)
    if isinstance(fam, (DworkFamily, SingularMirror)):
        n = fam.n
        if F is not None:
            if n % F.p == 0:
                return True
            return F.pow(psi, n) == 1
        if isinstance(psi, complex):
            return abs(psi ** n - 1) < 1e-9
        return Fraction(psi) ** n == 1
    if isinstance(fam, SuperellipticCurve):
        if F is not None:
            t = F.pow(psi, fam.degree)
            return t in (0, 1)
        t = Fraction(psi) ** fam.degree
        return t in (0, 1)
    if isinstance(fam, FermatDeformation):
        if F is None:
            raise FamilyError("Jacobian criterion needs a finite field")
        return _jacobian_singular(fam, psi, F)
    raise FamilyError(f"unknown family type {type(fam).__name__}")


def _jacobian_singular(fam, psi, F):
    """Brute-force search for an F_q-rational singular point."""
    poly = defining_polynomial(fam, psi, F)
    n = poly.nvars
    derivs = []
    for i in range(n):
        terms = []
        for exps, c in poly.terms:
            if exps[i]:
                e = list(exps)
                e[i] -= 1
                terms.append((tuple(e), F.mul(c, F.scalar(exps[i]))))
        derivs.append(terms)

    def ev(terms, x):
        s = 0
        for exps, c in terms:
            t = c
            for xi, e in zip(x, exps):
                if e:
                    t = F.mul(t, F.pow(xi, e))
            s = F.add(s, t)
        return s

    for x in itertools.product(range(F.q), repeat=n):
        if not any(x):
            continue
        if ev(poly.terms, x) == 0 and all(ev(d, x) == 0 for d in derivs):
            return True
    return False


def defining_polynomial(fam, psi=None, fieldspec=None) -> Polynomial:
    """Explicit terms of the fiber's defining polynomial.

    With no parameter value the psi-dependence is kept symbolic.
    """
    psi = _psi_of(fam, psi)
    F = _field_of(fam, fieldspec)
    if isinstance(fam, DworkFamily):
        fam = fam.as_deformation()
    if not isinstance(fam, FermatDeformation):
        raise FamilyError("defining_polynomial supports projective hypersurface families")
    n = fam.nvars
    c = Fraction(fam.coefficient)
    if psi is None:
        terms = tuple((m, (Fraction(1), 0)) for m in fam.base)
        terms += ((tuple(fam.deformation), (c, 1)),)
        return Polynomial(n, terms, symbolic=True)
    if F is not None:
        if c.denominator % F.p == 0:
            raise FamilyError("coefficient not integral at p")
        cf = F.scalar(c.numerator * pow(c.denominator, -1, F.p))
        terms = tuple((m, 1) for m in fam.base)
        terms += ((tuple(fam.deformation), F.mul(cf, psi)),)
        return Polynomial(n, terms, field=(F.p, F.r))
    terms = tuple((m, Fraction(1)) for m in fam.base)
    terms += ((tuple(fam.deformation), c * Fraction(psi)),)
    return Polynomial(n, terms)


# -- monomial classes of the Dwork family --

@dataclass(frozen=True)
class MonomialClass:
    representative: tuple
    members: tuple          # Jacobian-ring basis monomials in this class
    gamma: int              # number of distinct classes among permutations

    @property
    def solutions(self) -> int:
        return len(self.members)

    def pole_order(self, v=None, n=None) -> Fraction:
        v = self.representative if v is None else v
        n = len(v) if n is None else n
        return pole_order(v, n)


def pole_order(v, n) -> int:
    """k(v) with k * n = |v| + n for the degree-n Dwork hypersurface in P^{n-1}."""
    s = sum(v) + n
    if s % n:
        raise FamilyError(f"k(v) is not integral for {tuple(v)}")
    return s // n


def _class_key(v, n):
    """Image of v in (Z/n)^n / <eps>."""
    return min(tuple((a + j) % n for a in v) for j in range(n))


QUINTIC_CLASS_REPS = (
    (0, 0, 0, 0, 0),
    (4, 1, 0, 0, 0),
    (3, 2, 0, 0, 0),
    (3, 1, 1, 0, 0),
    (2, 2, 1, 0, 0),
    (4, 3, 2, 1, 0),
)


def jacobian_basis(n: int):
    """Monomials with exponents <= n-2 and degree divisible by n."""
    return [v for v in itertools.product(range(n - 1), repeat=n) if sum(v) % n == 0]


def monomial_classes(n: int = 5, reps=QUINTIC_CLASS_REPS):
    """Group the Jacobian-ring basis by character class.

    Class sizes and permutation multiplicities are computed by enumeration.
    """
    basis = jacobian_basis(n)
    by_key = {}
    for w in basis:
        by_key.setdefault(_class_key(w, n), []).append(w)
    out = []
    for v in reps:
        if sum(v) % n:
            raise FamilyError(f"representative {v} has degree not divisible by {n}")
        keys = {_class_key(perm, n) for perm in set(itertools.permutations(v))}
        members = tuple(sorted(by_key.get(_class_key(v, n), []), key=lambda w: (sum(w), w)))
        out.append(MonomialClass(tuple(v), members, len(keys)))
    return out


def class_total(classes) -> int:
    return sum(c.gamma * c.solutions for c in classes)


# -- JSON descriptors --

def _psi_to_json(psi):
    if psi is None:
        return None
    if isinstance(psi, Fraction):
        return rat_to_json(psi)
    return str(psi)


def _psi_from_json(s, fieldspec):
    if s is None:
        return None
    if fieldspec is not None:
        return int(s)
    return Fraction(s)


def family_to_json(fam) -> dict:
    fld = None if fam.field is None else {"p": fam.field[0], "r": fam.field[1]}
    if isinstance(fam, DworkFamily):
        d = {"type": "dwork", "n": fam.n}
    elif isinstance(fam, SingularMirror):
        d = {"type": "mirror", "n": fam.n}
    elif isinstance(fam, SuperellipticCurve):
        d = {"type": "curve", "kind": fam.kind}
    elif isinstance(fam, FermatDeformation):
        d = {"type": "fermat", "exponents": list(fam.exponents),
             "weights": list(fam.weights), "deformation": list(fam.deformation),
             "coefficient": rat_to_json(fam.coefficient),
             "base": [list(m) for m in fam.base]}
    else:
        raise FamilyError("unknown family type")
    d["psi"] = _psi_to_json(fam.psi)
    if fld:
        d["field"] = fld
    return d


def family_from_json(d: dict):
    fld = d.get("field")
    fieldspec = None if fld is None else (int(fld["p"]), int(fld.get("r", 1)))
    psi = _psi_from_json(d.get("psi"), fieldspec)
    t = d.get("type")
    if t == "dwork":
        return DworkFamily(int(d["n"]), psi, fieldspec)
    if t == "mirror":
        return SingularMirror(int(d["n"]), psi, fieldspec)
    if t == "curve":
        return SuperellipticCurve(d["kind"], psi, fieldspec)
    if t == "fermat":
        base = d.get("base")
        return FermatDeformation(tuple(d["exponents"]), tuple(d["weights"]),
                                 tuple(d["deformation"]), psi, fieldspec,
                                 Fraction(d.get("coefficient", "1")),
                                 None if base is None else tuple(tuple(m) for m in base))
    if t == "k3":
        return k3_3678(psi, fieldspec)
    raise FamilyError(f"unknown family type {t!r}")


def multinomial(parts) -> int:
    out = factorial(sum(parts))
    for k in parts:
        out //= factorial(k)
    return out
