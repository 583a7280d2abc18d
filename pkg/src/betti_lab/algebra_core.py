"""Exact linear algebra on homogeneous forms in k[x, y].

Coordinates of a degree-d form are taken in the monomial basis
``y^d, y^(d-1) x, ..., x^d``; index ``j`` holds the coefficient of
``y^(d-j) x^j``.  Multiplying by ``x`` shifts indices up by one, multiplying
by ``y`` keeps them.

Scalars are Python ints reduced mod p for prime fields and
:class:`fractions.Fraction` for the rationals.  Nothing here uses floating
point.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class FieldError(ValueError):
    """Raised for invalid field specifications or unmet characteristic conditions."""


class DegreeError(ValueError):
    """Raised when forms of different degrees are mixed."""


class FactorizationError(ValueError):
    """Raised when a form does not split into distinct linear factors."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: ``rationals`` or ``prime`` with modulus ``p``."""

    kind: str = "rationals"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p is not None:
                raise FieldError("rationals take no modulus")
        elif self.kind == "prime":
            if self.p is None or not is_prime(self.p):
                raise FieldError(f"modulus {self.p!r} is not prime")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals")

    @property
    def is_finite(self) -> bool:
        return self.kind == "prime"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "prime" else 0

    @property
    def zero(self):
        return 0 if self.is_finite else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_finite else Fraction(1)

    def __call__(self, value):
        """Coerce an int, Fraction or decimal string ("-3/2") into the field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.is_finite:
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise FieldError(f"{value} has no image mod {self.p}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_finite:
            return pow(a, -1, self.p)
        return 1 / a

    def to_str(self, a) -> str:
        return str(a)

    def random_element(self, rng: random.Random, nonzero: bool = False):
        if self.is_finite:
            lo = 1 if nonzero else 0
            return rng.randrange(lo, self.p)
        while True:
            a = Fraction(rng.randint(-20, 20))
            if a or not nonzero:
                return a

    def elements(self):
        if not self.is_finite:
            raise FieldError("the rationals are not enumerable")
        return range(self.p)

    def require_chart_characteristic(self, bound: int) -> None:
        """Chart and apolarity operations need char 0 or char >= bound."""
        if self.is_finite and self.p < bound:
            raise FieldError(f"characteristic {self.p} is below the required bound {bound}")

    def to_json(self) -> dict:
        if self.is_finite:
            return {"kind": "prime", "p": self.p}
        return {"kind": "rationals"}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        return cls(data["kind"], data.get("p"))


QQ = FieldSpec.rationals()


# --------------------------------------------------------------------------
# row reduction


def rref(rows: Iterable[Sequence], field: FieldSpec, ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row-echelon form of ``rows``; returns (nonzero rows, pivot columns)."""
    if field.is_finite:
        return _rref_mod([[int(a) % field.p for a in r] for r in rows], field.p, ncols)
    return _rref_frac([[Fraction(a) for a in r] for r in rows], ncols)


def _rref_mod(m: list[list[int]], p: int, ncols: int):
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], -1, p)
        if inv != 1:
            row = [a * inv % p for a in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    other = m[i]
                    m[i] = [(a - f * b) % p for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rref_frac(m: list[list[Fraction]], ncols: int):
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        lead = row[c]
        if lead != 1:
            row = [a / lead for a in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f != 0:
                    other = m[i]
                    m[i] = [a - f * b for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Iterable[Sequence], field: FieldSpec, ncols: int) -> int:
    return len(rref(rows, field, ncols)[1])


def solve(columns: Sequence[Sequence], target: Sequence, field: FieldSpec):
    """Coefficients ``c`` with ``sum c_k columns[k] == target``, or None.

    Raises ValueError if the columns are dependent (solution not unique).
    """
    n = len(columns)
    length = len(target)
    aug = [[columns[k][r] for k in range(n)] + [target[r]] for r in range(length)]
    red, piv = rref(aug, field, n + 1)
    if n in piv:
        return None
    if len(piv) < n:
        raise ValueError("columns are linearly dependent")
    return [red[k][n] for k in range(n)]


# --------------------------------------------------------------------------
# forms and subspaces


@dataclass(frozen=True)
class BiForm:
    """A homogeneous form; ``coeffs[j]`` is the coefficient of ``y^(degree-j) x^j``."""

    degree: int
    coeffs: tuple
    field: FieldSpec = QQ

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise DegreeError(f"degree {self.degree} needs {self.degree + 1} coefficients")
        object.__setattr__(self, "coeffs", tuple(self.field(a) for a in self.coeffs))

    @classmethod
    def zero(cls, degree: int, field: FieldSpec = QQ) -> "BiForm":
        return cls(degree, (0,) * (degree + 1), field)

    @classmethod
    def monomial(cls, ypow: int, xpow: int, field: FieldSpec = QQ, coeff=1) -> "BiForm":
        d = ypow + xpow
        c = [0] * (d + 1)
        c[xpow] = coeff
        return cls(d, tuple(c), field)

    @classmethod
    def from_linear_factors(cls, roots: Sequence, field: FieldSpec = QQ) -> "BiForm":
        """The product of ``x - a y`` over ``a`` in roots."""
        f = cls(0, (1,), field)
        for a in roots:
            f = f * cls(1, (-field(a), 1), field)
        return f

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __mul__(self, other: "BiForm") -> "BiForm":
        out = [self.field.zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BiForm(self.degree + other.degree, tuple(out), self.field)

    def __add__(self, other: "BiForm") -> "BiForm":
        if self.degree != other.degree:
            raise DegreeError("cannot add forms of different degrees")
        return BiForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def scale(self, c) -> "BiForm":
        return BiForm(self.degree, tuple(c * a for a in self.coeffs), self.field)

    def __neg__(self) -> "BiForm":
        return self.scale(-1)

    def __sub__(self, other: "BiForm") -> "BiForm":
        return self + (-other)

    def times_x(self, power: int = 1) -> "BiForm":
        return BiForm(self.degree + power, (0,) * power + self.coeffs, self.field)

    def times_y(self, power: int = 1) -> "BiForm":
        return BiForm(self.degree + power, self.coeffs + (0,) * power, self.field)

    def divide_x(self, power: int) -> "BiForm":
        """Exact division by ``x^power``; every support monomial must be divisible."""
        if power > self.degree or any(self.coeffs[:power]):
            raise ValueError(f"form is not divisible by x^{power}")
        return BiForm(self.degree - power, self.coeffs[power:], self.field)

    def evaluate(self, x, y=1):
        d = self.degree
        return self.field(sum(c * x**j * y ** (d - j) for j, c in enumerate(self.coeffs)))

    def __str__(self) -> str:
        terms = []
        d = self.degree
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "*".join(t for t in (_power("y", d - j), _power("x", j)) if t)
            terms.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
        return " + ".join(terms) if terms else "0"


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


@dataclass(frozen=True)
class GradedSubspace:
    """A subspace of R_degree stored by its canonical RREF basis."""

    degree: int
    basis: tuple
    pivots: tuple
    field: FieldSpec = QQ

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return self.degree + 1

    @classmethod
    def zero(cls, degree: int, field: FieldSpec = QQ) -> "GradedSubspace":
        return cls(degree, (), (), field)

    @classmethod
    def full(cls, degree: int, field: FieldSpec = QQ) -> "GradedSubspace":
        n = degree + 1
        rows = tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))
        return cls(degree, rows, tuple(range(n)), field)

    @classmethod
    def from_rows(cls, degree: int, rows: Iterable[Sequence], field: FieldSpec = QQ) -> "GradedSubspace":
        red, piv = rref(rows, field, degree + 1)
        return cls(degree, tuple(tuple(r) for r in red), tuple(piv), field)

    def forms(self) -> list[BiForm]:
        return [BiForm(self.degree, r, self.field) for r in self.basis]

    def contains(self, vec: Sequence) -> bool:
        return rank(list(self.basis) + [list(vec)], self.field, self.degree + 1) == self.dim

    def contains_subspace(self, other: "GradedSubspace") -> bool:
        if other.degree != self.degree:
            return False
        return rank(list(self.basis) + list(other.basis), self.field, self.degree + 1) == self.dim

    def __add__(self, other: "GradedSubspace") -> "GradedSubspace":
        if other.degree != self.degree:
            raise DegreeError("cannot add subspaces of different degrees")
        return GradedSubspace.from_rows(self.degree, list(self.basis) + list(other.basis), self.field)

    def annihilator(self) -> list[list]:
        """Basis of the linear functionals (dot product) vanishing on the subspace."""
        return annihilator_rows(self.basis, self.pivots, self.degree + 1, self.field)

    def intersect(self, other: "GradedSubspace") -> "GradedSubspace":
        """Intersection, computed as the kernel of the stacked annihilator systems."""
        if other.degree != self.degree:
            raise DegreeError("cannot intersect subspaces of different degrees")
        n = self.degree + 1
        stacked = self.annihilator() + other.annihilator()
        red, piv = rref(stacked, self.field, n)
        return GradedSubspace.from_rows(self.degree, annihilator_rows(red, piv, n, self.field), self.field)


def annihilator_rows(basis: Sequence[Sequence], pivots: Sequence[int], n: int, field: FieldSpec) -> list[list]:
    """Kernel basis for an RREF system: vectors v with ``row . v = 0`` for all rows."""
    pivset = set(pivots)
    out = []
    for c in range(n):
        if c in pivset:
            continue
        v = [field.zero] * n
        v[c] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -basis[r][c]
        if field.is_finite:
            v = [a % field.p for a in v]
        out.append(v)
    return out


def rref_basis(vectors: Sequence[BiForm], degree: int | None = None, field: FieldSpec | None = None) -> GradedSubspace:
    """Canonical basis of the span of forms sharing one degree."""
    degrees = {v.degree for v in vectors}
    if len(degrees) > 1:
        raise DegreeError(f"mixed degrees {sorted(degrees)}")
    if vectors:
        degree = vectors[0].degree
        field = vectors[0].field
    if degree is None:
        raise DegreeError("degree is required for an empty span")
    return GradedSubspace.from_rows(degree, [v.coeffs for v in vectors], field or QQ)


def multiply_by_R1(V: GradedSubspace) -> GradedSubspace:
    zero = V.field.zero
    rows = []
    for r in V.basis:
        rows.append([zero] + list(r))  # x * v
        rows.append(list(r) + [zero])  # y * v
    return GradedSubspace.from_rows(V.degree + 1, rows, V.field)


def _divide_once(V: GradedSubspace) -> GradedSubspace:
    d = V.degree
    if d == 0:
        raise ValueError("cannot divide a degree-0 subspace")
    if V.dim == d + 1:
        return GradedSubspace.full(d - 1, V.field)
    constraints = []
    for phi in V.annihilator():
        constraints.append(phi[1:])  # phi(x f)
        constraints.append(phi[:-1])  # phi(y f)
    red, piv = rref(constraints, V.field, d)
    return GradedSubspace.from_rows(d - 1, annihilator_rows(red, piv, d, V.field), V.field)


def divide_by_R1(V: GradedSubspace, a: int = 1) -> GradedSubspace:
    """``R_{-a} V``: forms f of degree deg V - a with ``R_a f`` inside V."""
    if a > V.degree:
        raise ValueError(f"cannot divide degree {V.degree} by R_{a}")
    for _ in range(a):
        V = _divide_once(V)
    return V


def tau_of(V: GradedSubspace) -> int:
    """``dim R_1 V - dim V``; zero for the zero subspace."""
    if V.dim == 0:
        return 0
    return multiply_by_R1(V).dim - V.dim


def ancestor_ideal(V: GradedSubspace, top: int):
    """The ancestor ideal of V, materialized through degree ``top``."""
    from .graded_ideal import GradedIdeal

    if top < V.degree:
        raise ValueError("top must be at least deg V")
    pieces = [None] * (top + 1)
    pieces[V.degree] = V
    W = V
    for d in range(V.degree - 1, -1, -1):
        W = _divide_once(W)
        pieces[d] = W
    W = V
    for d in range(V.degree + 1, top + 1):
        W = multiply_by_R1(W)
        pieces[d] = W
    return GradedIdeal(V.field, tuple(pieces))


# --------------------------------------------------------------------------
# apolarity


@dataclass(frozen=True)
class DualSubspace:
    """A subspace of the dual degree-d space.

    Index ``j`` is the coordinate of ``X^j Y^(d-j)``, dual to ``x^j y^(d-j)``.
    Pairing is by differentiation: ``<x^j y^(d-j), X^j Y^(d-j)> = j! (d-j)!``.
    """

    degree: int
    basis: tuple
    pivots: tuple
    field: FieldSpec = QQ

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def from_rows(cls, degree: int, rows, field: FieldSpec = QQ) -> "DualSubspace":
        red, piv = rref(rows, field, degree + 1)
        return cls(degree, tuple(tuple(r) for r in red), tuple(piv), field)


def _pairing_weights(d: int, field: FieldSpec) -> list:
    return [field(math.factorial(j) * math.factorial(d - j)) for j in range(d + 1)]


def pair(form: Sequence, dual: Sequence, degree: int, field: FieldSpec):
    w = _pairing_weights(degree, field)
    total = sum(a * b * c for a, b, c in zip(form, dual, w))
    return field(total) if field.is_finite else total


def perp(V: GradedSubspace) -> DualSubspace:
    """The dual subspace annihilating V under the differentiation pairing."""
    V.field.require_chart_characteristic(V.degree + 1)
    w = _pairing_weights(V.degree, V.field)
    scaled = [[a * c for a, c in zip(r, w)] for r in V.basis]
    red, piv = rref(scaled, V.field, V.degree + 1)
    return DualSubspace.from_rows(V.degree, annihilator_rows(red, piv, V.degree + 1, V.field), V.field)


def power_of_linear_form(a, b, i: int, field: FieldSpec) -> tuple:
    """Dual coordinates of ``(a X + b Y)^i``."""
    return tuple(field(math.comb(i, j)) * field(a) ** j * field(b) ** (i - j) for j in range(i + 1))


def linear_roots(f: BiForm) -> list:
    """Roots of f as a product of linear factors; ``None`` stands for the factor y.

    Each root ``a`` denotes the factor ``x - a y``.  Raises FactorizationError
    for repeated or non-linear factors.
    """
    if f.is_zero():
        raise FactorizationError("the zero form has no factorization")
    F = f.field
    coeffs = list(f.coeffs)
    roots: list = []
    # factors of y correspond to vanishing top x-coefficients
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        roots.append(None)
    poly = coeffs  # univariate in x, low degree first
    for a in _candidate_roots(poly, F):
        while len(poly) > 1 and _eval_univariate(poly, a, F) == 0:
            poly = _synthetic_divide(poly, a, F)
            roots.append(a)
    if len(poly) > 1:
        raise FactorizationError(f"{f} does not split into linear factors")
    if len(set(roots)) != len(roots):
        raise FactorizationError(f"{f} has a repeated linear factor")
    return roots


def _eval_univariate(poly, a, F: FieldSpec):
    acc = F.zero
    for c in reversed(poly):
        acc = acc * a + c
        if F.is_finite:
            acc %= F.p
    return acc


def _synthetic_divide(poly, a, F: FieldSpec):
    # poly low-degree first; divide by (x - a)
    n = len(poly) - 1
    out = [F.zero] * n
    carry = poly[n]
    for k in range(n - 1, -1, -1):
        out[k] = carry
        carry = poly[k] + carry * a
        if F.is_finite:
            carry %= F.p
    return out


def _candidate_roots(poly, F: FieldSpec):
    if len(poly) <= 1:
        return []
    if F.is_finite:
        return list(range(F.p))
    # rational root theorem on the integer-scaled polynomial
    den = math.lcm(*[Fraction(c).denominator for c in poly])
    ints = [int(Fraction(c) * den) for c in poly]
    low = 0
    while ints[low] == 0:
        low += 1
    cands = {Fraction(0)} if low else set()
    a0, an = abs(ints[low]), abs(ints[-1])
    for num in _divisors(a0):
        for dn in _divisors(an):
            cands.add(Fraction(num, dn))
            cands.add(Fraction(-num, dn))
    return sorted(cands)


def _divisors(n: int) -> list[int]:
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.extend({d, n // d})
    return out


def principal_perp(f: BiForm, i: int) -> DualSubspace:
    """``<f R_{i-c}>^perp`` for f a product of c distinct linear factors."""
    c = f.degree
    if c > i:
        raise ValueError("deg f must not exceed i")
    f.field.require_chart_characteristic(i + 1)
    rows = []
    for a in linear_roots(f):
        if a is None:  # factor y: annihilated by X^i
            rows.append(power_of_linear_form(1, 0, i, f.field))
        else:
            rows.append(power_of_linear_form(a, 1, i, f.field))
    return DualSubspace.from_rows(i, rows, f.field)


# --------------------------------------------------------------------------
# gcd


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a, b, F: FieldSpec):
    a = list(a)
    inv = F.inv(b[-1])
    while len(a) >= len(b):
        q = a[-1] * inv
        shift = len(a) - len(b)
        for k, c in enumerate(b):
            a[shift + k] -= q * c
            if F.is_finite:
                a[shift + k] %= F.p
        a = _poly_trim(a)
    return a


def _poly_gcd(a, b, F: FieldSpec):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_mod(a, b, F)
    return a


def gcd_of_forms(fs: Sequence[BiForm]) -> BiForm:
    """Monic (in the top x-power) homogeneous gcd of the nonzero forms in ``fs``."""
    nonzero = [f for f in fs if not f.is_zero()]
    if not nonzero:
        raise ValueError("gcd of zero forms is undefined")
    F = nonzero[0].field
    ypow = None
    g: list = []
    for f in nonzero:
        p = _poly_trim(f.coeffs)
        m = f.degree - (len(p) - 1)
        ypow = m if ypow is None else min(ypow, m)
        g = _poly_gcd(g, p, F) if g else p
    inv = F.inv(g[-1])
    g = [F(c * inv) if F.is_finite else c * inv for c in g]
    deg = len(g) - 1 + ypow
    return BiForm(deg, _homogenize(g, deg), F)


def _homogenize(poly, deg):
    # coefficient of x^j goes to index j, remaining degree absorbed by y
    return tuple(poly) + (0,) * (deg + 1 - len(poly))


# --------------------------------------------------------------------------
# determinants of form matrices


def det(matrix: Sequence[Sequence], field: FieldSpec):
    """Determinant of a square scalar matrix by elimination."""
    m = [[field(a) for a in row] for row in matrix]
    n = len(m)
    out = field.one
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        lead = m[c][c]
        out = out * lead
        inv = field.inv(lead)
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
                if field.is_finite:
                    m[r] = [a % field.p for a in m[r]]
    return field(out) if field.is_finite else out


def interpolate(points: Sequence, values: Sequence, field: FieldSpec) -> list:
    """Coefficients (low degree first) of the polynomial through the given points."""
    n = len(points)
    coeffs = [field.zero] * n
    for k in range(n):
        # basis polynomial prod_{m != k} (t - x_m) / (x_k - x_m)
        basis = [field.one]
        denom = field.one
        for m_, xm in enumerate(points):
            if m_ == k:
                continue
            basis = [field.zero] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xm * basis[t + 1]
            denom *= points[k] - xm
        scale = values[k] * field.inv(field(denom) if field.is_finite else denom)
        for t in range(n):
            coeffs[t] += scale * basis[t]
    if field.is_finite:
        coeffs = [c % field.p for c in coeffs]
    return coeffs


def form_matrix_det(matrix: Sequence[Sequence[BiForm | None]], degree: int, field: FieldSpec) -> BiForm:
    """Determinant of a square matrix of forms whose determinant is homogeneous of ``degree``.

    ``None`` entries are zero.  Computed by evaluating at ``y = 1`` on
    ``degree + 1`` points and interpolating.
    """
    n = len(matrix)
    if n == 0:
        return BiForm(0, (1,), field)
    if field.is_finite and field.p <= degree:
        raise FieldError(f"need more than {degree} field elements to interpolate")
    points = [field(t) for t in range(degree + 1)]
    values = []
    for t in points:
        numeric = [[(e.evaluate(t) if e is not None else 0) for e in row] for row in matrix]
        values.append(det(numeric, field))
    return BiForm(degree, tuple(interpolate(points, values, field)), field)
