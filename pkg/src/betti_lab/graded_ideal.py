"""Graded ideals of k[x, y] stored degree by degree.

An ideal is a list of subspaces ``I_0, ..., I_top``, closed under
multiplication by linear forms.  Everything that can be read off an actual
ideal lives here: the Hilbert function and Betti data, the normal pattern
and standard generators, the affine chart, the theta matrices, level ideals
and random sampling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra_core import (
    BiForm,
    FieldSpec,
    GradedSubspace,
    QQ,
    ancestor_ideal,
    divide_by_R1,
    form_matrix_det,
    gcd_of_forms,
    multiply_by_R1,
    rank,
    solve,
)
from .hilbert_betti import BettiTriple, OSequence, analyze_H, beta_min_triple, complete_triple


class IdealError(ValueError):
    pass


class PatternError(IdealError):
    """The ideal is not complementary to the normal pattern."""


class ChartError(IdealError):
    pass


class SamplingError(RuntimeError):
    pass


@dataclass(frozen=True)
class GradedIdeal:
    field: FieldSpec
    pieces: tuple

    def __post_init__(self):
        for d, V in enumerate(self.pieces):
            if V.degree != d:
                raise IdealError(f"piece {d} has degree {V.degree}")

    @property
    def top(self) -> int:
        return len(self.pieces) - 1

    def __getitem__(self, d: int) -> GradedSubspace:
        if d < 0:
            return GradedSubspace.zero(0, self.field)
        if d > self.top:
            # only meaningful once the ideal contains all of R_top
            if self.pieces[-1].dim == self.top + 1:
                return GradedSubspace.full(d, self.field)
            raise IdealError(f"degree {d} above the stored top {self.top}")
        return self.pieces[d]

    def hilbert_values(self) -> tuple:
        return tuple(d + 1 - V.dim for d, V in enumerate(self.pieces))

    def is_closed(self) -> bool:
        return all(
            self.pieces[d + 1].contains_subspace(multiply_by_R1(self.pieces[d]))
            for d in range(self.top)
        )

    def contains(self, f: BiForm) -> bool:
        return self[f.degree].contains(f.coeffs)

    def extend(self, top: int) -> "GradedIdeal":
        """Materialize further pieces by multiplication (valid when I is generated below top)."""
        pieces = list(self.pieces)
        while len(pieces) <= top:
            pieces.append(multiply_by_R1(pieces[-1]))
        return GradedIdeal(self.field, tuple(pieces))

    def minimal_generators(self) -> list[BiForm]:
        """Canonical minimal generators: in each degree, a complement of R_1 I_{d-1}."""
        out = []
        for d, V in enumerate(self.pieces):
            if d == 0:
                out.extend(V.forms())
                continue
            W = multiply_by_R1(self.pieces[d - 1])
            if W.dim == V.dim:
                continue
            rows = list(W.basis)
            r = W.dim
            for f in V.basis:
                if rank(rows + [list(f)], self.field, d + 1) > r:
                    rows.append(list(f))
                    r += 1
                    out.append(BiForm(d, f, self.field))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedIdeal):
            return NotImplemented
        top = max(self.top, other.top)
        try:
            return all(self[d].basis == other[d].basis for d in range(top + 1))
        except IdealError:
            return False

    def __hash__(self):
        return hash(tuple(V.basis for V in self.pieces))


def span_ideal(gens: Sequence[BiForm], top: int, field: FieldSpec = QQ) -> GradedIdeal:
    """The ideal generated by ``gens``, through degree ``top``."""
    if gens:
        field = gens[0].field
    if any(g.degree > top for g in gens):
        raise IdealError("top is below a generator degree")
    pieces = []
    prev = None
    for d in range(top + 1):
        rows = [] if prev is None else [list(r) for r in multiply_by_R1(prev).basis]
        if prev is None and d > 0:
            rows = []
        rows.extend(list(g.coeffs) for g in gens if g.degree == d)
        V = GradedSubspace.from_rows(d, rows, field)
        pieces.append(V)
        prev = V
    return GradedIdeal(field, tuple(pieces))


def hilbert_function(I: GradedIdeal) -> OSequence:
    return analyze_H(I.hilbert_values())


# --------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class IdealInvariants:
    H: OSequence
    triple: BettiTriple

    @property
    def nu(self) -> dict:
        return dict(self.triple.nu)

    @property
    def beta(self) -> dict:
        return dict(self.triple.beta)

    @property
    def tau(self) -> dict:
        return dict(self.triple.tau)

    @property
    def socle(self) -> dict:
        return self.triple.socle

    def to_json(self) -> dict:
        return {
            "H": list(self.H.trimmed()),
            "mu": self.H.mu,
            "s": self.H.s,
            "tau": {str(k): v for k, v in sorted(self.tau.items())},
            "nu": {str(k): v for k, v in sorted(self.nu.items())},
            "beta": {str(k): v for k, v in sorted(self.beta.items())},
            "socle": {str(k): v for k, v in sorted(self.socle.items())},
        }


def invariants_of(I: GradedIdeal, check: bool = True) -> IdealInvariants:
    """H, generators, relations, tau and socle of an Artinian ideal."""
    H = hilbert_function(I)
    if not H.is_artinian:
        raise IdealError(f"ideal is not Artinian (H ends at {H.c}); split off the common factor first")
    if I.top < H.s:
        raise IdealError(f"ideal stored through {I.top}, need at least s = {H.s}")
    mu, s = H.mu, H.s
    tau, nu, beta = {}, {}, {}
    for d in range(mu, s + 1):
        V = I[d]
        below = I[d - 1].dim if d > 0 else 0
        tau[d] = multiply_by_R1(V).dim - V.dim
        nu[d] = V.dim - (multiply_by_R1(I[d - 1]).dim if d > 0 else 0)
        beta[d + 1] = divide_by_R1(V).dim - below if d > 0 else 0
    triple = BettiTriple(H, tau, nu, beta)
    if check:
        triple.check()
    return IdealInvariants(H, triple)


# --------------------------------------------------------------------------
# normal pattern


def monomial_ideal_of(H: OSequence, field: FieldSpec = QQ) -> GradedIdeal:
    """The monomial ideal whose complement is the normal pattern of H.

    In degree u it is spanned by ``y^u, y^(u-1) x, ..., y^(H_u) x^(u-H_u)``.
    """
    top = H.s + 1
    pieces = []
    for u in range(top + 1):
        n = u + 1 - H(u)
        rows = [[field.one if j == r else field.zero for j in range(u + 1)] for r in range(n)]
        pieces.append(GradedSubspace(u, tuple(tuple(r) for r in rows), tuple(range(n)), field))
    return GradedIdeal(field, tuple(pieces))


def alignment_of(H: OSequence) -> tuple:
    """``K = (k_0, ..., k_(mu-1))``: x-length of row i of the staircase of M(H)."""
    return _alignment_full(H)[:-1]


def _alignment_full(H: OSequence) -> tuple:
    """K with the trailing ``k_mu = 0`` of the generator ``y^mu``."""
    if not H.is_artinian:
        raise IdealError("alignment character needs an Artinian H")
    out = []
    for i in range(H.mu + 1):
        k = 0
        while H(i + k) > i:
            k += 1
        out.append(k)
    return tuple(out)


def generator_degrees(H: OSequence) -> tuple:
    """Degrees of the standard generators ``f_0, ..., f_mu``."""
    return tuple(i + k for i, k in enumerate(_alignment_full(H)))


def pattern_columns(H: OSequence, u: int) -> range:
    """Indices of the pattern monomials B_u: the ``H_u`` highest x-powers."""
    return range(u + 1 - H(u), u + 1)


def has_normal_pattern(I: GradedIdeal, H: OSequence | None = None) -> bool:
    H = H or hilbert_function(I)
    for u in range(min(I.top, H.s + 1) + 1):
        V = I[u]
        if V.pivots != tuple(range(V.dim)):
            return False
    return True


# --------------------------------------------------------------------------
# standard generators


def colon_x(f: BiForm, a: int) -> BiForm:
    """``f : x^a`` by exact monomial-wise division."""
    try:
        return f.divide_x(a)
    except ValueError as exc:
        raise IdealError(f"colon by x^{a} is not exact on {f}") from exc


def parameter_positions(H: OSequence) -> list[tuple]:
    """The free coefficient positions ``(i, u)`` of the chart, ordered as A.

    For ``mu <= v < s`` they are the pairs with ``H_v <= i <= min(H_{v-1}, mu)``
    and ``H_{v+1} <= u < H_v``; the whole list is sorted by decreasing i,
    then decreasing u.
    """
    out = []
    for v in range(H.mu, H.s):
        for i in range(H(v), min(H(v - 1), H.mu) + 1):
            for u in range(H(v + 1), H(v)):
                out.append((i, u))
    return sorted(out, key=lambda t: (-t[0], -t[1]))


@dataclass(frozen=True)
class StandardGenerators:
    H: OSequence
    K: tuple
    gens: Mapping[int, BiForm]
    coeffs: Mapping[tuple, object]

    def degree(self, i: int) -> int:
        return self.gens[i].degree

    def parameters(self) -> tuple:
        return tuple(self.coeffs[p] for p in parameter_positions(self.H))

    def ordered(self) -> list[BiForm]:
        """``f_mu, ..., f_0``."""
        return [self.gens[i] for i in sorted(self.gens, reverse=True)]


def _expand_tail(g: BiForm, gens: Mapping[int, BiForm], H: OSequence):
    """Write ``g`` (supported in B_d) as ``sum a_u (f_u : x^.)`` over u < H_d."""
    d = g.degree
    us = list(range(H(d)))
    if not us:
        if not g.is_zero():
            raise PatternError("tail outside the normal pattern")
        return {}
    cols = [colon_x(gens[u], gens[u].degree - d).coeffs for u in us]
    sol = solve(cols, g.coeffs, g.field)
    if sol is None:
        raise PatternError("tail is not in the pattern span")
    return dict(zip(us, sol))


def standard_generators(I: GradedIdeal) -> StandardGenerators:
    H = hilbert_function(I)
    if not has_normal_pattern(I, H):
        raise PatternError("ideal has no normal pattern")
    K = _alignment_full(H)
    F = I.field
    gens = {}
    for i, k in enumerate(K):
        d = i + k
        row = I[d].basis[k]  # the row with pivot at y^i x^k
        gens[i] = BiForm(d, row, F)
    coeffs = {}
    for i in range(H.mu, -1, -1):
        f = gens[i]
        lead = BiForm.monomial(i, K[i], F)
        for u, a in _expand_tail(f - lead, gens, H).items():
            coeffs[(i, u)] = a
    return StandardGenerators(H, K[:-1], gens, coeffs)


def chart_ideal(H: OSequence, A, field: FieldSpec = QQ) -> GradedIdeal:
    """The ideal of the chart U_B with free coefficients A.

    ``A`` is a sequence in the order of :func:`parameter_positions` or a
    mapping from positions to values.  Generators are built from ``f_0``
    upward; the dependent coefficients of ``f_n`` are fixed by requiring
    ``y f_(n-1)`` to lie in the span of the multiples of ``f_0, ..., f_n``
    that lead with ``y`` powers at most n.
    """
    if not H.is_artinian:
        raise ChartError("chart needs an Artinian H")
    field.require_chart_characteristic(H.s)
    positions = parameter_positions(H)
    if isinstance(A, Mapping):
        params = {tuple(k): field(v) for k, v in A.items()}
        if set(params) != set(positions):
            raise ChartError("parameter positions do not match H")
    else:
        A = list(A)
        if len(A) != len(positions):
            raise ChartError(f"expected {len(positions)} parameters, got {len(A)}")
        params = {p: field(a) for p, a in zip(positions, A)}
    K = _alignment_full(H)
    gens = {0: BiForm.monomial(0, K[0], field)}
    for n in range(1, H.mu + 1):
        D = n + K[n]
        prev = gens[n - 1]
        Dp = prev.degree + 1
        delta = K[n - 1] - K[n]
        lead = BiForm.monomial(n, K[n], field)
        tails = {u: colon_x(gens[u], gens[u].degree - D) for u in range(H(D))}
        base = lead
        free = []
        for u, h in tails.items():
            if (n, u) in params:
                base = base + h.scale(params[(n, u)])
            else:
                free.append(u)
        # canonical multiples in degree Dp leading with y^w, H_Dp <= w < n
        canon = []
        for w in range(H(Dp), n):
            g = gens[w]
            canon.append(g.times_x(Dp - g.degree).times_y(0) if g.degree <= Dp else None)
        if any(c is None for c in canon):
            raise ChartError("generator degrees out of order")
        target = (prev.times_y() - base.times_x(delta)).coeffs
        cols = [tails[u].times_x(delta).coeffs for u in free] + [c.coeffs for c in canon]
        if not cols:
            if any(target):
                raise ChartError(f"closure fails at f_{n}")
            gens[n] = base
            continue
        try:
            sol = solve(cols, target, field)
        except ValueError as exc:
            raise ChartError(f"dependent coefficients of f_{n} are not determined") from exc
        if sol is None:
            raise ChartError(f"closure system for f_{n} is inconsistent")
        f = base
        for u, c in zip(free, sol):
            f = f + tails[u].scale(c)
        gens[n] = f
    I = span_ideal(list(gens.values()), H.s + 1, field)
    if I.hilbert_values() != tuple(H(d) for d in range(H.s + 2)):
        raise ChartError("chart ideal has the wrong Hilbert function")
    return I


# --------------------------------------------------------------------------
# theta matrices


@dataclass(frozen=True)
class ThetaMatrix:
    i: int
    entries: tuple
    domain: tuple
    range_: tuple
    field: FieldSpec = QQ

    @property
    def shape(self) -> tuple:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def rank(self) -> int:
        return rank(self.entries, self.field, len(self.domain))

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "domain": [list(x) for x in self.domain],
            "range": [list(x) for x in self.range_],
            "entries": [[str(a) for a in row] for row in self.entries],
        }


def _primed(std: StandardGenerators, v: int) -> list[tuple]:
    """Labels ``(generator, x-power)`` of the basis of F'_v, highest index first."""
    H = std.H
    out = []
    if v > H.mu:
        t = H(v - 1)
        out.append((t, v - std.degree(t)))
    lo = H(v)
    hi = H(v - 1) - 1 if v > H.mu else H.mu
    for i in range(hi, lo - 1, -1):
        out.append((i, 0))
    return out


def theta_matrix(I: GradedIdeal, i: int, std: StandardGenerators | None = None) -> ThetaMatrix:
    """Multiplication by x from F'_i to F'_(i+1), reduced modulo y I_i."""
    std = std or standard_generators(I)
    H = std.H
    if not H.mu <= i < H.s:
        raise IdealError(f"theta is defined for mu <= i < s, got {i}")
    F = I.field
    dom = _primed(std, i)
    rng = _primed(std, i + 1)
    cols = [std.gens[g].times_x(a).coeffs for g, a in rng]
    yI = [BiForm(i, r, F).times_y().coeffs for r in I[i].basis]
    columns = cols + yI
    entries = [[F.zero] * len(dom) for _ in rng]
    for c, (g, a) in enumerate(dom):
        v = std.gens[g].times_x(a + 1).coeffs
        sol = solve(columns, v, F)
        if sol is None:
            raise IdealError("x F'_i does not reduce into F'_(i+1)")
        for r in range(len(rng)):
            entries[r][c] = sol[r]
    return ThetaMatrix(i, tuple(tuple(r) for r in entries), tuple(dom), tuple(rng), F)


# --------------------------------------------------------------------------
# level ideals, common factors


def level_ideal(V: GradedSubspace) -> GradedIdeal:
    """``L(V)``: the ancestor ideal of V plus all forms of degree above deg V."""
    if V.dim == 0:
        raise IdealError("level ideal of the zero subspace")
    anc = ancestor_ideal(V, V.degree)
    pieces = list(anc.pieces) + [GradedSubspace.full(V.degree + 1, V.field)]
    return GradedIdeal(V.field, tuple(pieces))


def _divide_form(h: BiForm, f: BiForm) -> BiForm:
    """Exact quotient ``h / f``."""
    dq = h.degree - f.degree
    cols = [f.times_x(j).times_y(dq - j).coeffs for j in range(dq + 1)]
    sol = solve(cols, h.coeffs, h.field)
    if sol is None:
        raise IdealError(f"{f} does not divide {h}")
    return BiForm(dq, tuple(sol), h.field)


def common_factor_split(I: GradedIdeal) -> tuple:
    """``(f, I')`` with ``I = f I'`` and ``I'`` of finite colength."""
    F = I.field
    gens = I.minimal_generators()
    if not gens:
        raise IdealError("zero ideal")
    f = gcd_of_forms(gens)
    c = f.degree
    if c == 0:
        return BiForm(0, (1,), F), I
    pieces = []
    for d in range(c, I.top + 1):
        rows = [_divide_form(BiForm(d, r, F), f).coeffs for r in I[d].basis]
        pieces.append(GradedSubspace.from_rows(d - c, rows, F))
    return f, GradedIdeal(F, tuple(pieces))


# --------------------------------------------------------------------------
# sampling


def _random_subspace(U: GradedSubspace, dim: int, rng: random.Random) -> GradedSubspace | None:
    F = U.field
    n = U.degree + 1
    rows = []
    for _ in range(dim):
        coeffs = [F.random_element(rng) for _ in range(U.dim)]
        rows.append([sum(c * b[j] for c, b in zip(coeffs, U.basis)) for j in range(n)])
    V = GradedSubspace.from_rows(U.degree, rows, F)
    return V if V.dim == dim else None


def _flag_top_down(H: OSequence, field: FieldSpec, rng: random.Random):
    s = H.s
    pieces = {s: GradedSubspace.full(s, field), s + 1: GradedSubspace.full(s + 1, field)}
    for i in range(s - 1, H.mu - 1, -1):
        U = divide_by_R1(pieces[i + 1])
        need = i + 1 - H(i)
        if U.dim < need:
            return None
        V = _random_subspace(U, need, rng)
        if V is None:
            return None
        pieces[i] = V
    for i in range(H.mu):
        pieces[i] = GradedSubspace.zero(i, field)
    return GradedIdeal(field, tuple(pieces[d] for d in range(s + 2)))


def _flag_bottom_up(H: OSequence, field: FieldSpec, rng: random.Random):
    s = H.s
    pieces = [GradedSubspace.zero(i, field) for i in range(H.mu)]
    prev = None
    for i in range(H.mu, s + 2):
        need = i + 1 - H(i)
        W = GradedSubspace.zero(i, field) if prev is None else multiply_by_R1(prev)
        if W.dim > need:
            return None
        extra = _random_subspace(GradedSubspace.full(i, field), need - W.dim, rng) if need > W.dim else None
        V = W if extra is None else W + extra
        if V.dim != need:
            return None
        pieces.append(V)
        prev = V
    return GradedIdeal(field, tuple(pieces))


def _random_form(d: int, field: FieldSpec, rng: random.Random) -> BiForm:
    return BiForm(d, tuple(field.random_element(rng) for _ in range(d + 1)), field)


def hilbert_burch_ideal(H: OSequence, triple: BettiTriple, field: FieldSpec, rng: random.Random):
    """Maximal minors of a random degree matrix with the shifts of ``triple``."""
    gdeg = [d for d in sorted(triple.nu) for _ in range(triple.nu[d])]
    rdeg = [d for d in sorted(triple.beta) for _ in range(triple.beta[d])]
    n = len(gdeg)
    mat = [[(_random_form(b - a, field, rng) if b - a > 0 else None) for a in gdeg] for b in rdeg]
    minors = []
    for g in range(n):
        sub = [[row[k] for k in range(n) if k != g] for row in mat]
        m = form_matrix_det(sub, gdeg[g], field)
        minors.append(m if g % 2 == 0 else -m)
    return span_ideal(minors, H.s + 1, field)


FLAG_TRIES = 8


def random_ideal(H: OSequence, field: FieldSpec, seed=0, target_tau=None, max_tries: int = 200) -> GradedIdeal:
    """A seeded random ideal with Hilbert function H.

    Without ``target_tau`` a flag is drawn from the top degree downward,
    alternating with an upward draw when a step has too little room.  Long
    constant tails of H defeat both (the pieces there are special), so after
    FLAG_TRIES failures the draw switches to a Hilbert-Burch matrix with the
    generic shifts.  With
    ``target_tau`` the generator and relation degrees are fixed by the
    triple and the ideal is the minors of a random Hilbert-Burch matrix.
    """
    if not H.is_artinian:
        raise IdealError("random_ideal samples Artinian ideals")
    rng = random.Random(seed)
    want = None
    if target_tau is not None:
        want = complete_triple(H, tau=target_tau)
        want.check()
    hb = want
    for attempt in range(max_tries):
        if want is None and attempt < FLAG_TRIES:
            I = _flag_top_down(H, field, rng) if attempt % 2 == 0 else _flag_bottom_up(H, field, rng)
            if I is not None and I.hilbert_values() == tuple(H(d) for d in range(H.s + 2)):
                return I
            continue
        if hb is None:
            hb = beta_min_triple(H)
        try:
            I = hilbert_burch_ideal(H, hb, field, rng)
        except IdealError:
            continue
        if I.hilbert_values() != tuple(H(d) for d in range(H.s + 2)):
            continue
        if want is None or invariants_of(I).triple.tau_seq() == want.tau_seq():
            return I
    where = f"tau={tuple(target_tau)}" if target_tau is not None else "generic"
    raise SamplingError(f"no ideal for H={H} ({where}) over {field.to_json()} after {max_tries} tries")


# --------------------------------------------------------------------------
# serialization


def form_to_list(f: BiForm) -> dict:
    return {"degree": f.degree, "coeffs": [str(a) for a in f.coeffs]}


def form_from_list(data: Mapping, field: FieldSpec) -> BiForm:
    return BiForm(int(data["degree"]), tuple(field(a) for a in data["coeffs"]), field)


def ideal_to_json(I: GradedIdeal) -> dict:
    return {
        "field": I.field.to_json(),
        "top": I.top,
        "generators": [form_to_list(g) for g in I.minimal_generators()],
    }


def ideal_from_json(data: Mapping) -> GradedIdeal:
    F = FieldSpec.from_json(data["field"])
    gens = [form_from_list(g, F) for g in data["generators"]]
    top = int(data.get("top", max((g.degree for g in gens), default=0) + 1))
    I = span_ideal(gens, top, F)
    # carry the ideal up to s + 1 when the stored top is short
    H = analyze_H(I.hilbert_values())
    if H.is_artinian and I.top < H.s + 1:
        I = I.extend(H.s + 1)
    return I
