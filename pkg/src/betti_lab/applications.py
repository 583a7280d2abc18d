"""Socle types, subspace-avoiding ideals and intersections of level ideals."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra_core import (
    BiForm,
    DualSubspace,
    FieldSpec,
    GradedSubspace,
    multiply_by_R1,
    perp,
    principal_perp,
    rank,
)
from .graded_ideal import (
    GradedIdeal,
    IdealError,
    SamplingError,
    invariants_of,
    level_ideal,
    random_ideal,
)
from .hilbert_betti import (
    OSequence,
    analyze_H,
    artinian_sequences,
    complete_triple,
    level_sequence_check,
    socle_bounds,
)
from .strata_lab import find_monomial_with_beta


class InfeasibleSocle(ValueError):
    pass


# --------------------------------------------------------------------------
# socle types


@dataclass(frozen=True)
class SocleType:
    """Socle dimensions by degree; ``values[i]`` is ST_i."""

    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if any(v < 0 for v in vals):
            raise ValueError("socle dimensions are nonnegative")
        while vals and vals[-1] == 0:
            vals = vals[:-1]
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, data) -> "SocleType":
        if isinstance(data, SocleType):
            return data
        if isinstance(data, Mapping):
            top = max((int(k) for k in data), default=-1)
            return cls(tuple(int(data.get(i, data.get(str(i), 0))) for i in range(top + 1)))
        return cls(tuple(data))

    def __getitem__(self, i: int) -> int:
        return self.values[i] if 0 <= i < len(self.values) else 0

    @property
    def top(self) -> int:
        return len(self.values) - 1

    def as_dict(self) -> dict:
        return {i: v for i, v in enumerate(self.values)}


def socle_feasible(H: OSequence, ST) -> bool:
    """``e_(i+1) - e_(i+2) <= ST_i <= e_(i+1)`` for every i."""
    ST = SocleType.of(ST)
    bounds = socle_bounds(H)
    if ST.top >= H.s:
        return False
    return all(lo <= ST[i] <= hi for i, (lo, hi) in bounds.items())


def enumerate_H_for_socle(ST, degree_bound: int) -> list[OSequence]:
    """Every Artinian H with ``s <= degree_bound`` compatible with the socle type."""
    ST = SocleType.of(ST)
    if not ST.values:
        return []
    return [H for H in artinian_sequences(degree_bound) if socle_feasible(H, ST)]


def socle_beta(H: OSequence, ST) -> dict:
    """Relation counts forced by the socle type: ``beta_(i+2) = ST_i``."""
    ST = SocleType.of(ST)
    return {i: ST[i - 2] for i in range(H.mu + 1, H.s + 2)}


def realize_socle(H: OSequence, ST, field: FieldSpec = FieldSpec.prime(10007)) -> GradedIdeal:
    """A monomial ideal with Hilbert function H and socle type ST."""
    ST = SocleType.of(ST)
    if not socle_feasible(H, ST):
        raise InfeasibleSocle(f"socle type {ST.values} is not compatible with H={H}")
    triple = complete_triple(H, beta=socle_beta(H, ST))
    st = find_monomial_with_beta(H, triple)
    if st is None:
        raise RuntimeError(f"no monomial ideal with H={H} and beta={triple.beta_seq()}")
    I = st.to_ideal(H.s + 1, field)
    got = invariants_of(I).socle
    if any(got.get(i, 0) != ST[i] for i in range(max(H.s, ST.top + 1))):
        raise RuntimeError("realized socle does not match")
    return I


@dataclass
class NecessityCheck:
    H: OSequence
    q: int
    ideals: int
    violations: list

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "H": list(self.H.trimmed()),
            "q": self.q,
            "ideals": self.ideals,
            "violations": [list(v) for v in self.violations],
        }


def socle_necessity(H: OSequence, q: int, budget: int | None = None, keep: int = 10) -> NecessityCheck:
    """Read the socle of every ideal of G(H)(F_q) and test it against the bounds."""
    from .strata_lab import enumerate_GH

    n = 0
    bad = []
    for I in enumerate_GH(H, q, budget):
        n += 1
        soc = invariants_of(I, check=False).socle
        if not socle_feasible(H, soc):
            if len(bad) < keep:
                bad.append(tuple(soc.get(i, 0) for i in range(H.s + 1)))
    return NecessityCheck(H, q, n, bad)


# --------------------------------------------------------------------------
# avoiding subspaces


def _misses(W: GradedSubspace, L: DualSubspace) -> bool:
    """``W`` meets ``<f R>`` only in 0 iff ``W^perp + L`` is everything (L the perp of f R)."""
    Wp = perp(W)
    return rank(list(Wp.basis) + list(L.basis), W.field, W.degree + 1) == W.degree + 1


def avoid_subspaces(H: OSequence, W: Mapping, field: FieldSpec, seed=0, max_tries: int = 200) -> GradedIdeal:
    """An ideal of the beta_max stratum with ``I_i`` meeting ``W_i`` only in 0.

    Builds the chain ``f_s = 1 | f_(s-1) | ... | f_mu`` from the top, each
    step multiplying by ``e_(i+1)`` new factors ``x - a y`` with distinct
    roots, and accepts a step once every ``W_i`` is missed.  The test runs
    on the dual side: ``<f R_(i-c)>^perp`` is spanned by the powers
    ``(a X + Y)^i``.
    """
    if not H.is_artinian:
        raise IdealError("avoid_subspaces needs an Artinian H")
    field.require_chart_characteristic(H.s + 1)
    rng = random.Random(seed)
    Wd = {}
    for i, Wi in W.items():
        i = int(i)
        if isinstance(Wi, GradedSubspace):
            Wd[i] = Wi
        else:
            Wd[i] = GradedSubspace.from_rows(i, [f.coeffs if isinstance(f, BiForm) else f for f in Wi], field)
        if Wd[i].dim > H(i):
            raise ValueError(f"dim W_{i} exceeds H_{i}")
    for _ in range(max_tries):
        roots: list = []
        ok = True
        for i in range(H.s - 1, H.mu - 1, -1):
            need = H.e(i + 1)
            cand = []
            while len(cand) < need:
                a = field.random_element(rng)
                if a not in roots and a not in cand:
                    cand.append(a)
            roots.extend(cand)
            f = BiForm.from_linear_factors(roots, field)
            Wi = Wd.get(i)
            if Wi is not None and Wi.dim and not _misses(Wi, principal_perp(f, i)):
                ok = False
                break
        if not ok:
            continue
        I = _chain_ideal(H, roots, field)
        if all(I[i].intersect(Wd[i]).dim == 0 for i in Wd if H.mu <= i < H.s):
            return I
    raise SamplingError(f"could not avoid W for H={H} over {field.to_json()} in {max_tries} tries")


def _chain_ideal(H: OSequence, roots: Sequence, field: FieldSpec) -> GradedIdeal:
    """``I_i = f_i R_(i - H_i)`` with ``f_i`` the product over the first ``H_i`` roots."""
    pieces = [GradedSubspace.zero(i, field) for i in range(H.mu)]
    for i in range(H.mu, H.s + 2):
        c = H(i)
        f = BiForm.from_linear_factors(roots[:c], field)
        rows = [f.times_x(k).times_y(i - c - k).coeffs for k in range(i - c + 1)]
        pieces.append(GradedSubspace.from_rows(i, rows, field))
    return GradedIdeal(field, tuple(pieces))


# --------------------------------------------------------------------------
# level ideals and their intersections


@dataclass(frozen=True)
class LevelSpec:
    j: int
    d: int
    N: OSequence | None = None
    tau: int | None = None

    def __post_init__(self):
        if not 1 <= self.d <= self.j + 1:
            raise ValueError(f"type d={self.d} outside [1, j+1] for j={self.j}")
        if self.tau is not None and not 1 <= self.tau <= min(self.d, self.j + 2 - self.d):
            raise ValueError(f"tau={self.tau} outside [1, min(d, j+2-d)]")
        if self.N is not None:
            chk = level_sequence_check(self.N, self.d, self.j)
            if not chk:
                raise ValueError(f"N={self.N} is not a level sequence: {chk.reason}")
            if self.tau is not None and chk.tau != self.tau:
                raise ValueError(f"N forces tau={chk.tau}, not {self.tau}")

    def to_json(self) -> dict:
        out = {"j": self.j, "d": self.d}
        if self.tau is not None:
            out["tau"] = self.tau
        if self.N is not None:
            out["N"] = list(self.N.trimmed())
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "LevelSpec":
        N = analyze_H(data["N"]) if data.get("N") is not None else None
        return cls(int(data["j"]), int(data["d"]), N, data.get("tau"))


def level_specs_from_json(data) -> list[LevelSpec]:
    """A list of specs, or an object whose ``specs`` key holds one."""
    if isinstance(data, Mapping):
        data = data["specs"]
    return [LevelSpec.from_json(x) for x in data]


def generic_level_sequence(j: int, d: int, tau: int) -> OSequence:
    """The largest level sequence with ``N_j = j+1-d`` and ``e_j = tau - 1``."""
    vals = {j: j + 1 - d}
    e = tau - 1
    for i in range(j, 0, -1):
        vals[i - 1] = min(i, vals[i] + e)
    return analyze_H([vals[i] for i in range(j + 1)] + [0])


def level_triple(N: OSequence):
    """Betti data of a level algebra: no relations below the socle degree plus two."""
    return complete_triple(N, beta={i: 0 for i in range(N.mu + 1, N.s + 1)})


def sample_level(spec: LevelSpec, field: FieldSpec, rng: random.Random) -> GradedIdeal:
    """A level ideal for the spec: generic, or with the prescribed N or tau."""
    if spec.N is None and spec.tau is None:
        for _ in range(100):
            rows = [[field.random_element(rng) for _ in range(spec.j + 1)] for _ in range(spec.d)]
            V = GradedSubspace.from_rows(spec.j, rows, field)
            if V.dim == spec.d:
                return level_ideal(V)
        raise SamplingError("could not draw a full-rank subspace")
    N = spec.N or generic_level_sequence(spec.j, spec.d, spec.tau)
    triple = level_triple(N)
    I = random_ideal(N, field, rng.getrandbits(64), target_tau=triple.tau_seq())
    return level_ideal(I[spec.j])


def intersect_ideals(ideals: Sequence[GradedIdeal]) -> GradedIdeal:
    field = ideals[0].field
    top = max(I.top for I in ideals)
    pieces = []
    for u in range(top + 1):
        V = GradedSubspace.full(u, field)
        for I in ideals:
            V = V.intersect(I[u])
        pieces.append(V)
    return GradedIdeal(field, tuple(pieces))


@dataclass
class IntersectionResult:
    specs: list
    ideals: list
    I: GradedIdeal
    H: OSequence
    expected: tuple
    tau: dict
    tau_levels: list
    tau_threshold: dict
    tau_all: dict

    @property
    def h_match(self) -> bool:
        return self.H.trimmed() == self.expected

    @property
    def tau_degrees(self) -> list:
        """Degrees where additivity is compared: ``mu(I) <= u <= j_1``."""
        return [u for u in sorted(self.tau) if u <= max(s.j for s in self.specs)]

    @property
    def tau_additive(self) -> bool:
        return all(self.tau[u] == self.tau_threshold[u] for u in self.tau_degrees)

    @property
    def tau_additive_all(self) -> bool:
        return all(self.tau[u] == self.tau_all[u] for u in self.tau_degrees)

    def to_json(self) -> dict:
        return {
            "specs": [s.to_json() for s in self.specs],
            "H": list(self.H.trimmed()),
            "expected_H": list(self.expected),
            "h_match": self.h_match,
            "tau_V": self.tau_levels,
            "tau": {str(u): self.tau[u] for u in sorted(self.tau)},
            "tau_sum_j_at_least_u": {str(u): self.tau_threshold[u] for u in self.tau_degrees},
            "tau_sum_all": {str(u): self.tau_all[u] for u in self.tau_degrees},
            "tau_additive": self.tau_additive,
            "tau_additive_all": self.tau_additive_all,
        }


def expected_intersection_H(Ns: Sequence[OSequence]) -> tuple:
    top = max(N.s for N in Ns)
    vals = [min(sum(N(u) for N in Ns), u + 1) for u in range(top + 1)]
    while len(vals) > 1 and vals[-1] == 0 and vals[-2] == 0:
        vals.pop()
    return analyze_H(vals).trimmed()


def intersect_levels(specs: Sequence[LevelSpec], field: FieldSpec, seed=0) -> IntersectionResult:
    """Intersect one sampled level ideal per spec and compare H with the termwise-min prediction."""
    specs = list(specs)
    if not specs:
        raise ValueError("need at least one level spec")
    if any(a.j < b.j for a, b in zip(specs, specs[1:])):
        raise ValueError("specs must be ordered with j_1 >= j_2 >= ...")
    rng = random.Random(seed)
    ideals = [sample_level(sp, field, rng) for sp in specs]
    top = max(sp.j for sp in specs) + 1
    ideals = [I if I.top >= top else GradedIdeal(field, I.pieces + tuple(GradedSubspace.full(u, field) for u in range(I.top + 1, top + 1))) for I in ideals]
    I = intersect_ideals(ideals)
    H = analyze_H(I.hilbert_values())
    Ns = [analyze_H(J.hilbert_values()) for J in ideals]
    expected = expected_intersection_H(Ns)
    tau_levels = []
    for sp, J in zip(specs, ideals):
        V = J[sp.j]
        tau_levels.append(multiply_dim(V) - V.dim)
    tau = {}
    thr, allsum = {}, {}
    if H.is_artinian:
        for u in range(H.mu, H.s + 1):
            V = I[u]
            tau[u] = multiply_dim(V) - V.dim
            thr[u] = sum(t for sp, t in zip(specs, tau_levels) if sp.j >= u)
            allsum[u] = sum(tau_levels)
    return IntersectionResult(specs, ideals, I, H, expected, tau, tau_levels, thr, allsum)


def multiply_dim(V: GradedSubspace) -> int:
    return multiply_by_R1(V).dim


@dataclass
class IntersectionReport:
    specs: list
    trials: int
    h_hits: int
    tau_hits: int
    tau_all_hits: int
    tau_vacuous: int

    def to_json(self) -> dict:
        return {
            "specs": [s.to_json() for s in self.specs],
            "trials": self.trials,
            "h_match_fraction": self.h_hits / self.trials,
            "tau_additive_fraction": self.tau_hits / self.trials,
            "tau_additive_all_fraction": self.tau_all_hits / self.trials,
            "tau_vacuous_trials": self.tau_vacuous,
        }


def intersection_report(specs: Sequence[LevelSpec], field: FieldSpec, trials: int, seed=0) -> IntersectionReport:
    rng = random.Random(seed)
    h = t = ta = vac = 0
    for _ in range(trials):
        res = intersect_levels(specs, field, rng.getrandbits(64))
        h += res.h_match
        t += res.tau_additive
        ta += res.tau_additive_all
        vac += not res.tau_degrees
    return IntersectionReport(list(specs), trials, h, t, ta, vac)
