"""Censuses of G(H) over small prime fields, and the checks built on them.

The enumeration runs top-down: V_s = R_s, and each V_(i-1) ranges over the
subspaces of the right dimension inside R_(-1) V_i.  That is exactly the
set of chains with R_1 V_(i-1) inside V_i, so every ideal with Hilbert
function H is produced once.  Counting uses a compiled kernel; the pure
Python stream in :func:`enumerate_GH` is kept as a slower cross-check that
goes through :func:`invariants_of`.
"""

from __future__ import annotations

import csv
import io
import itertools
import os
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Sequence

from .algebra_core import BiForm, FieldSpec, GradedSubspace, divide_by_R1, is_prime
from .graded_ideal import (
    GradedIdeal,
    chart_ideal,
    invariants_of,
    random_ideal,
    span_ideal,
)
from .hilbert_betti import (
    BettiTriple,
    BoundError,
    OSequence,
    build_lattice,
    codim_stratum,
    complete_triple,
    dim_moduli,
    pos,
    triple_from_eta,
)

# ceilings on the estimated number of ideals
DEFAULT_BUDGET = 200_000_000
PYTHON_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: int, budget: int):
        super().__init__(f"estimated {estimate} ideals exceeds the budget {budget} (set BETTI_LAB_BUDGET to raise it)")
        self.estimate = estimate
        self.budget = budget


def budget_from_env(budget: int | None = None, default: int = DEFAULT_BUDGET) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get("BETTI_LAB_BUDGET", default))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for t in range(k):
        num *= q ** (n - t) - 1
        den *= q ** (t + 1) - 1
    return num // den


def chain_bound(H: OSequence, q: int) -> int:
    """Crude bound for |G(H)(F_q)|: dim R_(-1) V_(i+1) is at most min(d_(i+1) - 1, i + 1)."""
    d = H.dims
    out = 1
    for i in range(H.mu, H.s):
        out *= gaussian_binomial(min(d[i + 1] - 1, i + 1), d[i], q)
    return out


def estimate_count(H: OSequence, q: int) -> int:
    """Estimated |G(H)(F_q)|: one affine cell of dimension at most dim G(H) per monomial ideal."""
    cells = sum(1 for _ in staircases_of(H))
    return min(cells * q ** dim_moduli(H), chain_bound(H, q))


def _guard(H: OSequence, q: int, budget: int | None, default: int = DEFAULT_BUDGET) -> None:
    if not is_prime(q):
        raise ValueError(f"census needs a prime field size, got {q}")
    if not H.is_artinian:
        raise ValueError("census needs an Artinian H")
    est = estimate_count(H, q)
    lim = budget_from_env(budget, default)
    if est > lim:
        raise BudgetExceeded(est, lim)


# --------------------------------------------------------------------------
# python enumeration


def subspaces_of(U: GradedSubspace, d: int) -> Iterator[GradedSubspace]:
    """Every d-dimensional subspace of U, one per RREF pattern in U's coordinates."""
    F = U.field
    m = U.dim
    for piv in itertools.combinations(range(m), d):
        pset = set(piv)
        free = [(r, c) for r in range(d) for c in range(piv[r] + 1, m) if c not in pset]
        for vals in itertools.product(range(F.p), repeat=len(free)):
            C = [[0] * m for _ in range(d)]
            for r, c in enumerate(piv):
                C[r][c] = 1
            for (r, c), v in zip(free, vals):
                C[r][c] = v
            rows = [[sum(C[r][k] * U.basis[k][j] for k in range(m)) % F.p for j in range(U.degree + 1)] for r in range(d)]
            yield GradedSubspace.from_rows(U.degree, rows, F)


def enumerate_GH(H: OSequence, q: int, budget: int | None = None) -> Iterator[GradedIdeal]:
    """Every graded ideal of F_q[x, y] with Hilbert function H, each once."""
    _guard(H, q, budget, PYTHON_BUDGET)
    F = FieldSpec.prime(q)
    s, mu = H.s, H.mu
    d = H.dims
    low = [GradedSubspace.zero(i, F) for i in range(mu)]
    tail = [GradedSubspace.full(s, F), GradedSubspace.full(s + 1, F)]

    def walk(i, chain):
        # chain holds V_(i+1), ..., V_s
        if i < mu:
            yield GradedIdeal(F, tuple(low + chain + tail[1:]))
            return
        for V in subspaces_of(divide_by_R1(chain[0]), d[i]):
            yield from walk(i - 1, [V] + chain)

    yield from walk(s - 1, tail[:1])


# --------------------------------------------------------------------------
# censuses


def _tau_caps(H: OSequence) -> list[int]:
    """Range of tau in each degree mu..s-1 wide enough to expose anything off the lattice."""
    d = H.dims
    return [min(d[i], i + 2 - d[i]) for i in range(H.mu, H.s)]


def eta_of_tau(H: OSequence, tau: Sequence[int]) -> tuple:
    """Lattice coordinate of a tau vector (tau_mu, ..., tau_(s-1))."""
    return tuple(H.e(i) + 1 - t - pos(H.e(i) - H.e(i + 1)) for i, t in zip(range(H.mu, H.s), tau))


@dataclass
class StratumCensus:
    H: OSequence
    q: int
    counts: dict
    total: int
    outside: dict = dc_field(default_factory=dict)

    def check(self) -> None:
        if sum(self.counts.values()) + sum(self.outside.values()) != self.total:
            raise AssertionError("census counts do not add up to the total")

    def rows(self) -> list[dict]:
        out = []
        for eta in sorted(self.counts):
            t = triple_from_eta(self.H, eta)
            out.append({
                "eta": eta,
                "beta": t.beta_seq(),
                "codim_predicted": codim_stratum(self.H, t),
                "count": self.counts[eta],
            })
        return out

    def to_json(self) -> dict:
        return {
            "H": list(self.H.trimmed()),
            "q": self.q,
            "total": self.total,
            "strata": [
                {"eta": list(r["eta"]), "beta": list(r["beta"]), "codim_predicted": r["codim_predicted"], "count": r["count"]}
                for r in self.rows()
            ],
            "outside_lattice": [{"tau": list(k), "count": v} for k, v in sorted(self.outside.items())],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["eta", "beta", "codim_predicted", "count"])
        for r in self.rows():
            w.writerow([" ".join(map(str, r["eta"])), " ".join(map(str, r["beta"])), r["codim_predicted"], r["count"]])
        return buf.getvalue()


def merge(a: StratumCensus, b: StratumCensus) -> StratumCensus:
    if a.H != b.H or a.q != b.q:
        raise ValueError("can only merge censuses of the same H and q")
    counts = {k: a.counts.get(k, 0) + b.counts.get(k, 0) for k in set(a.counts) | set(b.counts)}
    outside = {k: a.outside.get(k, 0) + b.outside.get(k, 0) for k in set(a.outside) | set(b.outside)}
    return StratumCensus(a.H, a.q, counts, a.total + b.total, outside)


def _empty_census(H: OSequence, q: int) -> StratumCensus:
    return StratumCensus(H, q, {node.eta: 0 for node in build_lattice(H).nodes}, 0)


def _compiled_part(args):
    from ._census_kernel import walk_counts

    vals, q, part, nparts = args
    from .hilbert_betti import analyze_H

    H = analyze_H(vals)
    dims = {i: H.dims[i] for i in range(H.mu, H.s + 1)}
    return walk_counts(dims, H.mu, H.s, _tau_caps(H), q, part, nparts)


def _census_from_hist(H: OSequence, q: int, hist) -> StratumCensus:
    out = _empty_census(H, q)
    caps = _tau_caps(H)
    for idx, n in enumerate(hist):
        n = int(n)
        if not n:
            continue
        tau, rest = [], idx
        for c in caps:
            tau.append(rest % c + 1)
            rest //= c
        eta = eta_of_tau(H, tau)
        if eta in out.counts:
            out.counts[eta] += n
        else:
            out.outside[tuple(tau)] = out.outside.get(tuple(tau), 0) + n
        out.total += n
    return out


def stratum_census(H: OSequence, q: int, engine: str = "compiled", jobs: int = 1, budget: int | None = None) -> StratumCensus:
    """Tally every ideal of G(H)(F_q) by its lattice coordinate.

    ``engine="python"`` walks :func:`enumerate_GH` and reads each ideal's
    invariants; ``"compiled"`` does the same walk in the numba kernel and
    only tracks tau.  Work is split over ``jobs`` processes by the choice
    of V_(s-1).
    """
    _guard(H, q, budget, PYTHON_BUDGET if engine == "python" else DEFAULT_BUDGET)
    if engine == "python":
        out = _empty_census(H, q)
        for I in enumerate_GH(H, q, budget):
            inv = invariants_of(I, check=False)
            t = inv.triple
            try:
                t.check()
            except BoundError:
                key = t.tau_seq()[:-1]
                out.outside[key] = out.outside.get(key, 0) + 1
            else:
                out.counts[t.eta] += 1
            out.total += 1
        return out
    if engine != "compiled":
        raise ValueError(f"unknown engine {engine!r}")
    vals = H.trimmed()
    if jobs <= 1:
        return _census_from_hist(H, q, _compiled_part((vals, q, 0, 1)))
    from multiprocessing import Pool

    with Pool(jobs) as pool:
        parts = pool.map(_compiled_part, [(vals, q, k, jobs) for k in range(jobs)])
    hist = parts[0]
    for h in parts[1:]:
        hist = hist + h
    return _census_from_hist(H, q, hist)


def census_from_json(data: Mapping) -> StratumCensus:
    from .hilbert_betti import analyze_H

    H = analyze_H(data["H"])
    counts = {tuple(r["eta"]): int(r["count"]) for r in data["strata"]}
    outside = {tuple(r["tau"]): int(r["count"]) for r in data.get("outside_lattice", [])}
    return StratumCensus(H, int(data["q"]), counts, int(data["total"]), outside)


def beta_max_count(H: OSequence, q: int) -> int:
    """Points of the beta_max stratum: a product of projective spaces of dimensions e_i."""
    out = 1
    for i in range(H.mu + 1, H.s + 1):
        out *= (q ** (H.e(i) + 1) - 1) // (q - 1)
    return out


# --------------------------------------------------------------------------
# counting polynomials


def _interpolate_q(points: Sequence[int], values: Sequence[int]) -> list[Fraction]:
    n = len(points)
    coeffs = [Fraction(0)] * n
    for k in range(n):
        basis = [Fraction(1)]
        denom = 1
        for m, xm in enumerate(points):
            if m == k:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xm * basis[t + 1]
            denom *= points[k] - xm
        for t in range(n):
            coeffs[t] += Fraction(values[k], denom) * basis[t]
    return coeffs


def poly_eval(coeffs: Sequence, q) -> Fraction:
    return sum(Fraction(c) * q**t for t, c in enumerate(coeffs))


def poly_degree(coeffs: Sequence) -> int:
    deg = -1
    for t, c in enumerate(coeffs):
        if c:
            deg = t
    return deg


@dataclass
class CountingFit:
    H: OSequence
    primes: tuple
    polys: dict
    degrees: dict
    integral: dict

    def predict(self, eta, q: int) -> Fraction:
        return poly_eval(self.polys[eta], q)

    def to_json(self) -> dict:
        return {
            "H": list(self.H.trimmed()),
            "primes": list(self.primes),
            "strata": [
                {
                    "eta": list(eta),
                    "coeffs": [str(c) for c in self.polys[eta]],
                    "degree": self.degrees[eta],
                    "integral": self.integral[eta],
                }
                for eta in sorted(self.polys)
            ],
        }


class InsufficientPoints(ValueError):
    pass


def fit_counting_polynomials(censuses: Sequence[StratumCensus], min_prime: int | None = None) -> CountingFit:
    """Exact interpolation of each stratum's count as a polynomial in q.

    Primes below ``max(5, s)`` are dropped from the fit.  Needs at least
    ``dim G(H) + 1`` usable primes, so the interpolant is pinned down by
    the degree bound.
    """
    if not censuses:
        raise InsufficientPoints("no censuses given")
    H = censuses[0].H
    lo = min_prime if min_prime is not None else max(5, H.s)
    use = sorted({c.q: c for c in censuses if c.q >= lo}.values(), key=lambda c: c.q)
    if any(c.H != H for c in censuses):
        raise ValueError("censuses are for different H")
    need = dim_moduli(H) + 1
    if len(use) < need:
        raise InsufficientPoints(f"need {need} primes >= {lo}, have {len(use)}")
    qs = [c.q for c in use]
    polys, degrees, integral = {}, {}, {}
    for eta in use[0].counts:
        coeffs = _interpolate_q(qs, [c.counts.get(eta, 0) for c in use])
        polys[eta] = coeffs
        degrees[eta] = poly_degree(coeffs)
        integral[eta] = all(c.denominator == 1 for c in coeffs)
    return CountingFit(H, tuple(qs), polys, degrees, integral)


def format_poly(coeffs: Sequence) -> str:
    terms = []
    for t in range(len(coeffs) - 1, -1, -1):
        c = coeffs[t]
        if not c:
            continue
        mono = "" if t == 0 else ("q" if t == 1 else f"q^{t}")
        terms.append(f"{c}{'*' + mono if mono else ''}" if c != 1 or not mono else mono)
    return " + ".join(terms) if terms else "0"


@dataclass
class CodimReport:
    H: OSequence
    primes: tuple
    holdout: int | None
    nodes: list
    beta_max_ok: bool

    @property
    def passed(self) -> bool:
        return self.beta_max_ok and all(n["status"] == "PASS" for n in self.nodes)

    def to_json(self) -> dict:
        return {
            "H": list(self.H.trimmed()),
            "primes": list(self.primes),
            "holdout": self.holdout,
            "dim": dim_moduli(self.H),
            "beta_max_ok": self.beta_max_ok,
            "passed": self.passed,
            "nodes": self.nodes,
        }


def verify_codim_report(
    H: OSequence,
    primes: Sequence[int],
    holdout: int | None = None,
    engine: str = "compiled",
    jobs: int = 1,
    codim_table: Mapping | None = None,
    budget: int | None = None,
    censuses: Sequence[StratumCensus] | None = None,
    min_prime: int | None = None,
) -> CodimReport:
    """Fit counting polynomials and compare degrees with dim G(H) minus the predicted codims.

    ``codim_table`` overrides the predicted codimensions (a negative control).
    """
    have = {c.q: c for c in (censuses or [])}
    cens = [have.get(q) or stratum_census(H, q, engine, jobs, budget) for q in primes]
    fit = fit_counting_polynomials(cens, min_prime)
    dim = dim_moduli(H)
    held = None
    if holdout is not None:
        held = have.get(holdout) or stratum_census(H, holdout, engine, jobs, budget)
    bmax_ok = True
    nodes = []
    lattice = build_lattice(H)
    top_eta = max(lattice.nodes, key=lambda n: n.codim).eta
    for node in lattice.nodes:
        eta = node.eta
        codim = codim_table[eta] if codim_table is not None else node.codim
        deg = fit.degrees[eta]
        entry = {
            "eta": list(eta),
            "beta": list(node.triple.beta_seq()),
            "codim_predicted": codim,
            "degree_expected": dim - codim,
            "degree_fitted": deg,
            "integral": fit.integral[eta],
            "poly": format_poly(fit.polys[eta]),
        }
        ok = deg == dim - codim and fit.integral[eta]
        if held is not None:
            pred = fit.predict(eta, holdout)
            entry["holdout_count"] = held.counts[eta]
            entry["holdout_predicted"] = str(pred)
            entry["holdout_ok"] = pred == held.counts[eta]
            ok = ok and entry["holdout_ok"]
        entry["status"] = "PASS" if ok else "FAIL"
        nodes.append(entry)
    for c in cens + ([held] if held is not None else []):
        if c.counts[top_eta] != beta_max_count(H, c.q) or c.outside:
            bmax_ok = False
    return CodimReport(H, tuple(primes), holdout, nodes, bmax_ok)


# --------------------------------------------------------------------------
# probes


@dataclass
class GenericityResult:
    H: OSequence
    p: int
    trials: int
    hits: int
    counts: dict

    @property
    def fraction(self) -> float:
        return self.hits / self.trials if self.trials else 0.0

    def to_json(self) -> dict:
        return {
            "H": list(self.H.trimmed()),
            "p": self.p,
            "trials": self.trials,
            "beta_min_hits": self.hits,
            "fraction": self.fraction,
            "by_eta": [{"eta": list(k), "count": v} for k, v in sorted(self.counts.items())],
        }


def genericity_probe(H: OSequence, p: int, trials: int, seed=0) -> GenericityResult:
    """How often a random ideal lands in the beta_min stratum."""
    F = FieldSpec.prime(p)
    rng = random.Random(seed)
    counts = {}
    for _ in range(trials):
        I = random_ideal(H, F, rng.getrandbits(64))
        eta = invariants_of(I).triple.eta
        counts[eta] = counts.get(eta, 0) + 1
    bottom = (0,) * (H.s - H.mu)
    return GenericityResult(H, p, trials, counts.get(bottom, 0), counts)


@dataclass
class SpecializationResult:
    H: OSequence
    points: list
    limit: tuple
    ok: bool

    def to_json(self) -> dict:
        return {
            "H": list(self.H.trimmed()),
            "points": [{"t": str(t), "eta": list(e), "beta": list(b)} for t, e, b in self.points],
            "limit_eta": list(self.limit),
            "semicontinuous": self.ok,
        }


def specialization_probe(H: OSequence, path: Callable, t_values: Sequence, field: FieldSpec) -> SpecializationResult:
    """Follow a chart path A(t); the stratum at t = 0 must lie above every other one.

    ``path`` maps a field element t to a parameter vector.  The pairs of
    strata are reported; ``ok`` is the lattice comparison eta(t) <= eta(0).
    """
    lattice = build_lattice(H)
    points = []
    limit = None
    for t in t_values:
        t = field(t)
        I = chart_ideal(H, [field(a) for a in path(t)], field)
        tr = invariants_of(I).triple
        points.append((t, tr.eta, tr.beta_seq()))
        if t == 0:
            limit = tr.eta
    if limit is None:
        raise ValueError("t = 0 must be among the sample values")
    ok = all(lattice.leq(e, limit) for t, e, _ in points)
    return SpecializationResult(H, points, limit, ok)


# --------------------------------------------------------------------------
# monomial witnesses


@dataclass(frozen=True)
class Staircase:
    """Monomials y^i x^j outside the ideal, ``j < rows[i]``."""

    rows: tuple

    def cells(self, d: int) -> int:
        return sum(1 for i, r in enumerate(self.rows) if i <= d < i + r)

    def corners(self) -> list[tuple]:
        """Generators ``(i, j)`` = ``y^i x^j``, in increasing i."""
        rows = self.rows
        out = []
        for i in range(len(rows) + 1):
            prev = rows[i - 1] if i > 0 else None
            cur = rows[i] if i < len(rows) else 0
            if prev is None or cur < prev:
                out.append((i, cur))
        return out

    def inner_corners(self) -> list[tuple]:
        """Relations: lcm of consecutive generators."""
        c = self.corners()
        return [(b[0], a[1]) for a, b in zip(c, c[1:])]

    def generator_degrees(self) -> dict:
        out = {}
        for i, j in self.corners():
            out[i + j] = out.get(i + j, 0) + 1
        return out

    def relation_degrees(self) -> dict:
        out = {}
        for i, j in self.inner_corners():
            out[i + j] = out.get(i + j, 0) + 1
        return out

    def monomials(self, field: FieldSpec) -> list[BiForm]:
        return [BiForm.monomial(i, j, field) for i, j in self.corners()]

    def to_ideal(self, top: int, field: FieldSpec = FieldSpec.prime(10007)) -> GradedIdeal:
        return span_ideal(self.monomials(field), top, field)

    def __str__(self) -> str:
        return ", ".join(str(BiForm.monomial(i, j)) for i, j in self.corners())


def staircases_of(H: OSequence) -> Iterator[Staircase]:
    """Every staircase whose diagonal cell counts are H, in a fixed order."""
    if not H.is_artinian:
        raise ValueError("staircases need an Artinian H")
    s = H.s
    target = [H(d) for d in range(s + 1)]

    def grow(rows, diag):
        i = len(rows)
        if i > 0 and diag[i - 1] != target[i - 1]:
            return
        if i == s + 1 or (rows and rows[-1] == 0):
            if rows and rows[-1] == 0:
                rows = rows[:-1]
            if all(diag[d] == target[d] for d in range(s + 1)):
                yield Staircase(tuple(rows))
            return
        cap = rows[-1] if rows else s + 1
        for r in range(cap, -1, -1):
            if i + r > s + 1:
                continue
            new = list(diag)
            bad = False
            for d in range(i, i + r):
                new[d] += 1
                if new[d] > target[d]:
                    bad = True
                    break
            if bad:
                continue
            yield from grow(rows + [r], new)

    yield from grow([], [0] * (s + 2))


def find_monomial_with_beta(H: OSequence, beta) -> Staircase | None:
    """A monomial ideal with Hilbert function H and relation degrees beta, if one exists."""
    want = beta if isinstance(beta, BettiTriple) else complete_triple(H, beta=beta)
    want.check()
    target = {d: n for d, n in want.beta.items() if n}
    for st in staircases_of(H):
        if st.relation_degrees() == target:
            return st
    return None


# --------------------------------------------------------------------------
# documented specialization paths


@dataclass(frozen=True)
class ExamplePath:
    """A chart path with the stratum it runs through and the one it lands in."""

    name: str
    H: tuple
    path: Callable
    along: tuple
    limit: tuple
    note: str = ""


EXAMPLE_PATHS = {
    p.name: p
    for p in [
        ExamplePath(
            "ex1-rank-one",
            (1, 2, 3, 3, 1, 0),
            lambda t: (0, 0, t**3, -(t**2), t),
            (0, 1),
            (0, 1),
            "d = -e^2, c = e^3 keeps theta_4 of rank one",
        ),
        ExamplePath(
            "ex1-generic",
            (1, 2, 3, 3, 1, 0),
            lambda t: (t, 2 * t, 3 * t, 4 * t, 5 * t),
            (0, 0),
            (0, 1),
            "scaling a generic point to the monomial ideal",
        ),
        ExamplePath(
            "ex2-beta1",
            (1, 2, 3, 4, 2, 1, 0),
            lambda t: (t, 2 * t, 3 * t, -25 * t**2, 5 * t),
            (0, 1),
            (1, 1),
            "d = -e^2 gives tau_5 = 1; the closure of beta(1) reaches beta_max",
        ),
        ExamplePath(
            "ex2-beta2",
            (1, 2, 3, 4, 2, 1, 0),
            lambda t: (0, 0, 0, 0, t),
            (1, 0),
            (1, 1),
            "only e nonzero gives tau_4 = 1; the closure of beta(2) reaches beta_max",
        ),
        ExamplePath(
            "ex2-generic-to-beta1",
            (1, 2, 3, 4, 2, 1, 0),
            lambda t: (1, 2, 3, t - 25, 5),
            (0, 0),
            (0, 1),
            "leaving d = -e^2 from a beta(1) point",
        ),
        ExamplePath(
            "ex2-generic-to-beta2",
            (1, 2, 3, 4, 2, 1, 0),
            lambda t: (0, 0, 0, t, 1),
            (0, 0),
            (1, 0),
            "moving d off zero from a beta(2) point",
        ),
    ]
}

EXAMPLE_T_VALUES = (0, 1, 2, 3, 5, 7, 11, 13, 101, 1009)


@dataclass
class PathCheck:
    path: ExamplePath
    result: SpecializationResult
    along_ok: bool
    limit_ok: bool

    @property
    def passed(self) -> bool:
        return self.along_ok and self.limit_ok and self.result.ok

    def to_json(self) -> dict:
        return {
            "name": self.path.name,
            "note": self.path.note,
            "expected_along": list(self.path.along),
            "expected_limit": list(self.path.limit),
            "along_ok": self.along_ok,
            "limit_ok": self.limit_ok,
            "status": "PASS" if self.passed else "FAIL",
            **self.result.to_json(),
        }


def check_example_path(name: str, field: FieldSpec = FieldSpec.prime(10007), t_values=EXAMPLE_T_VALUES) -> PathCheck:
    from .hilbert_betti import analyze_H

    ex = EXAMPLE_PATHS[name]
    H = analyze_H(ex.H)
    res = specialization_probe(H, ex.path, t_values, field)
    along = all(e == ex.along for t, e, _ in res.points if t != 0)
    return PathCheck(ex, res, along, res.limit == ex.limit)


def lattice_monotone(H: OSequence) -> bool:
    """Strictly larger beta in the lattice order means strictly larger codimension."""
    lat = build_lattice(H)
    for a in lat.nodes:
        for b in lat.nodes:
            if a.eta != b.eta and lat.leq(a.eta, b.eta) and not b.codim > a.codim:
                return False
    return True
