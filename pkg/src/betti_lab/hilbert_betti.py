"""Hilbert functions of graded quotients of k[x, y] and their Betti data.

Every sequence here is indexed by degree and stored as a ``dict`` from
degree to value, so that the offset by the order ``mu`` never has to be
remembered by the caller.

Conventions:

* ``e_i = H_{i-1} - H_i`` for ``i >= mu`` and ``e_i = 0`` for ``i < mu``;
  beyond ``s`` the sequence is constant so ``e_i = 0`` there too.
* Relation counts run over degrees ``mu+1 .. s+1``.  The last one is forced,
  ``beta_{s+1} = e_s``, and keeps ``sum(nu) - sum(beta) = 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence


class OSequenceError(ValueError):
    def __init__(self, index: int, message: str):
        super().__init__(f"index {index}: {message}")
        self.index = index


class BoundError(ValueError):
    def __init__(self, index: int, message: str):
        super().__init__(f"index {index}: {message}")
        self.index = index


def pos(n: int) -> int:
    return n if n > 0 else 0


@dataclass(frozen=True)
class OSequence:
    """A validated Hilbert function ``H_0, ..., H_top``, constant after ``top``."""

    values: tuple
    mu: int
    s: int
    c: int

    def __call__(self, i: int) -> int:
        if i < 0:
            return 0
        if i >= len(self.values):
            return self.c
        return self.values[i]

    def __getitem__(self, i: int) -> int:
        return self(i)

    def __len__(self) -> int:
        return len(self.values)

    def e(self, i: int) -> int:
        if i < self.mu or i > self.s:
            return 0
        return self(i - 1) - self(i)

    @property
    def diffs(self) -> dict:
        """``{i: e_i}`` for ``mu <= i <= s``."""
        return {i: self.e(i) for i in range(self.mu, self.s + 1)}

    @property
    def is_artinian(self) -> bool:
        return self.c == 0

    @property
    def dims(self) -> dict:
        """Ideal dimensions ``i + 1 - H_i`` for ``0 <= i <= s``."""
        return {i: i + 1 - self(i) for i in range(self.s + 1)}

    def trimmed(self) -> tuple:
        """Values through ``s``."""
        return tuple(self(i) for i in range(self.s + 1))

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.trimmed()) + ")"


def analyze_H(values: Sequence[int]) -> OSequence:
    """Validate an O-sequence of k[x, y] and derive ``mu``, ``s``, ``c``."""
    vals = tuple(int(v) for v in values)
    if not vals:
        raise OSequenceError(0, "empty sequence")
    for i, v in enumerate(vals):
        if v < 0:
            raise OSequenceError(i, f"negative value {v}")
        if v > i + 1:
            raise OSequenceError(i, f"H_{i}={v} exceeds dim R_{i}={i + 1}")
    c = vals[-1]
    n = len(vals)
    mu = next((i for i in range(n) if vals[i] < i + 1), n)
    for i in range(mu + 1, n):
        if vals[i] > vals[i - 1]:
            raise OSequenceError(i, f"H_{i}={vals[i]} exceeds H_{i-1}={vals[i-1]} after the order {mu}")
    s = next(i for i in range(mu, n + 1) if (vals[i] if i < n else c) == c)
    return OSequence(vals, mu, s, c)


def dim_moduli(H: OSequence) -> int:
    return H.c + sum((H.e(i) + 1) * H.e(i + 1) for i in range(H.mu, H.s + 1))


def nu_min(H: OSequence) -> int:
    return 1 + H.e(H.mu) + sum(pos(H.e(i + 1) - H.e(i)) for i in range(H.mu, H.s + 1))


# --------------------------------------------------------------------------
# triples


@dataclass(frozen=True)
class BettiTriple:
    """Coupled tau (``mu..s``), generator (``mu..s``) and relation (``mu+1..s+1``) counts."""

    H: OSequence
    tau: Mapping[int, int]
    nu: Mapping[int, int]
    beta: Mapping[int, int]

    def tau_seq(self) -> tuple:
        return tuple(self.tau[i] for i in range(self.H.mu, self.H.s + 1))

    def nu_seq(self) -> tuple:
        return tuple(self.nu[i] for i in range(self.H.mu, self.H.s + 1))

    def beta_seq(self, include_forced: bool = True) -> tuple:
        """Relations from degree ``mu+1``; without the forced term they stop at ``s``."""
        top = self.H.s + 1 if include_forced else self.H.s
        return tuple(self.beta[i] for i in range(self.H.mu + 1, top + 1))

    @property
    def eta(self) -> tuple:
        H = self.H
        return tuple(
            self.beta[i + 1] - pos(H.e(i) - H.e(i + 1)) for i in range(H.mu, H.s)
        )

    @property
    def socle(self) -> dict:
        """Socle dimensions ``ST_i = beta_{i+2}``, for ``0 <= i <= s-1``."""
        return {i: self.beta.get(i + 2, 0) for i in range(0, self.H.s)}

    def total_generators(self) -> int:
        return sum(self.nu.values())

    def total_relations(self) -> int:
        return sum(self.beta.values())

    def check(self) -> None:
        """Assert every identity and bound relating the three sequences."""
        H = self.H
        mu, s = H.mu, H.s
        e = H.e
        if self.tau[s] != 1:
            raise BoundError(s, f"tau_s must be 1, got {self.tau[s]}")
        if self.nu[mu] != e(mu) + 1:
            raise BoundError(mu, "nu_mu must equal e_mu + 1")
        if self.beta[s + 1] != e(s):
            raise BoundError(s + 1, "beta_{s+1} must equal e_s")
        for i in range(mu, s + 1):
            t = self.tau[i]
            if i < s and t != e(i + 1) + 1 - self.nu[i + 1]:
                raise BoundError(i, "tau_i != e_{i+1} + 1 - nu_{i+1}")
            if t != e(i) + 1 - self.beta[i + 1]:
                raise BoundError(i, "tau_i != e_i + 1 - beta_{i+1}")
            if i > mu and t != self.tau[i - 1] + self.nu[i] - self.beta[i + 1]:
                raise BoundError(i, "tau_i != tau_{i-1} + nu_i - beta_{i+1}")
            if not 1 <= t <= 1 + min(e(i), e(i + 1)):
                raise BoundError(i, f"tau_{i}={t} outside [1, 1+min(e_i, e_(i+1))]")
            b = self.beta[i + 1]
            if not pos(e(i) - e(i + 1)) <= b <= e(i):
                raise BoundError(i + 1, f"beta_{i+1}={b} outside [(e_i-e_(i+1))+, e_i]")
            if i < s:
                if self.beta[i + 1] - self.nu.get(i + 1, 0) != e(i) - e(i + 1):
                    raise BoundError(i + 1, "beta_{i+1} - nu_{i+1} != e_i - e_{i+1}")
                n = self.nu[i + 1]
                if not pos(e(i + 1) - e(i)) <= n <= e(i + 1):
                    raise BoundError(i + 1, f"nu_{i+1}={n} outside [(e_(i+1)-e_i)+, e_(i+1)]")
        if self.total_generators() - self.total_relations() != 1:
            raise BoundError(s, "sum(nu) - sum(beta) != 1")


def _as_indexed(seq, start: int) -> dict:
    if isinstance(seq, Mapping):
        return {int(k): int(v) for k, v in seq.items()}
    return {start + k: int(v) for k, v in enumerate(seq)}


def complete_triple(H: OSequence, *, tau=None, beta=None, nu=None) -> BettiTriple:
    """Recover the whole triple from exactly one of tau, beta or nu.

    A plain sequence is read from its natural first degree: ``mu`` for tau
    and nu, ``mu+1`` for beta.  Forced trailing entries may be omitted.
    """
    given = [x is not None for x in (tau, beta, nu)]
    if sum(given) != 1:
        raise ValueError("give exactly one of tau, beta, nu")
    mu, s = H.mu, H.s
    e = H.e
    if tau is not None:
        t = _as_indexed(tau, mu)
        t.setdefault(s, 1)
    elif beta is not None:
        b = _as_indexed(beta, mu + 1)
        b.setdefault(s + 1, e(s))
        _check_range(b, mu + 1, s + 1, "beta")
        t = {i: e(i) + 1 - b[i + 1] for i in range(mu, s + 1)}
        for i in range(mu, s + 1):
            if not pos(e(i) - e(i + 1)) <= b[i + 1] <= e(i):
                raise BoundError(i + 1, f"beta_{i+1}={b[i+1]} violates (e_i-e_(i+1))+ <= beta <= e_i")
    else:
        n = _as_indexed(nu, mu)
        n.setdefault(mu, e(mu) + 1)
        _check_range(n, mu, s, "nu")
        if n[mu] != e(mu) + 1:
            raise BoundError(mu, f"nu_mu must equal e_mu + 1 = {e(mu) + 1}")
        for i in range(mu + 1, s + 1):
            if not pos(e(i) - e(i - 1)) <= n[i] <= e(i):
                raise BoundError(i, f"nu_{i}={n[i]} violates (e_i-e_(i-1))+ <= nu <= e_i")
        t = {i: e(i + 1) + 1 - n[i + 1] for i in range(mu, s)}
        t[s] = 1
    _check_range(t, mu, s, "tau")
    for i in range(mu, s + 1):
        if not 1 <= t[i] <= 1 + min(e(i), e(i + 1)):
            raise BoundError(i, f"tau_{i}={t[i]} violates 1 <= tau <= 1+min(e_i, e_(i+1))")
    nu_out = {mu: e(mu) + 1}
    for i in range(mu, s):
        nu_out[i + 1] = e(i + 1) + 1 - t[i]
    beta_out = {i + 1: e(i) + 1 - t[i] for i in range(mu, s + 1)}
    triple = BettiTriple(H, dict(sorted(t.items())), nu_out, beta_out)
    triple.check()
    return triple


def _check_range(seq: dict, lo: int, hi: int, name: str) -> None:
    want = set(range(lo, hi + 1))
    if set(seq) != want:
        raise BoundError(lo, f"{name} must cover degrees {lo}..{hi}, got {sorted(seq)}")


def beta_max_triple(H: OSequence) -> BettiTriple:
    return complete_triple(H, tau={i: 1 for i in range(H.mu, H.s + 1)})


def beta_min_triple(H: OSequence) -> BettiTriple:
    return complete_triple(
        H, tau={i: 1 + min(H.e(i), H.e(i + 1)) for i in range(H.mu, H.s + 1)}
    )


class FormulaMismatch(AssertionError):
    """The two codimension formulas disagree; always a bug."""


def codim_stratum(H: OSequence, t: BettiTriple) -> int:
    """Codimension of the stratum, by ``sum beta_i nu_i`` checked against the tau form."""
    by_betti = sum(t.beta[i] * t.nu.get(i, 0) for i in range(H.mu + 1, H.s + 2))
    by_tau = sum(
        (H.e(i) + 1 - t.tau[i]) * (H.e(i + 1) + 1 - t.tau[i]) for i in range(H.mu, H.s + 1)
    )
    if by_betti != by_tau:
        raise FormulaMismatch(f"codimension formulas disagree: {by_betti} != {by_tau}")
    return by_betti


def triple_from_eta(H: OSequence, eta: Sequence[int]) -> BettiTriple:
    tau = {}
    for k, i in enumerate(range(H.mu, H.s)):
        tau[i] = 1 + min(H.e(i), H.e(i + 1)) - eta[k]
    tau[H.s] = 1
    return complete_triple(H, tau=tau)


def lattice_ranges(H: OSequence) -> list[int]:
    """Upper ends of the coordinate ranges ``[0, min(e_i, e_{i+1})]``, ``mu <= i < s``."""
    return [min(H.e(i), H.e(i + 1)) for i in range(H.mu, H.s)]


def lattice_size(H: OSequence) -> int:
    out = 1
    for r in lattice_ranges(H):
        out *= r + 1
    return out


@dataclass(frozen=True)
class LatticeNode:
    triple: BettiTriple
    codim: int
    eta: tuple


@dataclass
class StratumLattice:
    H: OSequence
    nodes: list
    edges: list = field(default_factory=list)

    def node(self, eta) -> LatticeNode:
        return self.nodes[self._index[tuple(eta)]]

    def __post_init__(self):
        self._index = {n.eta: k for k, n in enumerate(self.nodes)}

    def leq(self, a: tuple, b: tuple) -> bool:
        return all(x <= y for x, y in zip(a, b))


def build_lattice(H: OSequence) -> StratumLattice:
    ranges = lattice_ranges(H)
    nodes = []
    for eta in itertools.product(*(range(r + 1) for r in ranges)):
        t = triple_from_eta(H, eta)
        nodes.append(LatticeNode(t, codim_stratum(H, t), tuple(eta)))
    index = {n.eta: k for k, n in enumerate(nodes)}
    edges = []
    for k, n in enumerate(nodes):
        for pos_ in range(len(ranges)):
            up = list(n.eta)
            up[pos_] += 1
            if tuple(up) in index:
                edges.append((k, index[tuple(up)]))
    return StratumLattice(H, nodes, edges)


# --------------------------------------------------------------------------
# socle, common factors, level sequences


def socle_bounds(H: OSequence) -> dict:
    """``{i: (lo, hi)}`` with ``max(0, e_{i+1} - e_{i+2}) <= ST_i <= e_{i+1}``, ``0 <= i < s``."""
    if not H.is_artinian:
        raise ValueError("socle bounds need an Artinian Hilbert function")
    return {i: (pos(H.e(i + 1) - H.e(i + 2)), H.e(i + 1)) for i in range(0, H.s)}


def strip_common(H: OSequence) -> tuple[int, OSequence]:
    """``(c, H:c)`` with ``(H:c)_i = H_{i+c} - c``."""
    c = H.c
    if c == 0:
        return 0, H
    top = max(H.s - c, 0)
    return c, analyze_H([H(i + c) - c for i in range(top + 1)])


@dataclass(frozen=True)
class LevelCheck:
    ok: bool
    tau: int | None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def level_sequence_check(N: OSequence, d: int, j: int) -> LevelCheck:
    """Is N the Hilbert function of a level algebra of type d and socle degree j?"""
    if not 1 <= d <= j + 1:
        return LevelCheck(False, None, "type must satisfy 1 <= d <= j+1")
    if N.c != 0 or any(N(i) != 0 for i in range(j + 1, max(len(N), j + 2))):
        return LevelCheck(False, None, "N must vanish above j")
    if N(j) != j + 1 - d:
        return LevelCheck(False, None, f"N_j must be j+1-d = {j + 1 - d}")
    tau = N.e(j) + 1
    for i in range(j + 1, N.mu, -1):
        if N.e(i) < N.e(i - 1):
            return LevelCheck(False, tau, f"e_{i} < e_{i-1} breaks the chain")
    if not 1 <= tau <= min(d, j + 2 - d):
        return LevelCheck(False, tau, "tau(V) outside [1, min(d, j+2-d)]")
    return LevelCheck(True, tau)


def artinian_sequences(max_s: int) -> list[OSequence]:
    """All Artinian O-sequences with ``1 <= s <= max_s`` (the unit ideal is skipped)."""
    out = []

    def extend(values):
        if values[-1] == 0:
            out.append(analyze_H(values))
            return
        if len(values) > max_s:
            return
        for v in range(values[-1], -1, -1):
            extend(values + [v])

    for mu in range(1, max_s + 1):
        for h_mu in range(mu, -1, -1):
            extend(list(range(1, mu + 1)) + [h_mu])
    return sorted(out, key=lambda H: (H.s, H.values))
