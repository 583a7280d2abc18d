import itertools

import pytest
from hypothesis import given, settings, strategies as st

from betti_lab.hilbert_betti import (
    BoundError,
    OSequenceError,
    analyze_H,
    artinian_sequences,
    beta_max_triple,
    beta_min_triple,
    build_lattice,
    codim_stratum,
    complete_triple,
    dim_moduli,
    lattice_size,
    level_sequence_check,
    nu_min,
    socle_bounds,
    strip_common,
    triple_from_eta,
)


ALL7 = artinian_sequences(7)


def brute_o_sequences(max_s):
    """O-sequences of k[x,y] ending in 0 with s <= max_s, straight from the definition."""
    out = set()
    for n in range(2, max_s + 2):
        for vals in itertools.product(range(max_s + 1), repeat=n - 1):
            H = (1,) + vals
            if H[-1] != 0 or 0 in H[:-1]:
                continue
            if any(H[i] > i + 1 for i in range(n)):
                continue
            mu = next(i for i in range(n) if H[i] < i + 1)
            if any(H[i] != i + 1 for i in range(mu)):
                continue
            if any(H[i] > H[i - 1] for i in range(mu + 1, n)):
                continue
            out.add(H)
    return out


def series_identity(t):
    """(1-t)^2 H(t) = 1 - sum nu_i t^i + sum beta_i t^i, coefficientwise."""
    H = t.H
    top = H.s + 3
    h = [H(i) for i in range(top)]
    lhs = [h[i] - 2 * (h[i - 1] if i >= 1 else 0) + (h[i - 2] if i >= 2 else 0) for i in range(top)]
    rhs = [0] * top
    rhs[0] = 1
    for i, n in t.nu.items():
        rhs[i] -= n
    for i, b in t.beta.items():
        rhs[i] += b
    return lhs == rhs


# --------------------------------------------------------------------------
# O-sequences


def test_example1_invariants(ex1):
    assert (ex1.mu, ex1.s, ex1.c) == (3, 5, 0)
    assert [ex1.e(i) for i in (3, 4, 5)] == [0, 2, 1]
    assert dim_moduli(ex1) == 5
    assert nu_min(ex1) == 3


def test_example2_invariants(ex2):
    assert (ex2.mu, ex2.s) == (4, 6)
    assert [ex2.e(i) for i in (4, 5, 6)] == [2, 1, 1]
    assert dim_moduli(ex2) == 5


def test_non_artinian_tail():
    H = analyze_H([1, 2, 2, 2])
    assert (H.mu, H.s, H.c) == (2, 2, 2)
    assert not H.is_artinian


@pytest.mark.parametrize("bad,index", [([1, 2, 3, 2, 3, 0], 4), ([1, 3, 0], 1), ([1, -1], 1), ([], 0)])
def test_invalid_sequences(bad, index):
    with pytest.raises(OSequenceError) as exc:
        analyze_H(bad)
    assert exc.value.index == index


def test_artinian_sequences_match_definition():
    got = {tuple(H.trimmed()) for H in artinian_sequences(6)}
    assert got == brute_o_sequences(6)


def test_artinian_sequences_count():
    # compositions: each H with s <= n is a nonincreasing tail after the ramp
    assert len(artinian_sequences(8)) == 255


def test_strip_common():
    c, H2 = strip_common(analyze_H([1, 2, 3, 3, 2, 2]))
    assert c == 2 and tuple(H2.trimmed())[:3] == (1, 1, 0)


# --------------------------------------------------------------------------
# triples


@pytest.mark.parametrize("H", ALL7, ids=lambda H: "".join(map(str, H.trimmed())))
def test_every_node_satisfies_identities(H):
    lat = build_lattice(H)
    assert len(lat.nodes) == lattice_size(H)
    for node in lat.nodes:
        t = node.triple
        t.check()
        assert series_identity(t)
        assert t.eta == node.eta
        assert t.total_generators() - t.total_relations() == 1


@given(st.sampled_from(ALL7), st.data())
@settings(max_examples=100, deadline=None)
def test_completion_is_consistent(H, data):
    node = data.draw(st.sampled_from(build_lattice(H).nodes))
    t = node.triple
    for again in (
        complete_triple(H, tau=t.tau),
        complete_triple(H, beta=t.beta),
        complete_triple(H, nu=t.nu),
        triple_from_eta(H, node.eta),
    ):
        assert again.tau == t.tau and again.beta == t.beta and again.nu == t.nu


def test_complete_triple_rejects_out_of_range(ex1):
    with pytest.raises(BoundError):
        complete_triple(ex1, tau=(1, 3, 1))
    with pytest.raises(ValueError):
        complete_triple(ex1)


def test_generator_count_bound():
    for H in ALL7:
        assert beta_min_triple(H).total_generators() == nu_min(H)


# --------------------------------------------------------------------------
# lattice and codimension


def test_example1_lattice(ex1):
    lat = build_lattice(ex1)
    assert {n.codim for n in lat.nodes} == {0, 2}
    top = lat.node((0, 1))
    assert top.triple.beta_seq(include_forced=False) == (0, 2)
    assert dim_moduli(ex1) - top.codim == 3 == ex1(ex1.mu)


def test_example2_lattice(ex2):
    lat = build_lattice(ex2)
    pairs = {n.triple.beta_seq(include_forced=False)[-2:]: n.codim for n in lat.nodes}
    assert pairs == {(1, 0): 0, (1, 1): 1, (2, 0): 2, (2, 1): 3}
    a, b = (1, 0), (0, 1)
    assert not lat.leq(a, b) and not lat.leq(b, a)
    assert len(lat.edges) == 4


@pytest.mark.parametrize("H", ALL7, ids=lambda H: "".join(map(str, H.trimmed())))
def test_codim_extremes(H):
    assert codim_stratum(H, beta_min_triple(H)) == 0
    top = beta_max_triple(H)
    assert dim_moduli(H) - codim_stratum(H, top) == H(H.mu)


@pytest.mark.parametrize("H", ALL7, ids=lambda H: "".join(map(str, H.trimmed())))
def test_codim_strictly_monotone(H):
    lat = build_lattice(H)
    for a, b in lat.edges:
        assert lat.nodes[a].codim < lat.nodes[b].codim


# --------------------------------------------------------------------------
# socle and level sequences


def test_socle_bounds_example1(ex1):
    assert socle_bounds(ex1) == {0: (0, 0), 1: (0, 0), 2: (0, 0), 3: (1, 2), 4: (1, 1)}


@pytest.mark.parametrize("H", ALL7, ids=lambda H: "".join(map(str, H.trimmed())))
def test_socle_of_every_node_within_bounds(H):
    bounds = socle_bounds(H)
    for node in build_lattice(H).nodes:
        for i, v in node.triple.socle.items():
            lo, hi = bounds[i]
            assert lo <= v <= hi


def test_level_sequence_check():
    N = analyze_H([1, 2, 3, 4, 3, 0])
    chk = level_sequence_check(N, 2, 4)
    assert chk and chk.tau == 2
    assert not level_sequence_check(N, 3, 4)
    assert not level_sequence_check(analyze_H([1, 2, 3, 1, 1, 0]), 4, 4)
