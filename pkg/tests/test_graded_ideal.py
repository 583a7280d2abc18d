import random

import pytest
from hypothesis import given, settings, strategies as st

from betti_lab.algebra_core import BiForm, FieldError, FieldSpec, GradedSubspace, tau_of
from betti_lab.graded_ideal import (
    ChartError,
    GradedIdeal,
    IdealError,
    SamplingError,
    alignment_of,
    chart_ideal,
    common_factor_split,
    has_normal_pattern,
    hilbert_function,
    ideal_from_json,
    ideal_to_json,
    invariants_of,
    level_ideal,
    monomial_ideal_of,
    parameter_positions,
    random_ideal,
    span_ideal,
    standard_generators,
    theta_matrix,
)
from betti_lab.hilbert_betti import analyze_H, artinian_sequences, beta_max_triple, beta_min_triple, build_lattice

from conftest import EX1, EX2

P = FieldSpec.prime(10007)
ALL6 = artinian_sequences(6)
CHART_HS = [H for H in artinian_sequences(7) if parameter_positions(H)]


def oracle_invariants(I):
    """nu from minimal generators, beta from the Hilbert series, tau piece by piece."""
    H = hilbert_function(I)
    nu = {}
    for g in I.minimal_generators():
        nu[g.degree] = nu.get(g.degree, 0) + 1
    h = lambda i: H(i) if i >= 0 else 0
    beta = {}
    for i in range(1, H.s + 3):
        second = h(i) - 2 * h(i - 1) + h(i - 2)
        b = second + nu.get(i, 0)
        if b:
            beta[i] = b
    tau = {d: tau_of(I[d]) for d in range(H.mu, H.s + 1)}
    return nu, beta, tau


def nonzero(d):
    return {k: v for k, v in d.items() if v}


def mirror(I):
    """Swap x and y."""
    pieces = [GradedSubspace.from_rows(V.degree, [tuple(reversed(r)) for r in V.basis], I.field) for V in I.pieces]
    return GradedIdeal(I.field, tuple(pieces))


# --------------------------------------------------------------------------
# the monomial ideal M(H) and the alignment character


def test_alignment_examples():
    assert alignment_of(analyze_H(EX1)) == (5, 3, 2)
    assert alignment_of(analyze_H(EX2)) == (6, 4, 2, 1)
    assert alignment_of(analyze_H([1, 1, 0])) == (2,)


def test_monomial_ideal_small():
    M = monomial_ideal_of(analyze_H([1, 1, 0]))
    gens = {str(g) for g in M.minimal_generators()}
    assert gens == {"y", "x^2"}


@pytest.mark.parametrize("H", artinian_sequences(8), ids=lambda H: "".join(map(str, H.trimmed())))
def test_monomial_ideal_roundtrip(H):
    M = monomial_ideal_of(H, P)
    assert tuple(hilbert_function(M).trimmed()) == tuple(H.trimmed())
    assert M.is_closed()
    assert has_normal_pattern(M, H)
    assert invariants_of(M).triple.beta == beta_max_triple(H).beta


@given(st.sampled_from(artinian_sequences(10)))
@settings(max_examples=40, deadline=None)
def test_monomial_ideal_roundtrip_s10(H):
    M = monomial_ideal_of(H, P)
    assert tuple(hilbert_function(M).trimmed()) == tuple(H.trimmed())


def test_mirror_breaks_normal_pattern():
    H = analyze_H(EX1)
    assert not has_normal_pattern(mirror(monomial_ideal_of(H, P)), H)


# --------------------------------------------------------------------------
# invariants against an independent computation


@pytest.mark.parametrize("H", ALL6, ids=lambda H: "".join(map(str, H.trimmed())))
def test_invariants_match_oracle(H):
    for seed in range(2):
        I = random_ideal(H, P, seed=seed)
        inv = invariants_of(I)
        nu, beta, tau = oracle_invariants(I)
        assert nonzero(inv.nu) == nu
        assert nonzero(inv.beta) == beta
        assert inv.tau == tau


def test_invariants_principal_pair():
    # (x, y^j): one relation, in degree j+1
    j = 4
    I = span_ideal([BiForm.monomial(0, 1, P), BiForm.monomial(j, 0, P)], j + 2, P)
    inv = invariants_of(I)
    assert nonzero(inv.beta) == {j + 1: 1}


# --------------------------------------------------------------------------
# Example 1 in the chart


def test_example1_chart(ex1):
    assert parameter_positions(ex1) == [(3, 2), (3, 1), (3, 0), (2, 0), (1, 0)]
    M = chart_ideal(ex1, [0] * 5, P)
    assert M == monomial_ideal_of(ex1, P)
    generic = invariants_of(chart_ideal(ex1, [1, 2, 3, 4, 5], P))
    assert generic.tau == {3: 1, 4: 2, 5: 1}


@pytest.mark.parametrize("t", [1, 2, 3, 17, 5000])
def test_example1_rank_one_locus(ex1, t):
    # tau_4 drops on c = e^3, d = -e^2
    I = chart_ideal(ex1, [0, 0, t**3, -(t**2), t], P)
    assert invariants_of(I).tau[4] == 1
    assert theta_matrix(I, 4).rank() == 1


def test_example1_off_locus(ex1):
    rng = random.Random(3)
    for _ in range(20):
        A = [rng.randrange(1, 10007) for _ in range(5)]
        c, d, e = A[2], A[3], A[4]
        on = (c - e**3) % 10007 == 0 and (d + e**2) % 10007 == 0
        assert invariants_of(chart_ideal(ex1, A, P)).tau[4] == (1 if on else 2)


def test_example1_theta_entries(ex1):
    # <x f_3, f_2, f_1> -> <x f_1, f_0>
    a, b, c, d, e = 3, 5, 7, 11, 13
    th = theta_matrix(chart_ideal(ex1, [a, b, c, d, e], P), 4)
    assert th.shape == (2, 3)
    assert th.domain == ((3, 1), (2, 0), (1, 0)) and th.range_ == ((1, 1), (0, 0))
    assert th.entries[0][1:] == (P(-e), 1)
    assert th.entries[1][1:] == (P(d + e * e), 0)
    assert theta_matrix(chart_ideal(ex1, [0, 0, 0, 0, 0], P), 3).shape == (3, 1)


def test_example2_theta_shapes(ex2):
    I = chart_ideal(ex2, [3, 5, 7, 11, 13], P)
    assert theta_matrix(I, 4).shape == (2, 3)
    N5 = theta_matrix(I, 5)
    assert N5.shape == (2, 2)
    assert N5.entries[1] == (P(11 + 13 * 13), 0)


# --------------------------------------------------------------------------
# Example 2 in the chart


@pytest.mark.parametrize("e", [1, 2, 9, 1234])
def test_example2_tau5_locus(ex2, e):
    rng = random.Random(e)
    a, b, c = (rng.randrange(10007) for _ in range(3))
    I = chart_ideal(ex2, [a, b, c, -(e**2), e], P)
    assert invariants_of(I).tau[5] == 1


@pytest.mark.parametrize("e", [1, 5, 77])
def test_example2_tau4_locus(ex2, e):
    I = chart_ideal(ex2, [0, 0, 0, 0, e], P)
    inv = invariants_of(I)
    assert inv.tau[4] == 1
    assert theta_matrix(I, 4).rank() == 1


def test_example2_generic(ex2):
    inv = invariants_of(chart_ideal(ex2, [1, 2, 3, 4, 5], P))
    assert inv.triple.beta == beta_min_triple(ex2).beta


# --------------------------------------------------------------------------
# chart properties


@given(st.sampled_from(CHART_HS), st.data())
@settings(max_examples=60, deadline=None)
def test_chart_is_a_section(H, data):
    n = len(parameter_positions(H))
    A = data.draw(st.lists(st.integers(0, 10006), min_size=n, max_size=n))
    I = chart_ideal(H, A, P)
    assert tuple(hilbert_function(I).trimmed()) == tuple(H.trimmed())
    assert I.is_closed() and has_normal_pattern(I, H)
    assert list(standard_generators(I).parameters()) == A


@given(st.sampled_from(CHART_HS), st.data())
@settings(max_examples=60, deadline=None)
def test_theta_rank_is_tau(H, data):
    n = len(parameter_positions(H))
    # small values make the special strata reachable
    A = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    I = chart_ideal(H, A, P)
    inv = invariants_of(I)
    std = standard_generators(I)
    for i in range(H.mu, H.s):
        assert theta_matrix(I, i, std).rank() == inv.tau[i]


def test_chart_input_errors(ex1):
    with pytest.raises(ChartError):
        chart_ideal(ex1, [1, 2], P)
    with pytest.raises(FieldError):
        chart_ideal(ex1, [0] * 5, FieldSpec.prime(3))
    with pytest.raises(ChartError):
        chart_ideal(analyze_H([1, 2, 2]), [], P)


def test_chart_over_rationals(ex1):
    from betti_lab.algebra_core import QQ
    from fractions import Fraction

    I = chart_ideal(ex1, [Fraction(1, 2), 0, 1, -1, 1], QQ)
    assert invariants_of(I).tau[4] == 1


# --------------------------------------------------------------------------
# level ideals, common factors, sampling, serialization


@given(st.integers(2, 6), st.data())
@settings(max_examples=40, deadline=None)
def test_level_ideal_is_level(j, data):
    d = data.draw(st.integers(1, j))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    rows = [[P.random_element(rng) for _ in range(j + 1)] for _ in range(d)]
    V = GradedSubspace.from_rows(j, rows, P)
    L = level_ideal(V)
    inv = invariants_of(L)
    assert L[j].basis == V.basis
    soc = {k: v for k, v in inv.socle.items() if v}
    assert soc == {j: j + 1 - V.dim}


def test_level_ideal_example():
    V = GradedSubspace.from_rows(4, [BiForm.monomial(0, 4, P).coeffs, BiForm.monomial(4, 0, P).coeffs], P)
    L = level_ideal(V)
    assert tuple(hilbert_function(L).trimmed()) == (1, 2, 3, 4, 3, 0)


@given(st.integers(1, 3), st.sampled_from(ALL6), st.integers(0, 1000))
@settings(max_examples=30, deadline=None)
def test_common_factor_reassembly(c, H, seed):
    rng = random.Random(seed)
    f = BiForm(c, tuple(P.random_element(rng, nonzero=True) for _ in range(c + 1)), P)
    I0 = random_ideal(H, P, seed=seed)
    top = I0.top + c
    I = span_ideal([f * g for g in I0.minimal_generators()], top, P)
    g, I1 = common_factor_split(I)
    assert g.degree == c
    for d in range(c, top + 1):
        rows = [(g * BiForm(d - c, r, P)).coeffs for r in I1[d - c].basis]
        assert GradedSubspace.from_rows(d, rows, P).basis == I[d].basis
    assert tuple(hilbert_function(I1).trimmed()) == tuple(H.trimmed())


def test_common_factor_example():
    I = span_ideal([BiForm.monomial(1, 2, P), BiForm.monomial(0, 3, P)], 5, P)
    f, I1 = common_factor_split(I)
    assert str(f) == "x^2"
    assert {str(g) for g in I1.minimal_generators()} == {"y", "x"}


def test_random_ideal_reproducible(ex2):
    assert random_ideal(ex2, P, seed=4) == random_ideal(ex2, P, seed=4)
    assert random_ideal(ex2, P, seed=4) != random_ideal(ex2, P, seed=5)


@pytest.mark.parametrize("H", [analyze_H(EX1), analyze_H(EX2), analyze_H([1, 2, 3, 3, 2, 2, 1, 0])])
def test_random_ideal_every_stratum(H):
    for node in build_lattice(H).nodes:
        I = random_ideal(H, P, seed=1, target_tau=node.triple.tau_seq())
        assert invariants_of(I).triple.tau == node.triple.tau


def test_random_ideal_long_constant_tail():
    H = analyze_H([1, 2, 3, 3, 1, 1, 1, 0])
    assert tuple(hilbert_function(random_ideal(H, P, seed=0)).trimmed()) == tuple(H.trimmed())


def test_random_ideal_impossible_target(ex1):
    with pytest.raises(Exception):
        random_ideal(ex1, P, target_tau=(5, 5, 1))


def test_sampling_error_type():
    assert issubclass(SamplingError, RuntimeError)


def test_json_roundtrip(ex2):
    I = random_ideal(ex2, P, seed=2)
    assert ideal_from_json(ideal_to_json(I)) == I
    M = monomial_ideal_of(ex2, FieldSpec.rationals())
    assert ideal_from_json(ideal_to_json(M)) == M


def test_span_ideal_rejects_low_top():
    with pytest.raises(IdealError):
        span_ideal([BiForm.monomial(3, 0, P)], 2, P)
