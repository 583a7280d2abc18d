import itertools

import pytest
from hypothesis import given, strategies as st

from betti_lab.algebra_core import FieldSpec, GradedSubspace, multiply_by_R1, tau_of
from betti_lab.graded_ideal import hilbert_function, invariants_of
from betti_lab.hilbert_betti import analyze_H, artinian_sequences, build_lattice, dim_moduli
from betti_lab.strata_lab import (
    EXAMPLE_PATHS,
    BudgetExceeded,
    StratumCensus,
    beta_max_count,
    census_from_json,
    chain_bound,
    check_example_path,
    enumerate_GH,
    estimate_count,
    eta_of_tau,
    find_monomial_with_beta,
    fit_counting_polynomials,
    gaussian_binomial,
    genericity_probe,
    InsufficientPoints,
    lattice_monotone,
    merge,
    poly_eval,
    specialization_probe,
    staircases_of,
    stratum_census,
    subspaces_of,
    verify_codim_report,
)

from conftest import EX1, EX2

SMALL = [H for H in artinian_sequences(4)]


def brute_census(H, q):
    """Filter the full product of Grassmannians for closed chains; tally tau directly."""
    F = FieldSpec.prime(q)
    d = H.dims
    grass = {}
    for i in range(H.mu, H.s):
        vecs = [tuple(v) for v in itertools.product(range(q), repeat=i + 1)]
        seen = {}
        for rows in itertools.combinations(vecs, d[i]):
            V = GradedSubspace.from_rows(i, rows, F)
            if V.dim == d[i]:
                seen[V.basis] = V
        grass[i] = list(seen.values())
    full_s = GradedSubspace.full(H.s, F)
    tally = {}
    total = 0
    for chain in itertools.product(*(grass[i] for i in range(H.mu, H.s))):
        pieces = list(chain) + [full_s]
        if all(pieces[k + 1].contains_subspace(multiply_by_R1(pieces[k])) for k in range(len(chain))):
            tau = tuple(tau_of(V) for V in chain)
            tally[tau] = tally.get(tau, 0) + 1
            total += 1
    return total, tally


def brute_staircases(H):
    """Partitions whose antidiagonal cell counts are H."""
    top = H.s + 1
    out = set()
    for asc in itertools.combinations_with_replacement(range(top + 1), top):
        rows = asc[::-1]
        cells = [sum(1 for i, r in enumerate(rows) if i <= deg < i + r) for deg in range(top + 1)]
        if cells == [H(deg) for deg in range(top + 1)]:
            out.add(tuple(r for r in rows if r))
    return out


# --------------------------------------------------------------------------
# counting helpers


def test_gaussian_binomial_values():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 1, 3) == 13
    assert gaussian_binomial(3, 4, 3) == 0


@pytest.mark.parametrize("H", SMALL, ids=lambda H: "".join(map(str, H.trimmed())))
def test_subspace_enumeration_counts(H):
    F = FieldSpec.prime(3)
    U = GradedSubspace.full(3, F)
    for d in range(5):
        assert sum(1 for _ in subspaces_of(U, d)) == gaussian_binomial(4, d, 3)


# --------------------------------------------------------------------------
# census engines


@pytest.mark.parametrize("H", SMALL, ids=lambda H: "".join(map(str, H.trimmed())))
def test_census_matches_brute_force_q2(H):
    total, tally = brute_census(H, 2)
    c = stratum_census(H, 2)
    assert c.total == total
    assert not c.outside
    expect = {}
    for tau, n in tally.items():
        eta = eta_of_tau(H, tau)
        expect[eta] = expect.get(eta, 0) + n
    assert {k: v for k, v in c.counts.items() if v} == expect


@pytest.mark.parametrize("H", artinian_sequences(5), ids=lambda H: "".join(map(str, H.trimmed())))
@pytest.mark.parametrize("q", [2, 3])
def test_compiled_matches_python(H, q):
    a = stratum_census(H, q, engine="compiled")
    b = stratum_census(H, q, engine="python")
    assert a.counts == b.counts and a.total == b.total and a.outside == b.outside


def test_python_enumeration_gives_distinct_ideals():
    H = analyze_H([1, 2, 2, 1, 0])
    ideals = list(enumerate_GH(H, 3))
    assert len(set(ideals)) == len(ideals)
    for I in ideals:
        assert tuple(hilbert_function(I).trimmed()) == tuple(H.trimmed())


def test_parallel_census_agrees():
    H = analyze_H(EX1)
    assert stratum_census(H, 5, jobs=3).counts == stratum_census(H, 5).counts


@pytest.mark.parametrize("H", artinian_sequences(6), ids=lambda H: "".join(map(str, H.trimmed())))
def test_census_bounds_and_beta_max(H):
    c = stratum_census(H, 3)
    c.check()
    assert not c.outside
    top = build_lattice(H).nodes[-1].eta
    assert c.counts[top] == beta_max_count(H, 3)
    assert c.total <= estimate_count(H, 3) <= chain_bound(H, 3)


def test_census_example1_q3():
    c = stratum_census(analyze_H(EX1), 3)
    assert c.counts == {(0, 0): 468, (0, 1): 52}


census_st = st.builds(
    lambda a, b, x: StratumCensus(analyze_H(EX1), 5, {(0, 0): a, (0, 1): b}, a + b + x, {(1, 1): x} if x else {}),
    st.integers(0, 100), st.integers(0, 100), st.integers(0, 3),
)


@given(census_st, census_st, census_st)
def test_merge_is_associative_and_commutative(a, b, c):
    left = merge(merge(a, b), c)
    right = merge(a, merge(b, c))
    assert left.counts == right.counts and left.total == right.total and left.outside == right.outside
    assert merge(a, b).counts == merge(b, a).counts


def test_merge_rejects_mismatch():
    a = stratum_census(analyze_H(EX1), 2)
    b = stratum_census(analyze_H(EX1), 3)
    with pytest.raises(ValueError):
        merge(a, b)


def test_census_json_roundtrip():
    c = stratum_census(analyze_H(EX2), 2)
    d = census_from_json(c.to_json())
    assert d.counts == c.counts and d.total == c.total
    lines = c.to_csv().splitlines()
    assert lines[0] == "eta,beta,codim_predicted,count"
    assert len(lines) == 1 + len(c.counts)


def test_census_budget_guard(monkeypatch):
    H = analyze_H(EX2)
    with pytest.raises(BudgetExceeded):
        stratum_census(H, 5, budget=10)
    monkeypatch.setenv("BETTI_LAB_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        stratum_census(H, 5)
    with pytest.raises(ValueError):
        stratum_census(H, 4)


# --------------------------------------------------------------------------
# counting polynomials


@pytest.mark.parametrize("vals", [(1, 2, 1, 0), (1, 2, 2, 1, 0), (1, 2, 3, 2, 0)])
def test_fit_small(vals):
    H = analyze_H(vals)
    n = dim_moduli(H) + 1
    primes = [p for p in (5, 7, 11, 13, 17, 19, 23) if p >= max(5, H.s)][: n + 1]
    cs = [stratum_census(H, p) for p in primes]
    fit = fit_counting_polynomials(cs[:-1])
    held = cs[-1]
    n_stair = sum(1 for _ in staircases_of(H))
    total_at_1 = 0
    for node in build_lattice(H).nodes:
        assert fit.integral[node.eta]
        assert fit.degrees[node.eta] == dim_moduli(H) - node.codim
        assert fit.predict(node.eta, held.q) == held.counts[node.eta]
        total_at_1 += poly_eval(fit.polys[node.eta], 1)
    # the cell decomposition: one affine cell per monomial ideal
    assert total_at_1 == n_stair


def test_fit_needs_enough_primes():
    H = analyze_H(EX1)
    with pytest.raises(InsufficientPoints):
        fit_counting_polynomials([stratum_census(H, 5)])


# --------------------------------------------------------------------------
# staircases


@pytest.mark.parametrize("H", artinian_sequences(6), ids=lambda H: "".join(map(str, H.trimmed())))
def test_staircases_match_brute_force(H):
    assert {tuple(s.rows) for s in staircases_of(H)} == brute_staircases(H)


@pytest.mark.parametrize("H", artinian_sequences(6), ids=lambda H: "".join(map(str, H.trimmed())))
def test_staircase_invariants(H):
    F = FieldSpec.prime(10007)
    for sc in staircases_of(H):
        I = sc.to_ideal(H.s + 1, F)
        inv = invariants_of(I)
        assert tuple(inv.H.trimmed()) == tuple(H.trimmed())
        assert {k: v for k, v in inv.nu.items() if v} == sc.generator_degrees()
        assert {k: v for k, v in inv.beta.items() if v} == sc.relation_degrees()
        assert len(sc.corners()) == sum(sc.generator_degrees().values())


def test_examples_have_twelve_staircases():
    assert sum(1 for _ in staircases_of(analyze_H(EX1))) == 12
    assert sum(1 for _ in staircases_of(analyze_H(EX2))) == 12


@pytest.mark.parametrize("vals", [EX1, EX2, (1, 2, 3, 4, 3, 2, 1, 0)])
def test_find_monomial_every_node(vals):
    H = analyze_H(vals)
    F = FieldSpec.prime(10007)
    for node in build_lattice(H).nodes:
        sc = find_monomial_with_beta(H, node.triple)
        assert sc is not None
        assert invariants_of(sc.to_ideal(H.s + 1, F)).triple.beta == node.triple.beta


# --------------------------------------------------------------------------
# probes


def test_genericity_probe_small():
    res = genericity_probe(analyze_H(EX1), 10007, 20, seed=1)
    assert res.trials == 20 and res.hits >= 19


@pytest.mark.parametrize("name", sorted(EXAMPLE_PATHS))
def test_example_paths(name):
    chk = check_example_path(name)
    assert chk.passed, chk.to_json()


def test_specialization_probe_detects_wrong_direction():
    # a path that is special for t != 0 and generic at t = 0 is not a specialization
    H = analyze_H(EX1)
    F = FieldSpec.prime(10007)
    path = lambda t: [1, 2, 3 if t == 0 else 0, 4 if t == 0 else 0, 5 if t == 0 else 0]
    res = specialization_probe(H, path, [0, 1, 2], F)
    assert not res.ok


@pytest.mark.parametrize("H", artinian_sequences(8)[::17], ids=lambda H: "".join(map(str, H.trimmed())))
def test_lattice_monotone(H):
    assert lattice_monotone(H)


def test_codim_report_negative_control():
    H = analyze_H((1, 2, 2, 1, 0))
    lat = build_lattice(H)
    primes = [5, 7, 11, 13, 17, 19, 23][: dim_moduli(H) + 1]
    good = verify_codim_report(H, primes)
    assert good.passed
    wrong = {n.eta: n.codim + 1 for n in lat.nodes}
    bad = verify_codim_report(H, primes, codim_table=wrong, censuses=[stratum_census(H, p) for p in primes])
    assert not bad.passed
