"""``betti-lab``: command-line front end.

Exit codes: 0 success, 2 bad input, 3 sampling gave up, 4 enumeration
budget exceeded, 5 an internal identity failed (a bug).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction

from . import __version__
from .algebra_core import FieldError, FieldSpec, QQ
from .applications import (
    InfeasibleSocle,
    intersection_report,
    level_specs_from_json,
    realize_socle,
    socle_necessity,
)
from .graded_ideal import (
    IdealError,
    PatternError,
    SamplingError,
    chart_ideal,
    has_normal_pattern,
    ideal_from_json,
    ideal_to_json,
    invariants_of,
    random_ideal,
    standard_generators,
    theta_matrix,
)
from .hilbert_betti import (
    BoundError,
    FormulaMismatch,
    OSequenceError,
    analyze_H,
    artinian_sequences,
    build_lattice,
    dim_moduli,
    nu_min,
    socle_bounds,
)
from .strata_lab import (
    EXAMPLE_PATHS,
    BudgetExceeded,
    budget_from_env,
    check_example_path,
    find_monomial_with_beta,
    lattice_monotone,
    stratum_census,
    verify_codim_report,
)

EXIT_OK, EXIT_INPUT, EXIT_SAMPLING, EXIT_BUDGET, EXIT_INTERNAL = 0, 2, 3, 4, 5


class InputError(ValueError):
    pass


# --------------------------------------------------------------------------
# helpers


def _field(args) -> FieldSpec:
    if getattr(args, "rationals", False):
        return QQ
    return FieldSpec.prime(args.p)


def _meta(args, kind: str) -> dict:
    out = {"schema": f"betti-lab/{kind}@1", "version": __version__}
    if hasattr(args, "seed"):
        out["seed"] = args.seed
    if hasattr(args, "p"):
        out["field"] = _field(args).to_json()
    if hasattr(args, "budget"):
        out["budget"] = budget_from_env(args.budget)
    return out


def _H(values):
    vals = [int(v) for v in values]
    # trailing zeros are optional
    if vals and vals[-1] != 0:
        vals.append(0)
    return analyze_H(vals)


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def _emit(args, text: str) -> None:
    path = getattr(args, "output", None)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _fmt_seq(d: dict) -> str:
    return "(" + ",".join(str(d[k]) for k in sorted(d)) + ")"


# --------------------------------------------------------------------------
# hf and strata


def cmd_hf(args) -> int:
    H = _H(args.H)
    info = {
        "H": list(H.trimmed()),
        "mu": H.mu,
        "s": H.s,
        "c": H.c,
        "e": [H.e(i) for i in range(H.mu, H.s + 1)],
        "dim": dim_moduli(H),
        "nu_min": nu_min(H) if H.is_artinian else None,
        "socle_bounds": {str(i): list(b) for i, b in socle_bounds(H).items()} if H.is_artinian else None,
    }
    if args.json:
        _emit(args, _dump({**_meta(args, "hf"), **info}))
        return EXIT_OK
    lines = [
        f"mu={H.mu} s={H.s} dim={info['dim']} nu_min={info['nu_min']}",
        f"H={H} c={H.c}",
        "e=(" + ",".join(map(str, info["e"])) + f") from degree {H.mu}",
    ]
    if H.is_artinian:
        lines.append("socle bounds: " + " ".join(f"ST_{i} in [{lo},{hi}]" for i, (lo, hi) in socle_bounds(H).items()))
    _emit(args, "\n".join(lines))
    return EXIT_OK


def lattice_dot(H) -> str:
    lat = build_lattice(H)
    out = ["digraph lattice {", f'  label="H={H}";', "  rankdir=BT;"]
    name = lambda eta: "n" + "_".join(map(str, eta)) if eta else "n"
    for node in lat.nodes:
        eta = ",".join(map(str, node.eta))
        out.append(f'  {name(node.eta)} [label="({eta})\\ncod {node.codim}"];')
    for a, b in lat.edges:
        out.append(f"  {name(lat.nodes[a].eta)} -> {name(lat.nodes[b].eta)};")
    out.append("}")
    return "\n".join(out)


def cmd_strata(args) -> int:
    H = _H(args.H)
    if not H.is_artinian:
        raise InputError("strata needs an Artinian H (ending in 0)")
    lat = build_lattice(H)
    if args.dot:
        _emit(args, lattice_dot(H))
        return EXIT_OK
    rows = []
    for node in lat.nodes:
        t = node.triple
        rows.append({
            "eta": list(node.eta),
            "beta": list(t.beta_seq()),
            "nu": list(t.nu_seq()),
            "tau": list(t.tau_seq()),
            "codim": node.codim,
        })
    if args.json:
        _emit(args, _dump({**_meta(args, "strata"), "H": list(H.trimmed()), "dim": dim_moduli(H), "strata": rows, "edges": [[list(lat.nodes[a].eta), list(lat.nodes[b].eta)] for a, b in lat.edges]}))
        return EXIT_OK
    lines = [f"H={H} dim={dim_moduli(H)} strata={len(rows)}", "eta\tbeta\tnu\ttau\tcodim"]
    for r in rows:
        lines.append("\t".join(["(" + ",".join(map(str, r[k])) + ")" for k in ("eta", "beta", "nu", "tau")] + [str(r["codim"])]))
    _emit(args, "\n".join(lines))
    return EXIT_OK


# --------------------------------------------------------------------------
# ideals


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read ideal JSON from {path}: {exc}") from exc


def analyze_report(I) -> dict:
    inv = invariants_of(I)
    H = inv.H
    out = {"field": I.field.to_json(), **inv.to_json()}
    normal = has_normal_pattern(I, H)
    out["normal_pattern"] = normal
    if normal:
        std = standard_generators(I)
        out["theta_ranks"] = {str(i): theta_matrix(I, i, std).rank() for i in range(H.mu, H.s)}
        out["parameters"] = [str(a) for a in std.parameters()]
    out["generators"] = ideal_to_json(I)["generators"]
    return out


def cmd_ideal_analyze(args) -> int:
    data = _read_json(args.file)
    try:
        I = ideal_from_json(data["ideal"] if "ideal" in data else data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed ideal JSON: {exc}") from exc
    rep = analyze_report(I)
    if args.json:
        _emit(args, _dump({"schema": "betti-lab/analysis@1", "version": __version__, **rep}))
        return EXIT_OK
    lines = [
        f"H=({','.join(map(str, rep['H']))}) mu={rep['mu']} s={rep['s']}",
        "tau=" + _fmt_seq(inv_int(rep["tau"])),
        "nu=" + _fmt_seq(inv_int(rep["nu"])),
        "beta=" + _fmt_seq(inv_int(rep["beta"])),
        "socle=" + _fmt_seq(inv_int(rep["socle"])),
        f"normal_pattern={rep['normal_pattern']}",
    ]
    if rep.get("theta_ranks") is not None:
        lines.append("theta_ranks=" + _fmt_seq(inv_int(rep["theta_ranks"])))
    _emit(args, "\n".join(lines))
    return EXIT_OK


def inv_int(d: dict) -> dict:
    return {int(k): v for k, v in d.items()}


def _ideal_doc(args, I, extra: dict) -> str:
    return _dump({**_meta(args, "ideal"), **extra, **ideal_to_json(I)})


def cmd_ideal_random(args) -> int:
    H = _H(args.H)
    F = _field(args)
    tau = _ints(args.tau) if args.tau else None
    I = random_ideal(H, F, args.seed, target_tau=tau, max_tries=args.tries)
    _emit(args, _ideal_doc(args, I, {"H": list(H.trimmed()), "target_tau": tau}))
    return EXIT_OK


def cmd_ideal_chart(args) -> int:
    H = _H(args.H)
    F = _field(args)
    params = [Fraction(t) for t in args.params.replace(",", " ").split()] if args.params else []
    I = chart_ideal(H, [F(a) for a in params], F)
    _emit(args, _ideal_doc(args, I, {"H": list(H.trimmed()), "params": [str(a) for a in params]}))
    return EXIT_OK


def cmd_witness(args) -> int:
    H = _H(args.H)
    st = find_monomial_with_beta(H, _ints(args.beta))
    if st is None:
        _emit(args, "no monomial witness found")
        return EXIT_INTERNAL
    if args.json:
        _emit(args, _dump({"schema": "betti-lab/witness@1", "version": __version__, "H": list(H.trimmed()), "rows": list(st.rows), "generators": [list(c) for c in st.corners()]}))
    else:
        _emit(args, str(st))
    return EXIT_OK


def cmd_census(args) -> int:
    H = _H(args.H)
    c = stratum_census(H, args.q, engine=args.engine, jobs=args.jobs, budget=args.budget)
    if args.csv:
        _emit(args, c.to_csv())
    else:
        _emit(args, _dump({**_meta(args, "census"), **c.to_json()}))
    return EXIT_OK


# --------------------------------------------------------------------------
# verify


def _verdict(args, kind: str, body: dict, passed: bool) -> int:
    body = {**_meta(args, kind), "status": "PASS" if passed else "FAIL", **body}
    _emit(args, _dump(body))
    return EXIT_OK if passed else 1


def cmd_verify_codim(args) -> int:
    H = _H(args.H)
    rep = verify_codim_report(
        H,
        _ints(args.primes),
        holdout=args.holdout,
        engine=args.engine,
        jobs=args.jobs,
        budget=args.budget,
        min_prime=args.min_prime,
    )
    return _verdict(args, "verify-codim", rep.to_json(), rep.passed)


def cmd_verify_frontier(args) -> int:
    F = _field(args)
    paths = [check_example_path(n, F).to_json() for n in EXAMPLE_PATHS]
    Hs = artinian_sequences(args.max_s)
    bad = [list(H.trimmed()) for H in Hs if not lattice_monotone(H)]
    ok = all(p["status"] == "PASS" for p in paths) and not bad
    body = {"paths": paths, "monotone_checked": len(Hs), "monotone_failures": bad}
    return _verdict(args, "verify-frontier", body, ok)


def socle_suite(census_max_s: int, max_s: int, q: int, budget=None) -> dict:
    """Necessity over every ideal of small G(H)(F_q), sufficiency over every feasible (H, ST)."""
    necessity = [socle_necessity(H, q, budget) for H in artinian_sequences(census_max_s)]
    nec_ok = all(c.passed for c in necessity)
    suff = []
    pairs = 0
    for H in artinian_sequences(max_s):
        ranges = [range(lo, hi + 1) for lo, hi in socle_bounds(H).values()]
        for st in itertools.product(*ranges):
            pairs += 1
            try:
                realize_socle(H, st)
            except (InfeasibleSocle, RuntimeError) as exc:
                suff.append({"H": list(H.trimmed()), "ST": list(st), "error": str(exc)})
    return {
        "necessity": {"q": q, "max_s": census_max_s, "passed": nec_ok, "ideals": sum(c.ideals for c in necessity), "cases": [c.to_json() for c in necessity]},
        "sufficiency": {"max_s": max_s, "pairs": pairs, "passed": not suff, "failures": suff},
        "passed": nec_ok and not suff,
    }


def cmd_verify_socle(args) -> int:
    body = socle_suite(args.census_max_s, args.max_s, args.q, args.budget)
    return _verdict(args, "verify-socle", body, body["passed"])


def cmd_verify_intersect(args) -> int:
    specs = level_specs_from_json(_read_json(args.spec))
    rep = intersection_report(specs, _field(args), args.trials, args.seed).to_json()
    ok = rep["h_match_fraction"] >= args.threshold
    return _verdict(args, "verify-intersect", {**rep, "threshold": args.threshold}, ok)


# --------------------------------------------------------------------------
# parser


def _common(p, seed=True, field=True, budget=False, out=True):
    if seed:
        p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    if field:
        p.add_argument("--p", type=int, default=10007, help="prime field size (default 10007)")
        p.add_argument("--rationals", action="store_true", help="work over Q instead of F_p")
    if budget:
        p.add_argument("--budget", type=int, default=None, help="ceiling on enumerated ideals (env BETTI_LAB_BUDGET)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for censuses")
    if out:
        p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="betti-lab", description="Betti strata of graded quotients of k[x,y].")
    ap.add_argument("--version", action="version", version=f"betti-lab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hf", help="validate a Hilbert function and print its invariants")
    p.add_argument("H", nargs="+")
    p.add_argument("--json", action="store_true")
    _common(p, seed=False, field=False)
    p.set_defaults(func=cmd_hf)

    p = sub.add_parser("strata", help="the lattice of Betti strata")
    p.add_argument("H", nargs="+")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true")
    g.add_argument("--dot", action="store_true")
    _common(p, seed=False, field=False)
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("ideal", help="analyze, sample or build ideals")
    isub = p.add_subparsers(dest="ideal_command", required=True)
    q = isub.add_parser("analyze", help="invariants of an ideal JSON file ('-' for stdin)")
    q.add_argument("file")
    q.add_argument("--json", action="store_true")
    _common(q, seed=False, field=False)
    q.set_defaults(func=cmd_ideal_analyze)
    q = isub.add_parser("random", help="a seeded random ideal with Hilbert function H")
    q.add_argument("--H", nargs="+", required=True)
    q.add_argument("--tau", default=None, help="target tau sequence, e.g. 1,1,1")
    q.add_argument("--tries", type=int, default=200)
    _common(q)
    q.set_defaults(func=cmd_ideal_random)
    q = isub.add_parser("chart", help="the chart ideal with the given parameters")
    q.add_argument("--H", nargs="+", required=True)
    q.add_argument("--params", default="", help="comma separated, in chart order")
    _common(q, seed=False)
    q.set_defaults(func=cmd_ideal_chart)

    p = sub.add_parser("witness", help="a monomial ideal with prescribed relation degrees")
    p.add_argument("H", nargs="+")
    p.add_argument("--beta", required=True, help="beta from degree mu+1, e.g. 0,2")
    p.add_argument("--json", action="store_true")
    _common(p, seed=False, field=False)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("census", help="count G(H)(F_q) by stratum")
    p.add_argument("H", nargs="+")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--engine", choices=["compiled", "python"], default="compiled")
    p.add_argument("--csv", action="store_true")
    _common(p, seed=False, field=False, budget=True)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="PASS/FAIL reports")
    vsub = p.add_subparsers(dest="verify_command", required=True)
    q = vsub.add_parser("codim", help="census dimensions against predicted codimensions")
    q.add_argument("--H", nargs="+", required=True)
    q.add_argument("--primes", default="5,7,11,13,17,19")
    q.add_argument("--holdout", type=int, default=None)
    q.add_argument("--min-prime", type=int, default=None, help="smallest prime used in the fit (default max(5, s))")
    q.add_argument("--engine", choices=["compiled", "python"], default="compiled")
    _common(q, seed=False, field=False, budget=True)
    q.set_defaults(func=cmd_verify_codim)
    q = vsub.add_parser("frontier", help="specialization paths and lattice monotonicity")
    q.add_argument("--max-s", type=int, default=8)
    _common(q, seed=False)
    q.set_defaults(func=cmd_verify_frontier)
    q = vsub.add_parser("socle", help="socle type bounds, both directions")
    q.add_argument("--max-s", type=int, default=6)
    q.add_argument("--census-max-s", type=int, default=5)
    q.add_argument("--q", type=int, default=5)
    _common(q, seed=False, field=False, budget=True)
    q.set_defaults(func=cmd_verify_socle)
    q = vsub.add_parser("intersect", help="Hilbert functions of intersections of level ideals")
    q.add_argument("--spec", required=True, help="level-spec JSON file")
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--threshold", type=float, default=0.99)
    _common(q)
    q.set_defaults(func=cmd_verify_intersect)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "budget", None) is not None and args.budget <= 0:
        ap.error("--budget must be positive")
    if getattr(args, "jobs", 1) < 1:
        ap.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except OSequenceError as exc:
        print(f"error: invalid H: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(_dump({"schema": "betti-lab/error@1", "status": "BUDGET", "estimate": exc.estimate, "budget": exc.budget}))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SamplingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SAMPLING
    except (FormulaMismatch, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, IdealError, PatternError, FieldError, BoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
