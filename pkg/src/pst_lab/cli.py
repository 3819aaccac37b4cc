"""``pst-lab`` command line.

Exit codes: 0 success / all checks pass, 1 some theorem instance failed,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from pst_lab.abelian import GroupSpec, parse_int_list
from pst_lab.analysis import PstReport, analyze_quarter, scan_pst_float
from pst_lab.cayley import SCHEMA_VERSION, CayleyGraph, build_cayley, gcd_graph, parse_tuple_list
from pst_lab.config import TOLERANCES
from pst_lab.constructions import (
    ConstructionFailure,
    HypothesisViolation,
    corollary_graphs,
    decompose_family_member,
    describe,
    enumerate_divisor_family,
    lemma3b_graph,
    lemma3c_graph,
    prop1c_decompose,
    sample_divisor_family,
    theorem3d_graph,
    theorem3e_graphs,
    theorem3f_graph,
    theorem3g_construct,
)
from pst_lab.cubelike import (
    CubelikeSpec,
    PstShift,
    classify_half_pi,
    cubelike_adjacency,
    cubelike_half_pi,
    format_bits,
)
from pst_lab.evolution import float_transition, quarter_transition
from pst_lab.selftest import run_selftest
from pst_lab.spectra import NonIntegralSpectrum, full_spectrum, spectrum_json
from pst_lab.theorems import SCOPES, verify_theorem_suite


class UsageError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _fixed(x: float) -> float:
    v = round(float(x), 12)
    return 0.0 if v == 0 else v


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- graph selection


def _add_graph_args(p: argparse.ArgumentParser):
    p.add_argument("--group", help="moduli, e.g. 4,2")
    p.add_argument(
        "--divisor-tuples",
        action="append",
        default=None,
        help='divisor tuples separated by ";" (or repeat the flag), e.g. "1,1;2,1"',
    )
    p.add_argument("--connection-set", help='explicit symmetric S, elements separated by ";"')
    p.add_argument("--graph", help="graph JSON written by `pst-lab build`")


def _graph_from_args(args) -> CayleyGraph:
    if args.graph:
        if args.group or args.divisor_tuples or args.connection_set:
            raise UsageError("--graph cannot be combined with --group/--divisor-tuples/--connection-set")
        with open(args.graph) as fh:
            return CayleyGraph.from_json(json.load(fh))
    if not args.group:
        raise UsageError("--group is required (or --graph)")
    group = GroupSpec.parse(args.group)
    if args.divisor_tuples is not None and args.connection_set is not None:
        raise UsageError("give either --divisor-tuples or --connection-set, not both")
    if args.connection_set is not None:
        return build_cayley(group, [group.parse_element(x) for x in args.connection_set.split(";") if x.strip()])
    tuples = [t for chunk in (args.divisor_tuples or []) for t in parse_tuple_list(chunk)]
    for t in tuples:
        if not group.is_divisor_tuple(t):
            raise UsageError(f"{t} is not a divisor tuple of {group.moduli}")
    return gcd_graph(group, tuples)


# ---------------------------------------------------------------- subcommands


def cmd_build(args) -> int:
    g = _graph_from_args(args)
    if args.format == "json":
        text = _dump(g.to_json())
    elif args.format == "dot":
        text = g.to_dot()
    else:
        text = g.adjacency_csv()
    _emit(text, args.out)
    return 0


def cmd_spectrum(args) -> int:
    g = _graph_from_args(args)
    spec = full_spectrum(g)
    if args.format == "table":
        lines = [f"group {g.group}, |S|={g.degree}"]
        lines += [f"  lambda={mu:>4}  multiplicity={mult}" for mu, mult in spec.multiplicities.items()]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_dump(spectrum_json(spec)), args.out)
    return 0


def cmd_evolve(args) -> int:
    g = _graph_from_args(args)
    if args.quarter is not None:
        h = quarter_transition(g, args.quarter)
        if args.format == "csv":
            rows = [[str(h.entry(u, v)) for v in g.group.elements()] for u in g.group.elements()]
            _emit("\n".join(",".join(r) for r in rows) + "\n", args.out)
        else:
            _emit(_dump(h.to_json()), args.out)
        return 0
    ft = float_transition(g, args.time)
    if args.format == "csv":
        rows = [",".join(f"{_fixed(z.real)}{_fixed(z.imag):+}j" for z in row) for row in ft.entries]
        _emit("\n".join(rows) + "\n", args.out)
    else:
        payload = {
            "schema": SCHEMA_VERSION,
            "moduli": list(g.group.moduli),
            "time": _fixed(args.time),
            "unitarity_error": float(f"{ft.unitarity_error():.3e}"),
            "unitary": bool(ft.is_unitary(args.unitarity_tol)),
            "row": {
                g.group.format(x): [_fixed(z.real), _fixed(z.imag)]
                for x, z in zip(g.group.elements(), ft.entries[0])
            },
        }
        _emit(_dump(payload), args.out)
    return 0


def _report_table(report: PstReport) -> str:
    g = report.graph
    lines = [f"group {g.group}, |S|={g.degree}, quarter q={report.time}: {report.verdict}"]
    if report.periodic is not None:
        lines.append(f"  H(q*pi/2) = gamma * I with gamma = {report.periodic.gamma}")
    for p in report.pairs:
        lines.append(f"  PST u -> u + ({g.group.format(p.shift)}), phase {p.phase}")
    return "\n".join(lines) + "\n"


def cmd_check(args) -> int:
    g = _graph_from_args(args)
    report = analyze_quarter(g, args.quarter)
    _emit(_report_table(report) if args.format == "table" else _dump(report.to_json()), args.out)
    return 0


def cmd_scan(args) -> int:
    g = _graph_from_args(args)
    hits = scan_pst_float(g, args.t_min, args.t_max, args.step, args.tol)
    report = PstReport(g, args.t_max, "float", candidates=hits)
    payload = report.to_json()
    payload["heuristic"] = True
    payload["grid"] = {"t_min": _fixed(args.t_min), "t_max": _fixed(args.t_max), "step": _fixed(args.step), "tol": args.tol}
    _emit(_dump(payload), args.out)
    return 0


def cmd_family(args) -> int:
    if args.sample:
        members = sample_divisor_family(args.n, args.sample, seed=args.seed)
    else:
        members = list(enumerate_divisor_family(args.n, args.limit, args.max_tilde, args.max_dprime))
    _emit(_dump({"schema": SCHEMA_VERSION, "n": args.n, "members": [m.to_json() for m in members]}), args.out)
    return 0


def cmd_construct(args) -> int:
    d_list = parse_int_list(args.d) if args.d else ()
    thm = args.theorem
    params = {k: v for k, v in vars(args).items() if k in ("group", "i", "d", "n", "loopless") and v not in (None, False)}
    if thm in ("lemma3b", "lemma3c", "prop1c"):
        if args.n is None or len(d_list) != 1:
            raise UsageError(f"{thm} needs --n and a single --d")
        if thm == "prop1c":
            dec = prop1c_decompose(args.n, d_list[0])
            payload = {
                "theorem": "prop1c",
                "params": params,
                "alpha": dec.alpha,
                "beta": dec.beta,
                "m": dec.m,
                "m_prime": dec.m_prime,
                "cubelike_set": sorted(format_bits(u) for u in dec.cubelike.C),
                "isomorphism_verified": dec.witness.verify(),
            }
            _emit(_dump(payload), args.out)
            return 0 if payload["isomorphism_verified"] else 1
        builder = lemma3b_graph if thm == "lemma3b" else lemma3c_graph
        records = [describe(thm, params, builder(args.n, d_list[0]))]
    elif thm == "thm3d":
        if args.n is None:
            raise UsageError("thm3d needs --n and --d")
        records = [describe(thm, params, theorem3d_graph(decompose_family_member(args.n, d_list)))]
    elif thm == "corollary":
        if args.n is None:
            raise UsageError("corollary needs --n and --d")
        records = [describe(thm, params, g) for g in corollary_graphs(args.n, d_list)]
    else:
        if not args.group:
            raise UsageError(f"{thm} needs --group")
        group = GroupSpec.parse(args.group)
        if thm == "thm3g":
            records = [describe(thm, params, theorem3g_construct(group))]
        else:
            if args.i is None or not d_list:
                raise UsageError(f"{thm} needs --i and --d")
            if thm == "thm3f":
                records = [describe(thm, params, theorem3f_graph(group, args.i, d_list))]
            else:
                half, quarter = theorem3e_graphs(group, args.i, d_list, loopless=args.loopless)
                records = [describe("thm3e:half", params, half), describe("thm3e:quarter", params, quarter)]
    _emit(_dump({"schema": SCHEMA_VERSION, "constructions": [r.to_json() for r in records]}), args.out)
    return 0


def cmd_cubelike(args) -> int:
    spec = CubelikeSpec.from_bitstrings(args.n, [b for b in args.set.split(",") if b.strip()] if args.set else [])
    payload = {
        "schema": SCHEMA_VERSION,
        "n": spec.n,
        "set": sorted(format_bits(u) for u in spec.C),
        "sigma": format_bits(spec.sigma),
    }
    h = cubelike_half_pi(spec)
    payload["half_pi"] = {"phase": h.phase.to_json(), "phase_str": str(h.phase), "permutation_shift": format_bits(h.shift)}
    if args.classify:
        verdict = classify_half_pi(spec)
        if isinstance(verdict, PstShift):
            payload["classification"] = {"verdict": "pst", "shift": format_bits(verdict.shift), "phase": str(verdict.phase)}
        else:
            payload["classification"] = {"verdict": "periodic", "gamma": str(verdict.gamma)}
    if args.adjacency:
        payload["adjacency"] = cubelike_adjacency(spec).tolist()
    _emit(_dump(payload), args.out)
    return 0


def cmd_verify(args) -> int:
    scopes = SCOPES if args.scope == "all" else (args.scope,)
    reports = [verify_theorem_suite(s, args.max_n, seed=args.seed) for s in scopes]
    if args.format == "table":
        _emit("\n".join(r.table() for r in reports) + "\n", args.out)
    else:
        _emit(_dump({"schema": SCHEMA_VERSION, "reports": [r.to_json() for r in reports]}), args.out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_selftest(args) -> int:
    ok, lines = run_selftest(args.max_n)
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pst-lab", description="gcd-graphs, quantum walks and perfect state transfer")
    sub = parser.add_subparsers(dest="command", required=True)

    def new(name, func, help_text, graph=True, formats=("json",)):
        p = sub.add_parser(name, help=help_text)
        if graph:
            _add_graph_args(p)
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.set_defaults(func=func)
        return p

    new("build", cmd_build, "build a Cayley / gcd-graph", formats=("json", "dot", "csv"))
    new("spectrum", cmd_spectrum, "exact integral spectrum", formats=("json", "table"))

    p = new("evolve", cmd_evolve, "transition matrix H(t)", formats=("json", "csv"))
    when = p.add_mutually_exclusive_group(required=True)
    when.add_argument("--quarter", type=int, help="exact evaluation at t = q*pi/2")
    when.add_argument("--time", type=float, help="floating-point evaluation at time t")
    p.add_argument("--unitarity-tol", type=float, default=TOLERANCES.unitarity)

    p = new("check", cmd_check, "exact periodicity / PST at t = q*pi/2", formats=("json", "table"))
    p.add_argument("--quarter", type=int, default=1)

    p = new("scan", cmd_scan, "heuristic float scan for PST candidate times")
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=TOLERANCES.scan_t_max)
    p.add_argument("--step", type=float, default=TOLERANCES.scan_step)
    p.add_argument("--tol", type=float, default=TOLERANCES.pst_candidate)

    p = new("family", cmd_family, "enumerate divisor families for n in 4N", graph=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--max-tilde", type=int, default=None)
    p.add_argument("--max-dprime", type=int, default=None)
    p.add_argument("--sample", type=int, default=0, help="draw this many random members instead")
    p.add_argument("--seed", type=int, default=0)

    p = new("construct", cmd_construct, "build a graph from one of the constructions", graph=False)
    p.add_argument("theorem", choices=("lemma3b", "lemma3c", "thm3d", "thm3f", "thm3e", "thm3g", "prop1c", "corollary"))
    p.add_argument("--group")
    p.add_argument("--i", type=int, help="1-based coordinate with m_i divisible by 4")
    p.add_argument("--d", help="divisor or comma-separated divisor set")
    p.add_argument("--n", type=int)
    p.add_argument("--loopless", action="store_true")

    p = new("cubelike", cmd_cubelike, "cubelike graph X(C) over Z_2^n", graph=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", default="", help="comma-separated bitstrings, c_0 first")
    p.add_argument("--classify", action="store_true")
    p.add_argument("--adjacency", action="store_true")

    p = new("verify", cmd_verify, "replicate a theorem over all instances within a bound", graph=False, formats=("json", "table"))
    p.add_argument("scope", choices=SCOPES + ("all",))
    p.add_argument("--max-n", type=int, default=24)
    p.add_argument("--seed", type=int, default=0)

    p = new("selftest", cmd_selftest, "cross-validate exact, float and oracle backends", graph=False)
    p.add_argument("--max-n", type=int, default=16)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, HypothesisViolation, NonIntegralSpectrum, ValueError) as exc:
        print(f"pst-lab: error: {exc}", file=sys.stderr)
        return 2
    except ConstructionFailure as exc:
        print(f"pst-lab: construction failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
