"""Command-line front end for symmetric edge polytope computations."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .combinat import (
    ParseError,
    Permutation,
    act_vector,
    complete_graph,
    graph_invariant,
    parse_cycles,
    parse_graph,
)
from .corpus import FAMILIES, CorpusSpec
from .ehrhart import MAX_DIM, InterpolationError, count_dilate, leading_coefficient, period
from .polytope import fraction_str, polytope_json, rvol
from .sep import (
    EdgelessGraphError,
    TheoremViolation,
    fixed_polytope,
    rvol_fixed_formula,
    sep_build,
)
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_NOT_AUTOMORPHISM = 4
EXIT_DISAGREE = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _vertex_rows(vertices) -> list[list[str]]:
    return [[fraction_str(c) for c in v] for v in vertices]


def _load_graph(args):
    if args.complete is not None:
        if args.complete < 1:
            raise CliError(EXIT_PARSE, "--complete needs N >= 1")
        g = complete_graph(args.complete)
    elif args.graph is not None:
        try:
            with open(args.graph, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(EXIT_PARSE, f"cannot read graph file: {exc}") from exc
        try:
            g = parse_graph(text)
        except (ParseError, ValueError) as exc:
            raise CliError(EXIT_PARSE, f"malformed graph file {args.graph}: {exc}") from exc
    else:
        raise CliError(EXIT_PARSE, "give --graph FILE or --complete N")
    if not g.edges:
        raise CliError(EXIT_DEGENERATE, "graph has no edges; its edge polytope is the origin")
    if not g.is_connected():
        print("warning: graph is disconnected; volume identities for fixed polytopes "
              "are only guaranteed for connected graphs", file=sys.stderr)
    return g


def _load_perm(args, g) -> Permutation | None:
    if not args.perm:
        return None
    try:
        sigma = parse_cycles(args.perm, g.n)
    except (ParseError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"bad permutation {args.perm!r}: {exc}") from exc
    if not graph_invariant(g, sigma):
        verts = set(sep_build(g).vertices)
        moved = sorted(v for v in verts if act_vector(sigma, v) not in verts)
        bad_edges = sorted(e for e in g.sorted_edges() if not g.has_edge(sigma(e[0]), sigma(e[1])))
        raise CliError(
            EXIT_NOT_AUTOMORPHISM,
            f"{sigma} is not an automorphism: graph side fails on edges "
            f"{[list(e) for e in bad_edges]}; polytope side fails, sigma moves "
            f"{len(moved)} vertices of SEP(G) outside it, e.g. {_vertex_rows(moved[:1])}",
        )
    return sigma


def _target_polytope(g, sigma):
    sep = sep_build(g)
    if sigma is None:
        return sep.polytope
    return fixed_polytope(sep, sigma).polytope


def cmd_vertices(args):
    g = _load_graph(args)
    verts = sep_build(g).vertices
    return _vertex_rows(verts), None


def cmd_fixed(args):
    g = _load_graph(args)
    sigma = _load_perm(args, g) or Permutation.identity(g.n)
    p = _target_polytope(g, sigma)
    return {
        "sigma": str(sigma),
        "vertices": _vertex_rows(p.vertices),
        "dimension": p.dim,
        "facet_count": p.facet_count,
    }, None


def cmd_hull(args):
    g = _load_graph(args)
    sigma = _load_perm(args, g)
    return polytope_json(_target_polytope(g, sigma)), None


def _ehrhart_value(p):
    if p.dim > MAX_DIM:
        raise CliError(EXIT_DEGENERATE, f"Ehrhart channel is capped at dimension {MAX_DIM}; polytope has {p.dim}")
    return leading_coefficient(p)


def cmd_rvol(args):
    g = _load_graph(args)
    sigma = _load_perm(args, g)
    p = _target_polytope(g, sigma)
    methods = ["formula", "hull", "ehrhart"] if args.method == "all" else [args.method]
    values: dict[str, Fraction] = {}
    for m in methods:
        if m == "formula":
            values[m] = rvol_fixed_formula(g, sigma or Permutation.identity(g.n))
        elif m == "hull":
            values[m] = rvol(p)
        else:
            try:
                values[m] = _ehrhart_value(p)
            except InterpolationError as exc:
                raise CliError(EXIT_DISAGREE, f"Ehrhart interpolation inconsistent: {exc}") from exc
    out: dict = {m: fraction_str(v) for m, v in values.items()}
    if args.method == "all":
        agree = len(set(values.values())) == 1
        out["agree"] = agree
        if not agree:
            return out, EXIT_DISAGREE
    return out, None


def cmd_ehrhart(args):
    g = _load_graph(args)
    sigma = _load_perm(args, g)
    p = _target_polytope(g, sigma)
    if p.dim > MAX_DIM:
        raise CliError(EXIT_DEGENERATE, f"dilate counting is capped at dimension {MAX_DIM}; polytope has {p.dim}")
    per = period(p)
    ts = args.t or [k * per for k in range(1, p.dim + 2)]
    if any(t < 0 for t in ts):
        raise CliError(EXIT_PARSE, "dilation factors must be non-negative")
    return [{"t": t, "count": count_dilate(p, t).count} for t in ts], None


def cmd_verify(args):
    families = tuple(args.families.split(",")) if args.families else FAMILIES
    try:
        spec = CorpusSpec(families=families, n_max=args.nmax, random_count=args.random_count,
                          random_seed=args.seed)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    suites = SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(s, spec) for s in suites]
    ok = all(r["summary"]["pass"] for r in reports)
    for r in reports:
        s = r["summary"]
        print(f"{r['suite']}: {s['cases'] - s['failed']}/{s['cases']} cases pass", file=sys.stderr)
    report = reports[0] if len(reports) == 1 else {"suites": reports, "pass": ok}
    return report, (None if ok else EXIT_VERIFY)


def _to_csv(payload) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(payload, dict) and ("cases" in payload or "suites" in payload):
        w.writerow(["suite", "graph", "sigma", "check", "expected", "actual", "pass"])
        for r in payload.get("suites", [payload]):
            for c in r["cases"]:
                gname = json.dumps(c["case"]["graph"], sort_keys=True)
                for ch in c["checks"]:
                    w.writerow([r["suite"], gname, c["case"]["sigma"], ch["name"], ch["expected"],
                                ch["actual"], ch["pass"]])
    elif isinstance(payload, dict) and "vertices" in payload and "dimension" in payload:
        for row in payload["vertices"]:
            w.writerow(row)
    elif isinstance(payload, dict):
        w.writerow(["key", "value"])
        for k, v in payload.items():
            w.writerow([k, v if not isinstance(v, (list, dict)) else json.dumps(v)])
    elif payload and isinstance(payload[0], dict):
        keys = list(payload[0])
        w.writerow(keys)
        for item in payload:
            w.writerow([item[k] for k in keys])
    else:
        w.writerows(payload)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--graph", metavar="FILE", help="edge list or JSON graph file")
    src.add_argument("--complete", type=int, metavar="N", help="use the complete graph K_N")
    common.add_argument("--perm", metavar="STR", help='permutation in cycle notation, e.g. "(1 2)(3 4)"')
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="sepvol", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("vertices", parents=[common], help="vertices of SEP(G)")
    sub.add_parser("fixed", parents=[common], help="fixed polytope under --perm")
    sub.add_parser("hull", parents=[common], help="H- and V-description as JSON")
    p = sub.add_parser("rvol", parents=[common], help="relative volume")
    p.add_argument("--method", choices=("formula", "hull", "ehrhart", "all"), default="all")
    p = sub.add_parser("ehrhart", parents=[common], help="lattice-point counts of dilates")
    p.add_argument("-t", type=int, action="append", help="dilation factor (repeatable)")
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=SUITES + ("all",), default="thm-sub-vol")
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--families", help="comma-separated subset of " + ",".join(FAMILIES))
    p.add_argument("--random-count", type=int, default=20)
    return parser


COMMANDS = {
    "vertices": cmd_vertices,
    "fixed": cmd_fixed,
    "hull": cmd_hull,
    "rvol": cmd_rvol,
    "ehrhart": cmd_ehrhart,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        payload, code = COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except EdgelessGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (TheoremViolation, InterpolationError) as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_DISAGREE

    if args.format == "csv":
        text = _to_csv(payload)
    else:
        text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
