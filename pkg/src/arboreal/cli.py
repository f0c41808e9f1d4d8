"""Command line front end: ``arboreal <subcommand> [flags]``.

Every report embeds a manifest (subcommand, parsed flags, argv, version).  Wall
time goes to stderr so that identical inputs give byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable, Sequence

from . import __version__
from .bounds import CSV_HEADER, radical_sweep
from .curves_verify import SCOPE_NOTE, alpha_consistency, parse_point, verify_all
from .dynamics import adjusted_orbit, classify_pcf, critical_orbit, is_pcf, parse_map
from .groups import BudgetExceeded
from .kummer import FactorBudgetExceeded, UnsupportedRing, onedim_certificate
from .numberfield import FieldMismatch, enumerate_height_bounded, northcott_count
from .poly import ParseError, parse_number
from .tree_group import TreeShape, run_oracles

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# printed representatives behind the alpha values of the x^2 + i case analysis
APPENDIX_ALPHA_POINTS = [
    ("A", "(1-i, 0)"),
    ("B", "(i, 0)"),
    ("C", "(0, 0)"),
    ("C", "((3+i)/8, (7+9i)/8)"),
    ("D", "(0, 1-i)"),
    ("D(i)", "(0, i)"),
    ("D(i)", "((1+i)/2, 1+i)"),
    ("D(ii)", "((7i-5)/8, (2-i)/2)"),
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _shape(text: str) -> tuple[int, ...]:
    try:
        degrees = tuple(int(t) for t in text.replace("(", "").replace(")", "").split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad shape {text!r}") from exc
    if not degrees or min(degrees) < 2:
        raise argparse.ArgumentTypeError("shape entries must be integers >= 2")
    return degrees


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arboreal", description="Exact checks for unicritical arboreal Galois groups.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, fmt="json"):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("json", "csv", "table"), default=fmt)
        return p

    p = add("orbit", "critical orbit, or the adjusted orbit when --alpha is given")
    p.add_argument("--map", required=True)
    p.add_argument("--alpha")
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int, default=8)

    p = add("pcf", "decide whether a monic map is post-critically finite")
    p.add_argument("--map", required=True)

    p = add("atlas", "classify every candidate parameter c for x^d + c", fmt="csv")
    p.add_argument("--dmax", type=int, default=12)
    p.add_argument("--jobs", type=int, default=1)

    p = add("onedim", "Kummer certificate for the adjusted orbit")
    p.add_argument("--map", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=6)

    p = add("tree-check", "exhaustive group-theoretic oracles on a finite tree")
    p.add_argument("--shape", type=_shape, required=True, help="comma-separated degrees, e.g. 2,2,2")
    p.add_argument("--level", type=int, help="truncate the shape to this many levels")
    p.add_argument("--p", type=int, help="prime for the prime-variant group")

    p = add("bounds-sweep", "certified radical bound table", fmt="csv")
    p.add_argument("--kmax", type=int, default=1000)

    p = add("verify-appendix", "check every fixture point list")
    p.add_argument("--fixtures")

    add("enumerate-s", "the height-bounded set of integers used for the PCF search")
    return parser


def _manifest(args: argparse.Namespace, argv: Sequence[str]) -> dict:
    flags = {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(vars(args).items()) if k != "command"}
    return {"subcommand": args.command, "flags": flags, "argv": list(argv), "version": __version__}


def _emit(manifest: dict, fmt: str, data: dict, csv_lines: list[str] | None = None, table: list[str] | None = None):
    if fmt == "json" or (fmt == "csv" and csv_lines is None) or (fmt == "table" and table is None):
        print(json.dumps({"manifest": manifest, **data}, indent=1))
    elif fmt == "csv":
        print("# manifest: " + json.dumps(manifest, sort_keys=True))
        print("\n".join(csv_lines))
    else:
        print("# manifest: " + json.dumps(manifest, sort_keys=True))
        print("\n".join(table))


def cmd_orbit(args, manifest) -> int:
    f = parse_map(args.map)
    if args.alpha is None:
        rep = critical_orbit(f, args.n)
    else:
        rep = adjusted_orbit(f, parse_number(args.alpha), args.n, args.p)
    table = [f"{k + rep.first_index:>3}  {x}" for k, x in enumerate(rep.entries)]
    _emit(manifest, args.format, {"map": str(f), "orbit": rep.to_json()}, table=table)
    return EXIT_OK


def cmd_pcf(args, manifest) -> int:
    v = is_pcf(parse_map(args.map))
    _emit(manifest, args.format, v.to_json(), table=[f"pcf: {str(v.pcf).lower()}"])
    return EXIT_OK


def cmd_atlas(args, manifest) -> int:
    if args.dmax < 2:
        raise UsageError("--dmax must be at least 2")
    rows = classify_pcf(args.dmax, jobs=args.jobs)
    lines = ["D,c,d,pcf,witness"] + [r.csv() for r in rows]
    data = {"rows": [dict(zip(("D", "c", "d", "pcf", "witness"), r.csv().split(",", 4))) for r in rows]}
    table = [r.csv() for r in rows if r.pcf]
    _emit(manifest, args.format, data, csv_lines=lines, table=table)
    return EXIT_OK


def cmd_onedim(args, manifest) -> int:
    cert = onedim_certificate(parse_map(args.map), parse_number(args.alpha), args.p, args.n)
    _emit(manifest, args.format, {"certificate": cert.to_json()}, table=[cert.kind])
    return EXIT_OK


def cmd_tree_check(args, manifest) -> int:
    degrees = args.shape
    if args.level is not None:
        if not 1 <= args.level <= len(degrees):
            raise UsageError(f"--level must be between 1 and {len(degrees)}")
        degrees = degrees[: args.level]
    rep = run_oracles(TreeShape(degrees, args.p))
    _emit(manifest, args.format, {"report": rep.to_json(), "ok": rep.ok}, table=[f"{degrees}: {'pass' if rep.ok else 'FAIL'}"])
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_bounds(args, manifest) -> int:
    if args.kmax < 2:
        raise UsageError("--kmax must be at least 2")
    rows = radical_sweep(args.kmax)
    true_ks = [r.k for r in rows if r.verdict]
    data = {"rows": [r.to_json() for r in rows], "max_true_k": max(true_ks) if true_ks else None}
    _emit(manifest, args.format, data, csv_lines=[CSV_HEADER] + [r.csv() for r in rows])
    return EXIT_OK


def cmd_verify_appendix(args, manifest) -> int:
    reports = verify_all(args.fixtures)
    derivations = []
    if args.fixtures is None:
        derivations = [alpha_consistency(case, parse_point(pt)) for case, pt in APPENDIX_ALPHA_POINTS]
    ok = all(r.ok for r in reports) and all(d.ok for d in derivations)
    data = {
        "scope": SCOPE_NOTE,
        "ok": ok,
        "curves": [r.to_json() for r in reports],
        "alpha_derivations": [d.to_json() for d in derivations],
    }
    table = [f"# {SCOPE_NOTE}"] + [r.table_row() for r in reports]
    table += [f"case {d.case:<6} alpha = {d.alpha}  {'pass' if d.ok else 'FAIL'}" for d in derivations]
    _emit(manifest, args.format, data, table=table)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_enumerate_s(args, manifest) -> int:
    S = enumerate_height_bounded()
    data = {"representatives": [str(x) for x in S], "count_with_conjugates": northcott_count()}
    _emit(manifest, args.format, data, csv_lines=[str(x) for x in S], table=[str(x) for x in S])
    return EXIT_OK


COMMANDS: dict[str, Callable] = {
    "orbit": cmd_orbit,
    "pcf": cmd_pcf,
    "atlas": cmd_atlas,
    "onedim": cmd_onedim,
    "tree-check": cmd_tree_check,
    "bounds-sweep": cmd_bounds,
    "verify-appendix": cmd_verify_appendix,
    "enumerate-s": cmd_enumerate_s,
}


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        code = COMMANDS[args.command](args, _manifest(args, argv))
    except (UsageError, ParseError, FieldMismatch, UnsupportedRing) as exc:
        print(f"arboreal: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # precondition violations on otherwise well-formed input
        print(f"arboreal: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, FactorBudgetExceeded) as exc:
        # the requested check was not carried out, so it cannot count as a pass
        print(f"arboreal: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"wall time: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
