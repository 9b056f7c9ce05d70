"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 bad input, 3 precondition
(no growing letters), 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracle
from .errors import BudgetExceeded, InternalInvariantError, PreconditionError, SubstitutionError
from .report import GRAPH_KINDS, build_report, render_census2, render_dot, render_text, run_census2, to_json
from .substitution import load, parse
from .words import as_word

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3, 4


def _read_substitution(source: str):
    path = Path(source)
    if path.exists():
        return load(path)
    if "->" in source or "↦" in source or source.lstrip().startswith("{"):
        return parse(source)
    raise SubstitutionError(f"no such file and not inline rules: {source!r}")


def _emit(text: str, out: str = None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    sub = _read_substitution(args.input)
    report = build_report(sub)
    if args.format == "json":
        _emit(to_json(report), args.output)
    elif args.format == "dot":
        _emit(render_dot(sub, report, args.graph), args.output)
    else:
        _emit(render_text(report), args.output)
    return EXIT_OK


def cmd_graphs(args) -> int:
    sub = _read_substitution(args.input)
    _emit(render_dot(sub, build_report(sub), args.which), args.output)
    return EXIT_OK


def cmd_census2(args) -> int:
    table = run_census2(args.max_image_len)
    if args.format == "json":
        _emit(json.dumps(table, indent=2) + "\n", args.output)
    else:
        _emit(render_census2(table), args.output)
    return EXIT_FAILED if table["mismatches"] else EXIT_OK


def _claims_from_report(report: dict):
    comps = report.get("components", {})
    tame = [oracle.ClaimedTame(frozenset(t["alphabet"]), int(t["power"]), frozenset(t["growing"]))
            for t in comps.get("tame", [])]
    wild = [oracle.ClaimedWild(as_word(w["word"])) for w in comps.get("wild", [])]
    return tame, wild


def cmd_verify(args) -> int:
    if args.report:
        try:
            report = json.loads(Path(args.report).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise SubstitutionError(f"cannot read report: {exc}") from exc
        sub = parse(report["substitution"]) if args.input is None else _read_substitution(args.input)
        claims = _claims_from_report(report)
    else:
        if args.input is None:
            raise SubstitutionError("an input substitution or --report is required")
        sub = _read_substitution(args.input)
        claims = _claims_from_report(build_report(sub))
    longest = max((len(w.word) for w in claims[1]), default=1)
    max_len = args.max_len if args.max_len is not None else max(8, 2 * longest)
    try:
        sample = oracle.sample_language(sub, args.depth, max_len, budget=args.budget)
    except BudgetExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAILED
    verdicts = oracle.verify_component_language(sub, claims, sample)
    for v in verdicts:
        status = "pass" if v.ok else "FAIL"
        detail = f"  ({'; '.join(v.failures)})" if v.failures else ""
        sys.stdout.write(f"{status} {v.kind} {v.label}{detail}\n")
    failed = sum(not v.ok for v in verdicts)
    sys.stdout.write(f"{len(verdicts) - failed}/{len(verdicts)} components verified "
                     f"at depth {args.depth}, factor length {max_len}\n")
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mincomp", description="Minimal components of substitution subshifts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify letters and list the minimal components")
    p.add_argument("input", help="rules file (.sub or .json) or inline rules such as '0 -> 01; 1 -> 0'")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--graph", choices=GRAPH_KINDS, default="gt", help="graph drawn by --format dot")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graphs", help="write one of the graphs as DOT")
    p.add_argument("input")
    p.add_argument("which", choices=GRAPH_KINDS)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_graphs)

    p = sub.add_parser("census2", help="check every two-letter substitution against the case table")
    p.add_argument("--max-image-len", type=int, default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_census2)

    p = sub.add_parser("verify", help="check the components against brute-force language samples")
    p.add_argument("input", nargs="?")
    p.add_argument("--report", help="JSON report whose components are checked instead of recomputed ones")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--max-len", type=int, default=None, help="factor length cap (default: max(8, twice the longest period))")
    p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SubstitutionError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except PreconditionError as exc:
        sys.stderr.write(f"precondition failed: {exc}\n")
        return EXIT_PRECONDITION
    except InternalInvariantError as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
