"""Command-line front end.

    slnhom polynomial "B2: 1 1 1" --n 2
    slnhom homology "B2: 1 1 1" --n 2 [--format table]
    slnhom verify d2 --max-crossings 3 --n 2 [--workers 4]

Exit codes: 0 ok, 2 usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .diagram import BraidParseError, parse_braid
from .homology import DSquaredError
from .statesum import braid_bracket

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 2, 3
DEFAULT_BUDGET = 8
DEFAULT_VERIFY_CROSSINGS = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="slnhom", description="sl(n) braid-closure polynomials and link homology")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    poly = sub.add_parser("polynomial", help="print the sl(n) polynomial of a braid closure")
    poly.add_argument("braid", help='braid word, e.g. "B3: 1 -2 1"')
    poly.add_argument("--n", type=_positive_int, default=2)

    hom = sub.add_parser("homology", help="print the bigraded integer homology as JSON")
    hom.add_argument("braid")
    hom.add_argument("--n", type=_positive_int, default=2)
    hom.add_argument("--max-crossings", type=_nonneg_int, default=DEFAULT_BUDGET,
                     help=f"refuse diagrams with more crossings (default {DEFAULT_BUDGET})")
    hom.add_argument("--format", choices=("json", "table"), default="json")

    ver = sub.add_parser("verify", help="run a verification suite over the braid corpus")
    ver.add_argument("suite", help="d2, euler, moy, markov, duality or all")
    ver.add_argument("--n", type=_positive_int, default=2)
    ver.add_argument("--max-crossings", type=_nonneg_int, default=DEFAULT_VERIFY_CROSSINGS,
                     help=f"corpus crossing bound (default {DEFAULT_VERIFY_CROSSINGS})")
    ver.add_argument("--max-strands", type=_positive_int, default=3)
    ver.add_argument("--workers", type=_positive_int, default=1)
    ver.add_argument("--format", choices=("json", "table"), default="json")
    ver.add_argument("--strict", action="store_true",
                     help="treat expected-open results as failures too")
    return p


def _parse_or_exit(text: str):
    try:
        return parse_braid(text)
    except BraidParseError as exc:
        print(f"slnhom: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def cmd_polynomial(args) -> int:
    b = _parse_or_exit(args.braid)
    print(braid_bracket(b, args.n))
    return EXIT_OK


def _homology_table(H) -> str:
    rows = sorted(H.groups.items())
    lines = [f"{'i':>4} {'j':>5}  {'rank':>4}  torsion"]
    for (i, j), (r, tors) in rows:
        t = " ".join(f"Z/{f}" for f in tors) or "-"
        lines.append(f"{i:>4} {j:>5}  {r:>4}  {t}")
    return "\n".join(lines)


def cmd_homology(args) -> int:
    from .verify import analyze

    b = _parse_or_exit(args.braid)
    if len(b) > args.max_crossings:
        print(
            f"slnhom: {len(b)} crossings exceed the budget of {args.max_crossings}; "
            "raise it with --max-crossings",
            file=sys.stderr,
        )
        return EXIT_USAGE
    A = analyze(b, args.n)
    if A.homology is None:
        witness = {"failing_face": A.failing_faces[0]} if A.failing_faces else {}
        if A.d_squared is not None:
            witness["d_squared"] = {"degree": A.d_squared[0], "index": A.d_squared[1]}
        print("slnhom: d^2 != 0 for this diagram; witness:", file=sys.stderr)
        print(json.dumps(witness, sort_keys=True), file=sys.stderr)
        return EXIT_FAILED
    if args.format == "table":
        print(_homology_table(A.homology))
    else:
        print(A.homology.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import FAIL, OPEN, SUITES, run_suite, summarize

    if args.suite not in SUITES:
        print(f"slnhom: unknown suite {args.suite!r}; choose from {', '.join(SUITES)}",
              file=sys.stderr)
        return EXIT_USAGE
    results = run_suite(args.suite, args.n, args.max_crossings, args.max_strands, args.workers)
    if args.format == "json":
        for r in results:
            print(r.to_json())
    else:
        for check, counts in summarize(results).items():
            print(f"{check:<18} " + "  ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    bad = (FAIL, OPEN) if args.strict else (FAIL,)
    return EXIT_FAILED if any(r.status in bad for r in results) else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"polynomial": cmd_polynomial, "homology": cmd_homology, "verify": cmd_verify}
    try:
        return handler[args.command](args)
    except DSquaredError as exc:
        print(f"slnhom: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except BrokenPipeError:
        return EXIT_OK


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
