"""Command-line front end.

Exit codes: 0 success, 1 the input is not an identity / a precondition
fails, 2 parse, type or other input error, 3 a theorem was contradicted
(always an implementation bug).  Results go to stdout as JSON, diagnostics
to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .decompose import (
    adjugate_solve,
    fi_decompose,
    fi_verify,
    l2_reduce,
    standard_form,
)
from .errors import FIError, InputError, PreconditionFailed, TheoremViolation
from .expr import elaborate_text
from .fuzz import SUITES, FuzzConfig, run_fuzz
from .identities import load_identity
from .oracle import fi_decompose_oracle
from .polymat import faddeev_leverrier
from .tracemaps import ScalarPoly, TraceMap

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2, 3


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _diag(kind: str, message: str) -> None:
    color = sys.stderr.isatty() and "NO_COLOR" not in os.environ
    label = f"\x1b[1;31m{kind}:\x1b[0m" if color else f"{kind}:"
    print(f"{label} {message}", file=sys.stderr)


def _trace_map(text: str, n: int) -> TraceMap:
    value = elaborate_text(text, n)
    return value.as_map() if isinstance(value, ScalarPoly) else value


def cmd_charpoly(args) -> int:
    data = faddeev_leverrier(_trace_map(args.expr, args.n).body)
    _emit(data.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = load_identity(args.file, args.n)
    value = fi_verify(spec.trace_maps())
    _emit({"n": spec.n, "m": spec.m, "central": value is not None,
           "value": None if value is None else value.to_json(),
           "value_text": None if value is None else str(value)})
    if value is None:
        _diag("not an identity", "sum x^i q_i(x) x^(m-i) is not central")
        return EXIT_FAILED
    return EXIT_OK


def cmd_standard_form(args) -> int:
    _emit(standard_form(_trace_map(args.expr, args.n)).to_json())
    return EXIT_OK


def cmd_l2(args) -> int:
    p = l2_reduce(_trace_map(args.q, args.n), _trace_map(args.r, args.n), debug=args.debug)
    _emit({"p": p.to_json(), "verified": True})
    return EXIT_OK


def cmd_adjugate_solve(args) -> int:
    lam = adjugate_solve(_trace_map(args.expr, args.n), args.m)
    _emit({"m": args.m, "zero": lam is None, "lambda": None if lam is None else lam.to_json()})
    return EXIT_OK


def cmd_decompose(args) -> int:
    spec = load_identity(args.file, args.n)
    q_list = spec.trace_maps()
    dec = fi_decompose(q_list, debug=args.debug)
    out = {"decomposition": dec.to_json()}
    if not args.no_oracle:
        oracle = fi_decompose_oracle(q_list)
        if oracle.lam != dec.lam:
            raise TheoremViolation("oracle and constructive decomposition disagree on lambda",
                                   constructive=dec, oracle=oracle)
        out["oracle"] = oracle.to_json()
        out["lambda_agrees"] = True
    _emit(out)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    cfg = FuzzConfig(seed=args.seed, cases=args.cases, n=args.n, d=args.d, m=args.m)
    report = run_fuzz(cfg, suites, workers=args.workers)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    summary = report["summary"]
    if summary["violation"]:
        _diag("theorem violation", f"{summary['violation']} case(s); see report")
        return EXIT_VIOLATION
    if summary["fail"] or summary["error"]:
        _diag("fuzz", f"{summary['fail']} failed, {summary['error']} errored")
        return EXIT_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fidentity",
        description="Exact decomposition of one-variable functional identities on M_n(Q).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("charpoly", cmd_charpoly, "characteristic polynomial, adjugate, determinant")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--expr", default="x", help="matrix expression (default: x)")

    p = add("verify", cmd_verify, "check that sum x^i q_i x^(m-i) is central")
    p.add_argument("--n", type=int)
    p.add_argument("--file", required=True)

    p = add("standard-form", cmd_standard_form, "standard form of a commuting map")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--expr", required=True)

    p = add("l2", cmd_l2, "reduce [q(x)x - x r(x), x] = 0 to an Engel condition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--debug", action="store_true", help="also assert intermediate congruences")

    p = add("adjugate-solve", cmd_adjugate_solve, "solve x^m q(x) in k for lambda")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--expr", required=True)

    p = add("decompose", cmd_decompose, "decompose a functional identity")
    p.add_argument("--n", type=int)
    p.add_argument("--file", required=True)
    p.add_argument("--no-oracle", action="store_true", help="skip the linear-algebra cross-check")
    p.add_argument("--debug", action="store_true")

    p = add("fuzz", cmd_fuzz, "seeded randomized property checks with a JSON report")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cases", type=int, default=5)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--suite", choices=["all", *SUITES], default="all")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", help="write the report here instead of stdout")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TheoremViolation as exc:
        _diag("theorem violation", str(exc))
        return EXIT_VIOLATION
    except PreconditionFailed as exc:
        _diag(type(exc).__name__, str(exc))
        return EXIT_FAILED
    except (InputError, FIError) as exc:
        _diag(type(exc).__name__, str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
