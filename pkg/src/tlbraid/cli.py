"""Command-line front end: ``tlbraid run | verify | ghz | connect``.

Exit codes: 0 success, 1 parse/semantic error or failed verification,
2 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import linalg
from .connector import admissible_components, connect, connector_report
from .dsl import execute_program, parse_program, render_state
from .errors import BraidError, DslRuntimeError, DslSemanticError, DslSyntaxError
from .linalg import check_property, matrix_from_dict
from .register import QuditRegisterState, parse_digits
from .states import generate_ghz
from .verify import verification_sweep


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _signs(text: str | None):
    if text is None:
        return None
    if not text or any(c not in "+-" for c in text):
        raise argparse.ArgumentTypeError(f"signs must be a string of '+' and '-', got {text!r}")
    return [1 if c == "+" else -1 for c in text]


def cmd_run(args) -> int:
    path = Path(args.file)
    try:
        source = path.read_bytes()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        prog = parse_program(source)
    except (DslSyntaxError, DslSemanticError) as exc:
        kind = "syntax error" if isinstance(exc, DslSyntaxError) else "semantic error"
        print(f"{path}:{exc.line}:{exc.col}: {kind}: {exc.message}", file=sys.stderr)
        return 1
    try:
        result = execute_program(prog, base_dir=path.parent)
    except DslRuntimeError as exc:
        print(f"{path}:{exc.line}: runtime error: {exc.message}", file=sys.stderr)
        return 2
    for art in result.dumps:
        if art.path is None:
            sys.stdout.write(art.text)
    if args.report:
        print(_dump(result.report()), file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    if args.matrix:
        with open(args.matrix, encoding="utf-8") as fh:
            m = matrix_from_dict(json.load(fh))
        rep = check_property(m, args.property, args.tol)
        print(_dump({"property": rep.property, "passed": rep.passed,
                     "residual": rep.residual, "frobenius": rep.frobenius}))
        return 0 if rep.passed else 1
    if args.D is None or args.n is None:
        raise BraidError("verify needs --D and --n (or --matrix)")
    report = verification_sweep(args.D, args.n, args.trials, args.seed, args.tol, args.dense_limit)
    print(_dump(report))
    return 0 if report["passed"] else 1


def cmd_ghz(args) -> int:
    state = generate_ghz(args.D, args.n, args.l, args.k, _signs(args.bsigns), args.q)
    sys.stdout.write(render_state(state, args.format))
    return 0


def cmd_connect(args) -> int:
    with open(args.state, encoding="utf-8") as fh:
        psi = QuditRegisterState.from_dict(json.load(fh))
    if args.list:
        rows = [{"digits": list(r["digits"]), "alpha2": r["alpha2"]} for r in admissible_components(psi)]
        print(_dump({"admissible": rows}))
        return 0
    if args.component is None:
        raise BraidError("connect needs --component (or --list)")
    gate = connect(psi, parse_digits(args.component, psi.D, psi.n))
    print(_dump(connector_report(gate)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tlbraid", description=__doc__.splitlines()[0])
    p.add_argument("--tol", type=float, default=1e-9, help="residual tolerance for checks")
    p.add_argument("--dense-limit", type=int, default=linalg.DENSE_LIMIT,
                   help="largest D**n for dense matrices")
    p.add_argument("--format", choices=("json", "csv"), default="json", help="state output format")
    p.add_argument("--seed", type=int, default=0, help="root seed for randomized sweeps")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="parse and execute a .braid program")
    r.add_argument("file")
    r.add_argument("--report", action="store_true", help="print the per-step norm report to stderr")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="randomized identity sweep, or a property check of one matrix")
    v.add_argument("--D", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--matrix", help="matrix JSON file {rows, cols, entries}")
    v.add_argument("--property", choices=linalg.PROPERTIES, default="unitary")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("ghz", help="generate a generalized GHZ state")
    g.add_argument("--D", type=int, required=True)
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--l", type=int, required=True)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--q", type=int, default=0, help="pivot level")
    g.add_argument("--bsigns", help="signs of b_1..b_l, e.g. '+-+'")
    g.set_defaults(func=cmd_ghz)

    c = sub.add_parser("connect", help="connector gate from a basis component to a state")
    c.add_argument("--state", required=True, help="state JSON file")
    c.add_argument("--component", help="basis digits, e.g. 00 or 1,12,3")
    c.add_argument("--list", action="store_true", help="list components with |alpha|^2 >= 1/4")
    c.set_defaults(func=cmd_connect)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol <= 0:
        parser.error("--tol must be positive")
    try:
        return args.func(args)
    except (BraidError, argparse.ArgumentTypeError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
