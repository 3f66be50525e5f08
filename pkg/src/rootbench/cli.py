"""``rootbench`` command line: list the corpus, solve one cell, or run a suite.

Exit codes: 0 on success (non-converged runs included), 1 on usage errors,
2 for an unknown function or method.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .bench import (
    FORMATS,
    DEFAULT_METHODS,
    SuiteReport,
    dump_trace,
    render_report,
    report_row,
    run_suite,
)
from .corpus import TABLES, list_functions, lookup
from .errors import RootbenchError, UnknownFunction, UnknownMethod
from .solver import Method, SolverConfig

EXIT_USAGE = 1
EXIT_UNKNOWN = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _methods(text: str) -> list[Method]:
    return [Method.parse(name) for name in text.split(",") if name.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rootbench", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_list = sub.add_parser("list", help="show the function corpus")
    p_list.add_argument("--table", choices=TABLES)
    p_list.add_argument("--format", choices=("table", "json"), default="table")

    def solver_flags(p):
        p.add_argument("--tol", type=float, default=SolverConfig.tol)
        p.add_argument("--max-iter", type=int, default=SolverConfig.max_iter)
        p.add_argument("--format", choices=FORMATS, default="table")

    p_solve = sub.add_parser("solve", help="run one function/method/start cell")
    p_solve.add_argument("--function", required=True)
    p_solve.add_argument("--method", required=True)
    p_solve.add_argument("--start", required=True, type=_floats, help="v1[,v2[,v3]]")
    p_solve.add_argument("--seed-third", action="store_true",
                         help="derive the third start from the first two by a secant step")
    p_solve.add_argument("--trace", type=Path, help="write the k,x,y trace CSV here")
    solver_flags(p_solve)

    p_suite = sub.add_parser("suite", help="run a whole table")
    p_suite.add_argument("--table", choices=("1", "2", "all"), default="all")
    p_suite.add_argument("--methods", default=",".join(m.value for m in DEFAULT_METHODS))
    p_suite.add_argument("--out", type=Path)
    solver_flags(p_suite)
    return parser


def _config(args) -> SolverConfig:
    try:
        return SolverConfig(tol=args.tol, max_iter=args.max_iter)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(data: bytes, out: Optional[Path] = None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        out.write_bytes(data)


def _cmd_list(args) -> int:
    functions = list_functions(args.table)
    if args.format == "json":
        _emit((json.dumps([fn.to_json() for fn in functions], indent=2) + "\n").encode())
        return 0
    width = max(len(fn.id) for fn in functions)
    for fn in functions:
        starts = "; ".join(",".join(repr(v) for v in s.starts) for s in fn.start_sets)
        roots = ", ".join(repr(r) for r in fn.roots)
        print(f"{fn.id.ljust(width)}  table {fn.table:<3}  {fn.expression}  roots [{roots}]  starts [{starts}]")
    return 0


def _cmd_solve(args) -> int:
    config = _config(args)
    method = Method.parse(args.method)
    fn = lookup(args.function)
    if args.seed_third:
        if method.arity != 3:
            raise UsageError("--seed-third applies to three-point and muller only")
        if len(args.start) != 2:
            raise UsageError("--seed-third needs exactly two --start values")
    elif len(args.start) < method.arity:
        raise UsageError(f"{method.value} needs {method.arity} start value(s)")

    row = report_row(fn.id, method, args.start, config, seed_third=args.seed_third)
    if args.trace:
        dump_trace(fn.id, method, args.start, config, args.trace, seed_third=args.seed_third)
    _emit(render_report(SuiteReport(rows=(row,), config=config), args.format))
    return 0


def _cmd_suite(args) -> int:
    config = _config(args)
    methods = _methods(args.methods)
    if not methods:
        raise UsageError("--methods must name at least one method")
    report = run_suite(args.table, methods, config)
    _emit(render_report(report, args.format), args.out)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"list": _cmd_list, "solve": _cmd_solve, "suite": _cmd_suite}
    try:
        return handlers[args.command](args)
    except (UnknownFunction, UnknownMethod) as exc:
        print(f"rootbench: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (UsageError, RootbenchError) as exc:
        print(f"rootbench: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"rootbench: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
