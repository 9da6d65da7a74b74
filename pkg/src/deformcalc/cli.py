"""Command-line front end.

::

    deformcalc eval --expr "qexp(0, x)" --bind x=3
    deformcalc diff --kind cd --alpha 0.5 --expr "x^2" --symbolic
    deformcalc integrate --kind cd --alpha 0.5 --expr 1 --from 0 --to 4
    deformcalc solve dcd-eigen --alpha 0.5 --lambda 1 --x-end 3
    deformcalc verify --seed 42 --samples 128

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 solver event (the partial result is still written).
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import operators, symbolic
from .errors import DeformCalcError
from .report import dumps_json
from .solvers import OscillatorConfig, solve_cd_eigen, solve_dcd_eigen, solve_oscillator
from .verifier import MIN_SAMPLES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EVENT = 0, 1, 2, 3


class _Output:
    def __init__(self, args):
        self.format = args.format
        self.precision = args.precision
        self.path = args.out

    def num(self, v: float) -> str:
        return format(float(v), f".{self.precision}g")

    def write(self, text: str):
        if not text.endswith("\n"):
            text += "\n"
        if self.path:
            with open(self.path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    def scalar(self, key: str, value):
        if self.format == "json":
            self.write(dumps_json({key: value}, self.precision))
        elif isinstance(value, str):
            self.write(value)
        else:
            self.write(self.num(value))

    def table(self, columns: dict, event=None):
        if self.format == "json":
            data = {k: [float(v) for v in col] for k, col in columns.items()}
            data["event"] = event.to_dict() if event is not None else None
            self.write(dumps_json(data, self.precision))
            return
        names = list(columns)
        lines = [",".join(names)]
        for row in zip(*columns.values()):
            lines.append(",".join(self.num(v) for v in row))
        if event is not None:
            est = "" if event.estimate is None else self.num(event.estimate)
            lines.append(f"# event,{event.kind},{self.num(event.at)},{est}")
        self.write("\n".join(lines))


def _precision(text: str) -> int:
    p = int(text)
    if not 6 <= p <= 17:
        raise argparse.ArgumentTypeError("precision must lie in [6, 17]")
    return p


def _binding(text: str):
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    return name.strip(), float(value)


def _samples(text: str) -> int:
    n = int(text)
    if n < MIN_SAMPLES:
        raise argparse.ArgumentTypeError(f"samples must be >= {MIN_SAMPLES}")
    return n


def _output_flags(parser: argparse.ArgumentParser, default) -> None:
    def d(value):
        return argparse.SUPPRESS if default is argparse.SUPPRESS else value

    parser.add_argument("--out", metavar="PATH", default=d(None), help="write output here instead of stdout")
    parser.add_argument("--format", choices=("csv", "json"), default=d(None))
    parser.add_argument("--precision", type=_precision, default=d(17), metavar="N",
                        help="significant digits, 6..17 (default 17)")


def build_parser() -> argparse.ArgumentParser:
    # output flags are accepted before or after the subcommand; the copies on
    # the subcommands only override the global value when actually given
    common = argparse.ArgumentParser(add_help=False)
    _output_flags(common, argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="deformcalc", description="Conformable and dual conformable calculus.")
    _output_flags(parser, None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--bind", type=_binding, action="append", default=[], metavar="NAME=VALUE")

    p = sub.add_parser("diff", parents=[common], help="differentiate an expression")
    p.add_argument("--kind", choices=("classic", "cd", "dcd", "chen"), required=True)
    p.add_argument("--alpha", type=float, help="deformation order (symbolic 'alpha' if omitted)")
    p.add_argument("--expr", required=True)
    p.add_argument("--var", default="x")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--symbolic", dest="mode", action="store_const", const="symbolic")
    mode.add_argument("--numeric", dest="mode", action="store_const", const="numeric")
    p.add_argument("--at", type=float)
    p.set_defaults(mode="symbolic")

    p = sub.add_parser("integrate", parents=[common], help="deformed integrals")
    p.add_argument("--kind", choices=("cd", "dcd-paper", "dcd-strict"), required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--var", default="x")
    p.add_argument("--from", dest="lo", type=float, required=True)
    p.add_argument("--to", dest="hi", type=float, required=True)
    p.add_argument("--H0", dest="H0", type=float, default=1.0,
                   help="dcd-strict: value of the antiderivative at --from (default 1)")

    p = sub.add_parser("solve", help="integrate an eigen problem or the oscillator")
    problems = p.add_subparsers(dest="problem", required=True)
    q = problems.add_parser("cd-eigen", parents=[common])
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--lambda", dest="lam", type=float, default=1.0)
    q.add_argument("--x0", type=float, default=0.1)
    q.add_argument("--y0", type=float, default=1.0)
    q.add_argument("--x-end", type=float, required=True)
    q.add_argument("--steps", type=int, default=256)
    q = problems.add_parser("dcd-eigen", parents=[common])
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--lambda", dest="lam", type=float, default=1.0)
    q.add_argument("--F0", dest="F0", type=float, default=1.0)
    q.add_argument("--x-end", type=float, required=True)
    q.add_argument("--steps", type=int, default=256)
    q = problems.add_parser("oscillator", parents=[common])
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--omega", type=float, required=True)
    q.add_argument("--x0", type=float, required=True)
    q.add_argument("--v0", type=float, default=0.0)
    q.add_argument("--t-end", type=float, required=True)
    q.add_argument("--steps", type=int, default=1024)

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=_samples, default=128)
    p.add_argument("--filter", dest="select", metavar="TEXT", help="only checks whose name contains TEXT")
    p.add_argument("--tol", type=_binding, action="append", default=[], metavar="NAME=VALUE")
    return parser


def _cmd_eval(args, out: _Output) -> int:
    e = symbolic.parse(args.expr)
    out.scalar("value", symbolic.evaluate(e, dict(args.bind)))
    return EXIT_OK


def _cmd_diff(args, out: _Output) -> int:
    e = symbolic.parse(args.expr)
    if args.mode == "symbolic":
        if args.kind == "classic":
            r = symbolic.derivative(e, args.var)
        else:
            fn = {"cd": symbolic.cd_symbolic, "dcd": symbolic.dcd_symbolic, "chen": symbolic.chen_symbolic}
            r = fn[args.kind](e, args.var, args.alpha)
        out.scalar("expression", symbolic.to_text(r))
        return EXIT_OK
    if args.at is None:
        raise _Usage("--numeric needs --at")
    if args.kind == "classic":
        out.scalar("value", operators.numeric_derivative(operators.as_function(e, args.var), args.at))
        return EXIT_OK
    if args.alpha is None:
        raise _Usage("--numeric needs --alpha")
    e = symbolic.substitute(e, {"alpha": args.alpha})
    op = {"cd": operators.cd, "dcd": operators.dcd, "chen": operators.chen}[args.kind]
    out.scalar("value", op(operators.as_function(e, args.var), args.alpha, args.at))
    return EXIT_OK


def _cmd_integrate(args, out: _Output) -> int:
    e = symbolic.substitute(symbolic.parse(args.expr), {"alpha": args.alpha})
    f = operators.as_function(e, args.var)
    if args.kind == "cd":
        v = operators.cd_integral(f, args.alpha, args.lo, args.hi)
    elif args.kind == "dcd-paper":
        v = operators.dcd_integral_paper(f, args.alpha, args.lo, args.hi)
    else:
        v = operators.dcd_antiderivative_strict(f, args.alpha, args.lo, args.H0, args.hi)
    out.scalar("value", v)
    return EXIT_OK


def _cmd_solve(args, out: _Output) -> int:
    if args.problem == "cd-eigen":
        g = solve_cd_eigen(args.alpha, args.lam, args.x0, args.y0, args.x_end, args.steps)
        out.table({"x": g.nodes, "value": g.values}, g.event)
        event = g.event
    elif args.problem == "dcd-eigen":
        g = solve_dcd_eigen(args.alpha, args.lam, args.F0, args.x_end, args.steps)
        out.table({"x": g.nodes, "value": g.values}, g.event)
        event = g.event
    else:
        cfg = OscillatorConfig(args.alpha, args.omega, args.x0, args.v0, args.t_end, args.steps)
        tr = solve_oscillator(cfg)
        out.table({"t": tr.t, "x": tr.x, "v": tr.v, "E": tr.E}, tr.event)
        event = tr.event
    return EXIT_EVENT if event is not None else EXIT_OK


def _cmd_verify(args, out: _Output) -> int:
    report = run_suite(args.seed, args.samples, dict(args.tol), args.select)
    if out.format == "csv":
        cols = ("name", "samples", "max_residual", "tolerance", "passed")
        lines = [",".join(cols)]
        for en in report.entries:
            lines.append(f"{en.name},{en.samples},{out.num(en.max_residual)},{out.num(en.tolerance)},{str(en.passed).lower()}")
        out.write("\n".join(lines))
    else:
        out.write(report.to_json(out.precision))
    return EXIT_OK if report.passed else EXIT_FAIL


class _Usage(Exception):
    pass


_COMMANDS = {"eval": _cmd_eval, "diff": _cmd_diff, "integrate": _cmd_integrate, "solve": _cmd_solve,
             "verify": _cmd_verify}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Output(args)
    try:
        return _COMMANDS[args.command](args, out)
    except _Usage as exc:
        parser.error(str(exc))
    except (DeformCalcError, ArithmeticError, ValueError) as exc:
        print(f"deformcalc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
