"""``adequality solve | check | eval``.

Exit codes: 0 success, 1 bad input, 2 the mathematics refused (solve),
3 a derivation was rejected (check).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from .. import numfield
from ..checker import DerivationReport, validate_derivation
from ..errors import AdequalityError, InputError, MathError
from ..expr import (EPSILON, Const, Expr, MPoly, Polynomial, Var, eval_series, make_binding, parse,
                    render, render_juxtaposed, substitute)
from ..fermat import maximize, parametric_tangent, refract, subtangent
from ..fermat.trace import Derivation, Step, poly_expr
from .files import Problem, derivation_from_json, derivation_to_json, load_json, validate_problem

EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_REJECTED = 0, 1, 2, 3

DEFAULT_ORDER = 8
DEFAULT_TOL = 1e-9
HERIGONE_SIGN = "2|2"


def _dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _q(x) -> str:
    return str(x) if isinstance(x, Fraction) else repr(x)


def _json_number(x):
    return str(x) if isinstance(x, Fraction) else x


def polynomial_expr(p: Polynomial) -> Expr:
    out = MPoly()
    for k, c in enumerate(p.coeffs):
        out = out + MPoly.var(p.var, k) * c
    return poly_expr(out, [p.var])


# rendering

def _lowercase(e: Expr) -> Expr:
    names = {n for n in (v.name for v in e.walk() if isinstance(v, Var)) if n != n.lower()}
    return substitute(e, {n: Var(n.lower()) for n in names}) if names else e


def modern_line(step: Step) -> str:
    return f"{render_juxtaposed(step.lhs)} {step.kind.value} {render_juxtaposed(step.rhs)}"


def herigone_line(step: Step) -> str:
    """One sign for every relation, lowercase letters, the balanced side first."""
    lhs, rhs = (render(_lowercase(s), spaced=False) for s in (step.lhs, step.rhs))
    return f"{rhs} {HERIGONE_SIGN} {lhs}"


def trace_lines(d: Derivation, style: str) -> list[str]:
    line = herigone_line if style == "herigone" else modern_line
    return [line(s) for s in d]


# solve

def _settings(problem: Problem, args) -> tuple[int, float]:
    order = args.order if args.order is not None else (problem.trunc or DEFAULT_ORDER)
    tol = args.tol if args.tol is not None else (problem.tol if problem.tol is not None else DEFAULT_TOL)
    return order, tol


def run_problem(problem: Problem, order: int, tol: float) -> tuple[dict[str, Any], list[tuple[str, str]], Derivation]:
    """Dispatch to the solver; returns (result JSON, result relations, derivation)."""
    data = problem.data
    if problem.kind == "maximize":
        res = maximize(data["expr"], problem.params, trunc=order)
        crit = polynomial_expr(res.critical_equation)
        result = {
            "critical_equation": render(crit),
            "rational_roots": [str(r) for r in res.rational_roots],
            "var": res.var,
        }
        rel = [(res.var, str(r)) for r in res.rational_roots] or [(render(crit), "0")]
        return result, rel, res.derivation
    if problem.kind == "tangent":
        x0, y0 = data["point"]
        res = subtangent(data["curve"], x0, y0, trunc=order)
        return {"subtangent_t": str(res.subtangent_t)}, [("t", str(res.subtangent_t))], res.derivation
    if problem.kind == "param-tangent":
        consts = {k: Const(v) for k, v in problem.params.items()}
        x_expr, y_expr = substitute(data["x"], consts), substitute(data["y"], consts)
        theta0 = data["theta0"]
        approx = problem.mode == "approx" or (problem.mode is None and isinstance(theta0, float))
        res = parametric_tangent(x_expr, y_expr, float(theta0) if approx else theta0,
                                 trunc=order, tol=tol if approx else None)
        return {"slope": _json_number(res.slope)}, [("m", _q(res.slope))], res.derivation
    values = [float(data[k]) for k in ("a", "b", "d", "v1", "v2")]
    res = refract(*values, tol=tol, trunc=order)
    result = {"x_star": res.x_star, "theta1": res.theta1, "theta2": res.theta2,
              "snell_residual": res.snell_residual}
    rel = [(k, repr(v)) for k, v in (("x", res.x_star), ("theta1", res.theta1), ("theta2", res.theta2))]
    return result, rel, res.derivation


def cmd_solve(args, out, err) -> int:
    try:
        problem = validate_problem(load_json(args.file))
        order, tol = _settings(problem, args)
        result, relations, derivation = run_problem(problem, order, tol)
    except (InputError, OSError) as exc:
        return _fail(err, exc, EXIT_INPUT)
    except MathError as exc:
        return _fail(err, exc, EXIT_MATH)

    if args.json:
        doc = {"kind": problem.kind, "result": result, "derivation": derivation_to_json(derivation)}
        print(_dumps(doc), file=out)
        return EXIT_OK
    for line in trace_lines(derivation, args.style):
        print(line, file=out)
    for name, value in relations:
        if args.style == "herigone":
            print(f"{name.lower()} {HERIGONE_SIGN} {value}", file=out)
        else:
            print(f"{name} = {value}", file=out)
    return EXIT_OK


# check

def report_json(d: Derivation, report: DerivationReport) -> dict[str, Any]:
    steps = []
    for step, verdict in zip(d, report.verdicts):
        entry = {"relation": modern_line(step), "rule": step.rule.value,
                 "status": verdict.status.value, "reason": verdict.reason, "counterexample": None}
        if verdict.counterexample is not None:
            entry["counterexample"] = {k: numfield.format_series(v) for k, v in verdict.counterexample.items()}
        steps.append(entry)
    return {"ok": report.ok, "pattern": report.pattern, "consistent": report.consistent,
            "reason": report.reason, "side_conditions": sorted(report.side_conditions), "steps": steps}


def cmd_check(args, out, err) -> int:
    try:
        d = derivation_from_json(load_json(args.file))
    except (InputError, OSError) as exc:
        return _fail(err, exc, EXIT_INPUT)
    report = validate_derivation(d)
    if args.json:
        print(_dumps(report_json(d, report)), file=out)
    else:
        for i, (step, verdict) in enumerate(zip(d, report.verdicts), 1):
            print(f"{i}. {modern_line(step)}  [{step.rule.value}] {verdict}", file=out)
        print(f"pattern: {'yes' if report.pattern else 'no'}", file=out)
        print("accepted" if report.ok else f"rejected: {report.reason}", file=out)
    return EXIT_OK if report.ok else EXIT_REJECTED


# eval

def cmd_eval(args, out, err) -> int:
    try:
        tol = None
        if args.mode == "approx":
            tol = args.tol if args.tol is not None else numfield.DEFAULT_TOL
        elif args.tol is not None:
            raise InputError("--tol applies to --mode approx only")
        values = {}
        for item in args.bind:
            name, sep, text = item.partition("=")
            name = name.strip()
            if not sep or not name.isidentifier():
                raise InputError(f"--bind expects name=expr, got {item!r}")
            values[name] = parse(text)
        binding = make_binding(values, trunc=args.order, tol=tol)
        series = eval_series(parse(args.expr), binding)
    except AdequalityError as exc:
        return _fail(err, exc, EXIT_INPUT)
    print(numfield.format_series(series, EPSILON), file=out)
    return EXIT_OK


def _fail(err, exc: BaseException, code: int) -> int:
    print(f"error: {type(exc).__name__}: {exc}", file=err)
    return code


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adequality", description="Fermat's method of adequality, exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve a JSON problem file and print its derivation")
    solve.add_argument("file", help="problem file (- for stdin)")
    solve.add_argument("--order", type=_positive_int, help=f"truncation order (default {DEFAULT_ORDER})")
    solve.add_argument("--style", choices=("modern", "herigone"), default="modern")
    solve.add_argument("--json", action="store_true", help="emit result and derivation as JSON")
    solve.add_argument("--tol", type=_positive_float, help=f"numeric tolerance (default {DEFAULT_TOL:g})")
    solve.set_defaults(handler=cmd_solve)

    check = sub.add_parser("check", help="validate a derivation file")
    check.add_argument("file", help="derivation file or solve --json output (- for stdin)")
    check.add_argument("--json", action="store_true")
    check.set_defaults(handler=cmd_check)

    ev = sub.add_parser("eval", help="evaluate an expression as a series in E")
    ev.add_argument("expr")
    ev.add_argument("--bind", action="append", default=[], metavar="NAME=EXPR")
    ev.add_argument("--order", type=_positive_int, default=DEFAULT_ORDER)
    ev.add_argument("--mode", choices=("exact", "approx"), default="exact")
    ev.add_argument("--tol", type=_positive_float, help="coefficient tolerance in approx mode")
    ev.set_defaults(handler=cmd_eval)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.handler(args, out, err)
