"""Acceptance criteria, one check per criterion.

Each check returns ``(passed, detail)``.  Under pytest every criterion is its
own test and the PASS/FAIL lines are printed in the terminal summary (see
``conftest.py``); ``python3 tests/test_acceptance.py`` prints them directly.
"""

from __future__ import annotations

import io
import json
import math
import random
import sys
import tempfile
import time
import timeit
from fractions import Fraction
from pathlib import Path

import pytest
from scipy.optimize import minimize_scalar

from adequality import numfield as nf
from adequality.cli import main as cli_main
from adequality.expr import Const, Polynomial, Var, render_juxtaposed
from adequality.fermat import maximize, parametric_tangent, refract, subtangent

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"
TRUNC = 8
RESULTS: dict[int, tuple[bool, str]] = {}


def _line(s) -> str:
    return f"{render_juxtaposed(s.lhs)} {s.kind.value} {render_juxtaposed(s.rhs)}"


def _random_series(rng: random.Random, low: int = -2, high: int = 4, nonzero: bool = False) -> nf.Series:
    while True:
        terms = {rng.randint(low, high): Fraction(rng.randint(-20, 20), rng.randint(1, 12))
                 for _ in range(rng.randint(0, 4))}
        s = nf.Series(terms, trunc=TRUNC)
        if s.terms or not nonzero:
            return s


def _cli(*argv) -> tuple[int, str]:
    out = io.StringIO()
    code = cli_main(list(argv), out=out, err=io.StringIO())
    return code, out.getvalue()


# -- the criteria ------------------------------------------------------------

def criterion_1():
    res = maximize("B*A - A^2", {"B": 10})
    lines = [_line(s) for s in res.derivation]
    wanted = ["BE adq 2AE+E^2", "B adq 2A+E", "B = 2A"]
    if not all(w in lines for w in wanted):
        return False, f"trace was {lines}"
    at = [lines.index(w) for w in wanted]
    in_order = at == sorted(at) and at[1] == at[0] + 1 and at[2] == len(lines) - 1
    roots_ok = res.rational_roots == [5]
    n = 200
    ms = min(timeit.repeat(lambda: maximize("B*A - A^2", {"B": 10}), number=n, repeat=7)) / n * 1e3
    ok = in_order and roots_ok and ms < 1
    return ok, f"roots {res.rational_roots}, {ms:.3f} ms per call"


def criterion_2():
    bad = []
    for order in range(3, 11):
        e = nf.epsilon(order)
        s = nf.taylor_apply("sin", e)
        if not (nf.adequal(s, e) is True and nf.approx(s, e) is True):
            bad.append(order)
    return not bad, "orders 3..10" if not bad else f"failed at orders {bad}"


def criterion_3():
    rng = random.Random(1015)
    e = nf.epsilon(TRUNC)
    start = time.perf_counter()
    failures = decided_true = 0
    for _ in range(500):
        p = _random_series(rng, nonzero=True)
        if rng.random() < 0.5:
            # adequal by construction: q = p (1 + h) with h infinitesimal
            q = nf.mul(p, nf.add(p.constant(1), _random_series(rng, 1, 3)))
        else:
            q = _random_series(rng, nonzero=True)
        before = nf.adequal(p, q)
        decided_true += before
        if nf.adequal(nf.div(p, e), nf.div(q, e)) != before:
            failures += 1
    two_e = nf.mul(e.constant(2), e)
    counter = nf.approx(e, two_e) and not nf.approx(nf.div(e, e), nf.div(two_e, e))
    elapsed = time.perf_counter() - start
    ok = failures == 0 and counter and elapsed < 1
    return ok, f"{failures} failures, {decided_true} adequal pairs, counterexample {counter}, {elapsed:.3f} s"


def criterion_4():
    rng = random.Random(1017)
    failures = 0
    if nf.st(nf.epsilon(TRUNC)) != 0:
        failures += 1
    for _ in range(500):
        a, b = _random_series(rng, 0, 4), _random_series(rng, 0, 4)
        # oracle: the standard part of a finite series is its E^0 coefficient
        sa, sb = a.terms.get(0, 0), b.terms.get(0, 0)
        if nf.st(a) != sa or nf.st(b) != sb:
            failures += 1
        if nf.st(nf.add(a, b)) != sa + sb or nf.st(nf.mul(a, b)) != sa * sb:
            failures += 1
        if nf.st(nf.neg(a)) != -sa or nf.st(nf.sub(a, b)) != sa - sb:
            failures += 1
    return failures == 0, f"{failures} failures"


def _poly_expr(coeffs, var):
    e = Const(Fraction(0))
    for k, c in enumerate(coeffs):
        if c:
            e = e + Const(c) * Var(var) ** k
    return e


def criterion_5():
    rng = random.Random(1005)
    start = time.perf_counter()
    failures = 0
    for _ in range(200):
        degree = rng.randint(1, 6)
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(degree + 1)]
        coeffs[-1] = coeffs[-1] or Fraction(1)
        # oracle: power rule on the coefficient list
        derivative = Polynomial([k * c for k, c in enumerate(coeffs)][1:], "A")
        res = maximize(_poly_expr(coeffs, "A"))
        if derivative.degree == 0:
            # linear p: no critical point, the concluding equation is a nonzero constant
            same = res.critical_equation.degree == 0
        else:
            same = res.critical_equation.content_free() == derivative.content_free()
        if not same or res.rational_roots != derivative.rational_roots():
            failures += 1
    elapsed = time.perf_counter() - start
    return failures == 0 and elapsed < 5, f"{failures} failures, {elapsed:.3f} s"


def _random_curve(rng: random.Random, degree: int):
    monomials = [(i, j) for i in range(degree + 1) for j in range(degree + 1) if 0 < i + j <= degree]
    while True:
        coeffs = {m: rng.randint(-5, 5) for m in monomials}
        if not any(c for (i, j), c in coeffs.items() if i + j == degree):
            continue
        x0 = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        y0 = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        if y0 == 0:
            continue
        const = -sum(c * x0 ** i * y0 ** j for (i, j), c in coeffs.items())
        fx = sum(c * i * x0 ** (i - 1) * y0 ** j for (i, j), c in coeffs.items() if i)
        fy = sum(c * j * x0 ** i * y0 ** (j - 1) for (i, j), c in coeffs.items() if j)
        if fx == 0 or fy == 0:
            continue
        F = Const(const)
        for (i, j), c in coeffs.items():
            if c:
                F = F + Const(Fraction(c)) * Var("x") ** i * Var("y") ** j
        return F, x0, y0, fx, fy


def criterion_6():
    rng = random.Random(1006)
    failures = 0
    for n in range(100):
        F, x0, y0, fx, fy = _random_curve(rng, 2 if n % 2 else 3)
        t = subtangent(F, x0, y0).subtangent_t
        if t * fx + y0 * fy != 0:
            failures += 1
    parabola = subtangent("y^2 - 4*x", 1, 2).subtangent_t
    circle = subtangent("x^2 + y^2 - 25", 3, 4).subtangent_t
    ok = failures == 0 and parabola == 2 and circle == Fraction(-16, 3)
    return ok, f"{failures} failures, parabola t = {parabola}, circle t = {circle}"


def criterion_7():
    x, y = "theta - sin(theta)", "1 - cos(theta)"
    at_half_pi = parametric_tangent(x, y, math.pi / 2).slope
    rng = random.Random(1003)
    worst = 0.0
    for _ in range(20):
        theta = rng.uniform(0.2, math.pi - 0.2)
        want = math.sin(theta) / (1 - math.cos(theta))
        worst = max(worst, abs(parametric_tangent(x, y, theta).slope - want))
    ok = abs(at_half_pi - 1) <= 1e-9 and worst <= 1e-9
    return ok, f"slope at pi/2 = {at_half_pi!r}, worst error {worst:.2e}"


def criterion_8():
    sym = refract(1, 1, 2, 1, 1)
    a, b, d, v1, v2 = 1.0, 1.0, 2.0, 1.0, 0.5
    res = refract(a, b, d, v1, v2)
    residual = abs(math.sin(res.theta1) / v1 - math.sin(res.theta2) / v2)

    def travel_time(x):
        return math.hypot(a, x) / v1 + math.hypot(b, d - x) / v2

    best = minimize_scalar(travel_time, bounds=(0, d), method="bounded", options={"xatol": 1e-12}).x
    ok = abs(sym.x_star - 1) <= 1e-9 and residual <= 1e-9 and abs(res.x_star - best) <= 1e-6
    return ok, (f"symmetric x* = {sym.x_star!r}, snell residual {residual:.2e}, "
                f"|x* - numeric| = {abs(res.x_star - best):.2e}")


def criterion_9():
    code, out = _cli("solve", str(PROBLEMS / "maximize.json"), "--json")
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "golden.json"
        path.write_text(out, encoding="utf-8")
        golden, _ = _cli("check", str(path))
    breger, report = _cli("check", str(PROBLEMS / "breger.json"), "--json")
    reason = json.loads(report)["reason"]
    ok = code == 0 and golden == 0 and breger == 3 and reason == "inconsistent use of E"
    return ok, f"golden exit {golden}, Breger exit {breger} ({reason})"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 10)}


def run_criterion(n: int) -> tuple[bool, str]:
    try:
        RESULTS[n] = CRITERIA[n]()
    except Exception as exc:  # a crash is a failure, reported like one
        RESULTS[n] = (False, f"{type(exc).__name__}: {exc}")
    return RESULTS[n]


def report_lines() -> list[str]:
    return [f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
            for n, (ok, detail) in sorted(RESULTS.items())]


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail = run_criterion(n)
    assert ok, detail


if __name__ == "__main__":
    for n in CRITERIA:
        run_criterion(n)
    print("\n".join(report_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
