"""JSON problem files and derivation files."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from ..errors import InputError, MalformedStep, ParseError
from ..expr import parse, render
from ..fermat.trace import Derivation, RelationKind, Rule, Step


class FileFormatError(InputError, ValueError):
    pass


_RATIONAL = re.compile(r"-?[0-9]+(/[0-9]*[1-9][0-9]*)?")

# kind -> (required keys, optional keys)
_SCHEMA = {
    "maximize": ({"expr"}, {"params", "trunc", "mode"}),
    "tangent": ({"curve", "point"}, {"trunc", "mode"}),
    "param-tangent": ({"x", "y", "theta0"}, {"params", "trunc", "mode", "tol"}),
    "refract": ({"a", "b", "d", "v1", "v2"}, {"trunc", "mode", "tol"}),
}
# modes each kind can run in
_MODES = {
    "maximize": {"exact"},
    "tangent": {"exact"},
    "param-tangent": {"exact", "approx"},
    "refract": {"approx"},
}


def load_json(path: str | Path) -> Any:
    """Read UTF-8 JSON, reporting syntax errors with a byte offset."""
    data = Path(path).read_bytes() if str(path) != "-" else _stdin_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FileFormatError(f"{path}: invalid UTF-8 at offset {exc.start}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[:exc.pos].encode("utf-8"))
        raise FileFormatError(f"{path}: malformed JSON ({exc.msg}) at offset {offset}") from None


def _stdin_bytes() -> bytes:
    import sys
    return sys.stdin.buffer.read()


def parse_rational(value: Any, what: str) -> Fraction:
    """Integers and strings like ``"-3/4"``; floats are refused."""
    if isinstance(value, bool):
        raise FileFormatError(f"{what}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.fullmatch(value.strip()):
        return Fraction(value.strip())
    raise FileFormatError(f"{what}: expected an integer or a rational string like \"3/4\", got {value!r}")


def _number(value: Any, what: str) -> float | Fraction:
    if isinstance(value, bool):
        raise FileFormatError(f"{what}: expected a number, got {value!r}")
    if isinstance(value, float):
        return value
    return parse_rational(value, what)


def _expr(value: Any, what: str):
    if not isinstance(value, str):
        raise FileFormatError(f"{what}: expected an expression string")
    try:
        return parse(value)
    except ParseError as exc:
        raise FileFormatError(f"{what}: {exc}") from None


@dataclass(frozen=True)
class Problem:
    kind: str
    data: dict[str, Any]
    trunc: int | None = None
    mode: str | None = None
    tol: float | None = None
    params: dict[str, Fraction] = field(default_factory=dict)


def validate_problem(raw: Any) -> Problem:
    if not isinstance(raw, dict):
        raise FileFormatError("a problem file holds a JSON object")
    kind = raw.get("kind")
    if kind not in _SCHEMA:
        raise FileFormatError(f"kind must be one of {sorted(_SCHEMA)}, got {kind!r}")
    required, optional = _SCHEMA[kind]
    keys = set(raw) - {"kind"}
    missing = required - keys
    if missing:
        raise FileFormatError(f"{kind}: missing {sorted(missing)}")
    unknown = keys - required - optional
    if unknown:
        raise FileFormatError(f"{kind}: unexpected keys {sorted(unknown)}")

    trunc = raw.get("trunc")
    if trunc is not None and (isinstance(trunc, bool) or not isinstance(trunc, int) or trunc < 1):
        raise FileFormatError("trunc must be a positive integer")
    mode = raw.get("mode")
    if mode is not None and mode not in ("exact", "approx"):
        raise FileFormatError("mode must be \"exact\" or \"approx\"")
    if mode is not None and mode not in _MODES[kind]:
        raise FileFormatError(f"{kind} does not run in {mode} mode")
    tol = raw.get("tol")
    if tol is not None and (isinstance(tol, bool) or not isinstance(tol, (int, float)) or not tol > 0):
        raise FileFormatError("tol must be a positive number")
    params_raw = raw.get("params", {})
    if not isinstance(params_raw, dict):
        raise FileFormatError("params must be an object of name -> rational string")
    params = {}
    for name, value in params_raw.items():
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise FileFormatError(f"params: {name!r} is not a name")
        params[name] = parse_rational(value, f"params.{name}")

    data: dict[str, Any] = {}
    if kind == "maximize":
        data["expr"] = _expr(raw["expr"], "expr")
    elif kind == "tangent":
        data["curve"] = _expr(raw["curve"], "curve")
        point = raw["point"]
        if not isinstance(point, list) or len(point) != 2:
            raise FileFormatError("point must be a list [x0, y0]")
        data["point"] = (parse_rational(point[0], "point[0]"), parse_rational(point[1], "point[1]"))
    elif kind == "param-tangent":
        data["x"] = _expr(raw["x"], "x")
        data["y"] = _expr(raw["y"], "y")
        data["theta0"] = _number(raw["theta0"], "theta0")
    else:
        for key in ("a", "b", "d", "v1", "v2"):
            data[key] = _number(raw[key], key)
    return Problem(kind, data, trunc, mode, None if tol is None else float(tol), params)


# derivations

_KINDS = {k.value: k for k in RelationKind}
_RULES = {r.value: r for r in Rule}


def step_to_json(step: Step) -> dict[str, Any]:
    return {
        "lhs": render(step.lhs),
        "rhs": render(step.rhs),
        "kind": step.kind.value,
        "rule": step.rule.value,
        "side_conditions": list(step.side_conditions),
        "note": step.note,
    }


def derivation_to_json(d: Derivation) -> dict[str, Any]:
    return {"steps": [step_to_json(s) for s in d]}


def derivation_from_json(raw: Any) -> Derivation:
    """Accepts a derivation file, or a solve result that embeds one."""
    if isinstance(raw, dict) and "steps" not in raw and isinstance(raw.get("derivation"), dict):
        raw = raw["derivation"]
    if not isinstance(raw, dict) or not isinstance(raw.get("steps"), list):
        raise FileFormatError("a derivation file holds {\"steps\": [...]}")
    if not raw["steps"]:
        raise FileFormatError("steps must not be empty")
    steps = []
    for i, item in enumerate(raw["steps"], 1):
        where = f"step {i}"
        if not isinstance(item, dict):
            raise FileFormatError(f"{where}: expected an object")
        unknown = set(item) - {"lhs", "rhs", "kind", "rule", "side_conditions", "note"}
        if unknown:
            raise FileFormatError(f"{where}: unexpected keys {sorted(unknown)}")
        for key in ("lhs", "rhs", "kind", "rule"):
            if key not in item:
                raise FileFormatError(f"{where}: missing {key!r}")
        if item["kind"] not in _KINDS:
            raise FileFormatError(f"{where}: kind must be one of {sorted(_KINDS)}")
        if item["rule"] not in _RULES:
            raise FileFormatError(f"{where}: unknown rule {item['rule']!r}")
        conditions = item.get("side_conditions", [])
        if not isinstance(conditions, list) or not all(isinstance(c, str) for c in conditions):
            raise FileFormatError(f"{where}: side_conditions must be a list of strings")
        note = item.get("note", "")
        if not isinstance(note, str):
            raise FileFormatError(f"{where}: note must be a string")
        try:
            steps.append(Step(_expr(item["lhs"], f"{where} lhs"), _expr(item["rhs"], f"{where} rhs"),
                              _KINDS[item["kind"]], _RULES[item["rule"]], note, tuple(conditions)))
        except MalformedStep as exc:
            raise FileFormatError(f"{where}: {exc}") from None
    return Derivation(tuple(steps))
