import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from adequality.cli import main

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, obj, name="p.json"):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj), encoding="utf-8")
    return str(path)


class TestSolve:
    def test_maximize_modern(self):
        code, out, _ = run("solve", str(PROBLEMS / "maximize.json"))
        lines = out.splitlines()
        assert code == 0
        assert "BE adq 2AE+E^2" in lines and "B adq 2A+E" in lines
        assert lines[-2:] == ["B = 2A", "A = 5"]

    def test_maximize_herigone(self):
        code, out, _ = run("solve", str(PROBLEMS / "maximize.json"), "--style", "herigone")
        assert code == 0
        assert "2*a+e 2|2 b" in out.splitlines()
        assert "adq" not in out and " = " not in out

    def test_styles_have_same_number_of_lines(self):
        for name in ("maximize", "parabola", "cycloid", "snell"):
            a = run("solve", str(PROBLEMS / f"{name}.json"))[1].splitlines()
            b = run("solve", str(PROBLEMS / f"{name}.json"), "--style", "herigone")[1].splitlines()
            assert len(a) == len(b)

    @pytest.mark.parametrize("name", ["maximize", "cubic", "parabola", "circle", "cycloid", "snell"])
    def test_json_output_rechecks(self, tmp_path, name):
        code, out, _ = run("solve", str(PROBLEMS / f"{name}.json"), "--json")
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"kind", "result", "derivation"}
        path = write(tmp_path, out)
        first = run("check", path, "--json")
        assert first[0] == 0
        assert run("check", path, "--json") == first

    def test_results(self):
        assert json.loads(run("solve", str(PROBLEMS / "parabola.json"), "--json")[1])["result"] == {
            "subtangent_t": "2"}
        assert json.loads(run("solve", str(PROBLEMS / "circle.json"), "--json")[1])["result"] == {
            "subtangent_t": "-16/3"}
        res = json.loads(run("solve", str(PROBLEMS / "cycloid.json"), "--json")[1])["result"]
        assert abs(res["slope"] - 1) < 1e-9
        res = json.loads(run("solve", str(PROBLEMS / "maximize.json"), "--json")[1])["result"]
        assert res["rational_roots"] == ["5"] and res["critical_equation"] == "10 - 2*A"

    def test_malformed_json_reports_offset(self, tmp_path):
        code, _, err = run("solve", write(tmp_path, '{"kind": "maximize",'))
        assert code == 1 and "offset 20" in err

    def test_offset_is_in_bytes(self, tmp_path):
        code, _, err = run("solve", write(tmp_path, '{"é": 1,}'))
        assert code == 1 and "offset 9" in err

    @pytest.mark.parametrize("problem", [
        {"kind": "maximize"},
        {"kind": "maximize", "expr": "A^2", "colour": "red"},
        {"kind": "maximize", "expr": "A^2", "tol": 1e-3},
        {"kind": "maximize", "expr": "A^2", "params": {"B": "0.5"}},
        {"kind": "maximize", "expr": "A^2 +"},
        {"kind": "maximize", "expr": "A^2", "mode": "approx"},
        {"kind": "tangent", "curve": "y^2 - 4*x", "point": [1.0, 2]},
        {"kind": "tangent", "curve": "y^2 - 4*x", "point": [1]},
        {"kind": "optimise", "expr": "A"},
        {"kind": "refract", "a": 1, "b": 1, "d": 2, "v1": 1},
        {"kind": "refract", "a": 1, "b": 1, "d": 2, "v1": 1, "v2": True},
        [1, 2],
    ])
    def test_input_errors(self, tmp_path, problem):
        code, out, err = run("solve", write(tmp_path, problem))
        assert code == 1 and out == "" and err.startswith("error:")

    @pytest.mark.parametrize("problem, error", [
        ({"kind": "maximize", "expr": "5"}, "DegenerateConstant"),
        ({"kind": "tangent", "curve": "x^2 + y^2 - 25", "point": [0, 5]}, "VerticalTangent"),
        ({"kind": "tangent", "curve": "y^2 - 4*x", "point": [0, 1]}, "PointNotOnCurve"),
        ({"kind": "param-tangent", "x": "cos(theta)", "y": "sin(theta)", "theta0": 0}, "VerticalTangent"),
        ({"kind": "param-tangent", "x": "cos(theta)", "y": "sin(theta)", "theta0": "1"},
         "ExactModeUnsupported"),
        ({"kind": "refract", "a": 1, "b": 1, "d": 2, "v1": 0, "v2": 1}, "InvalidGeometry"),
    ])
    def test_math_errors(self, tmp_path, problem, error):
        code, _, err = run("solve", write(tmp_path, problem))
        assert code == 2 and error in err

    def test_missing_file(self):
        assert run("solve", "/nonexistent/problem.json")[0] == 1

    def test_flag_beats_file(self, tmp_path):
        problem = {"kind": "refract", "a": 1, "b": 1, "d": 2, "v1": 1, "v2": 0.5, "tol": 1e-3}
        loose = json.loads(run("solve", write(tmp_path, problem), "--json")[1])["result"]
        tight = json.loads(run("solve", write(tmp_path, problem), "--json", "--tol", "1e-12")[1])["result"]
        assert loose["snell_residual"] <= 1e-3
        assert tight["snell_residual"] <= 1e-12

    def test_param_tangent_exact_mode(self, tmp_path):
        problem = {"kind": "param-tangent", "x": "theta^2", "y": "theta^3", "theta0": "1/2"}
        code, out, _ = run("solve", write(tmp_path, problem))
        assert code == 0 and out.splitlines()[-1] == "m = 3/4"

    def test_bad_flag(self):
        assert run("solve", str(PROBLEMS / "maximize.json"), "--order", "0")[0] == 1
        assert run("solve", str(PROBLEMS / "maximize.json"), "--style", "latin")[0] == 1


class TestCheck:
    def test_breger(self):
        code, out, _ = run("check", str(PROBLEMS / "breger.json"))
        assert code == 3
        assert "inconsistent use of E" in out

    def test_breger_json(self):
        code, out, _ = run("check", str(PROBLEMS / "breger.json"), "--json")
        report = json.loads(out)
        assert code == 3 and report["reason"] == "inconsistent use of E" and not report["consistent"]

    def test_empty_steps(self, tmp_path):
        assert run("check", write(tmp_path, {"steps": []}))[0] == 1

    @pytest.mark.parametrize("step", [
        {"lhs": "B", "rhs": "2*A", "kind": "==", "rule": "Algebra"},
        {"lhs": "B", "rhs": "2*A", "kind": "=", "rule": "Guess"},
        {"lhs": "B", "rhs": "2*A +", "kind": "=", "rule": "Algebra"},
        {"lhs": "B", "kind": "=", "rule": "Algebra"},
        {"lhs": "B", "rhs": "2*A", "kind": "=", "rule": "Algebra", "side_conditions": ["E > 0"]},
        {"lhs": "B", "rhs": "2*A", "kind": "adq", "rule": "DiscardE"},
    ])
    def test_malformed_steps(self, tmp_path, step):
        assert run("check", write(tmp_path, {"steps": [step]}))[0] == 1

    def test_single_equality_fails_pattern(self, tmp_path):
        path = write(tmp_path, {"steps": [{"lhs": "B", "rhs": "2*A", "kind": "=", "rule": "Algebra"}]})
        code, out, _ = run("check", path)
        assert code == 3 and "pattern: no" in out

    def test_approx_division_counterexample(self, tmp_path):
        steps = [{"lhs": "E", "rhs": "2*E", "kind": "approx", "rule": "Algebra"},
                 {"lhs": "1", "rhs": "2", "kind": "approx", "rule": "DivideByE"}]
        code, out, _ = run("check", write(tmp_path, {"steps": steps}), "--json")
        report = json.loads(out)
        assert code == 3
        assert report["steps"][1]["counterexample"] == {"lhs": "E", "rhs": "2*E"}


class TestEval:
    def test_sine(self):
        assert run("eval", "sin(E)", "--order", "5")[1] == "E - 1/6*E^3 + 1/120*E^5 + O(E^6)\n"

    def test_geometric(self):
        assert run("eval", "1/(1-E)", "--order", "3")[1] == "1 + E + E^2 + E^3 + O(E^4)\n"

    def test_division_by_zero(self):
        code, _, err = run("eval", "1/0")
        assert code == 1 and "DivisionByZero" in err

    def test_bindings(self):
        assert run("eval", "x^2 - 1", "--bind", "x=1+E")[1] == "2*E + E^2\n"

    def test_approx_mode(self):
        code, out, _ = run("eval", "cos(x)", "--bind", "x=1+E", "--mode", "approx", "--order", "1")
        assert code == 0 and out.startswith("0.5403023058681")

    @pytest.mark.parametrize("argv", [
        ["eval", "x +"], ["eval", "y"], ["eval", "x", "--bind", "x"], ["eval", "x", "--bind", "E=1"],
        ["eval", "sin(1 + E)"], ["eval", "x", "--tol", "1e-3"],
    ])
    def test_errors(self, argv):
        assert run(*argv)[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "adequality", "eval", "1/(1-E)", "--order", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "1 + E + E^2 + O(E^3)\n"
