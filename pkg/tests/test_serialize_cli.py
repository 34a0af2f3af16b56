import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from legkit.cli import main
from legkit.serialize import dumps, format_float, format_rational, parse_rational, rows_to_csv


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_round_trip(v):
    assert float(format_float(v)) == v
    assert isinstance(json.loads(format_float(v)), float)


def test_float_rejects_nonfinite():
    with pytest.raises(ValueError):
        format_float(math.inf)


@given(st.fractions())
def test_rational_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_dumps_is_deterministic_and_valid():
    obj = {"b": [1, 2.0, Fraction(1, 3)], "a": None, "c": True}
    text = dumps(obj)
    assert text == '{"b": [1, 2.0, "1/3"], "a": null, "c": true}'
    assert dumps(obj) == text
    assert json.loads(text)["b"][1] == 2.0


def test_csv_rows():
    assert rows_to_csv(("i", "v"), [(0, 0.5), (1, 1.0)]) == "i,v\n0,0.5\n1,1.0\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_poly(capsys):
    code, out, _ = run(capsys, "poly", "--n", "2")
    assert code == 0
    assert json.loads(out) == {"basis": "legendre", "n": 2, "coeffs": ["-1/2", 0, "3/2"]}


def test_poly_shifted_and_scaled(capsys):
    assert json.loads(run(capsys, "poly", "--n", "3", "--basis", "shifted")[1])["coeffs"] == [1, -12, 30, -20]
    data = json.loads(run(capsys, "poly", "--n", "4", "--scale-2adic")[1])
    assert data["scale"] == 8 and data["coeffs"] == [3, 0, -30, 0, 35]


def test_poly_csv(capsys):
    out = run(capsys, "poly", "--n", "2", "--format", "csv")[1]
    assert out.splitlines() == ["power,coeff", "0,-1/2", "1,0", "2,3/2"]


def test_shifted_mapped(capsys):
    data = json.loads(run(capsys, "shifted", "--n", "1", "--a", "0", "--b", "1")[1])
    assert data["basis"] == "mapped" and data["coeffs"] == [-1, 2]
    assert run(capsys, "shifted", "--n", "1", "--a", "0")[0] == 2


def test_roots(capsys):
    data = json.loads(run(capsys, "roots", "--n", "3")[1])
    assert data["roots"][1] == 0.0 and len(data["roots"]) == 3


def test_quad(capsys):
    data = json.loads(run(capsys, "quad", "--n", "5", "--a", "0", "--b", "1", "--f", "x^9")[1])
    assert data["integral"] == pytest.approx(0.1, abs=1e-15)
    data = json.loads(run(capsys, "quad", "--n", "1", "--a", "2", "--b", "6")[1])
    assert data == {"n": 1, "interval": [2.0, 6.0], "nodes": [0.0], "weights": [2.0], "integral": 4.0}


def test_quad_from_samples(capsys, tmp_path):
    p = tmp_path / "lin.csv"
    p.write_text("x,y\n0,0\n1,1\n")
    data = json.loads(run(capsys, "quad", "--n", "3", "--a", "0", "--b", "1", "--f", str(p))[1])
    assert data["integral"] == pytest.approx(0.5, abs=1e-15)


def test_expand_and_curve(capsys, tmp_path):
    curve = tmp_path / "c.csv"
    code, out, _ = run(capsys, "expand", "--f", "x^2", "--N", "3", "--curve-out", str(curve), "--grid", "5")
    assert code == 0
    assert json.loads(out)["coeffs"][2] == pytest.approx(2 / 3, abs=1e-14)
    assert curve.read_text().splitlines()[0] == "x,f,f_approx"


def test_bvp(capsys):
    data = json.loads(run(capsys, "bvp", "--boundary", "cos", "--N", "3")[1])
    assert data["coeffs"][1] == pytest.approx(1.0, abs=1e-12)
    out = run(capsys, "bvp", "--boundary", "const:1", "--N", "1", "--format", "csv", "--nr", "2", "--ntheta", "2")[1]
    assert out.splitlines()[0] == "r,theta,V" and len(out.splitlines()) == 5


def test_beukers(capsys):
    data = json.loads(run(capsys, "beukers", "--n", "3", "--f", "exp")[1])
    assert data["abs_diff"] <= 1e-12


def test_output_is_deterministic(capsys):
    a = run(capsys, "expand", "--f", "sign", "--N", "9")[1]
    b = run(capsys, "expand", "--f", "sign", "--N", "9")[1]
    assert a == b


def test_output_file(capsys, tmp_path):
    p = tmp_path / "o.json"
    assert run(capsys, "roots", "--n", "2", "--output", str(p))[0] == 0
    assert len(json.loads(p.read_text())["roots"]) == 2


def test_exit_codes(capsys):
    with pytest.raises(SystemExit) as info:
        main(["poly", "--n", "-1"])
    assert info.value.code == 2
    capsys.readouterr()
    assert run(capsys, "expand", "--f", "nope", "--N", "3")[0] == 2
    code, _, err = run(capsys, "quad", "--n", "3", "--f", "missing.csv")
    assert code == 3 and "missing.csv" in err
    assert run(capsys, "roots", "--n", "4", "--tol", "1e-20")[0] == 2


def test_convergence_exit_code(capsys, monkeypatch):
    from legkit import quadrature
    from legkit.errors import ConvergenceError

    def fail(*a, **k):
        raise ConvergenceError("no")

    monkeypatch.setattr(quadrature, "legendre_roots", fail)
    assert run(capsys, "roots", "--n", "300")[0] == 4
