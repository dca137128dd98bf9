import io
import json

import numpy as np
import pytest

from twoqubit import cli, qstate


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def lines(text):
    return [json.loads(line) for line in text.splitlines()]


def test_invariants_bell(data_dir):
    code, text = run("invariants", str(data_dir / "bell.json"))
    assert code == 0
    rec = json.loads(text)
    assert rec["det_pt"] == pytest.approx(-1 / 16)
    assert rec["det_pt_direct"] == pytest.approx(-1 / 16)
    assert rec["I2"] == pytest.approx(3 / 16)


def test_invariants_coordinates_file(data_dir):
    code, text = run("invariants", str(data_dir / "product_coords.json"), "--coords")
    assert code == 0
    rec = json.loads(text)
    assert rec["det_pt"] == pytest.approx(0, abs=1e-16)
    assert "coordinates" in rec


def test_invariants_stdin(monkeypatch):
    text = json.dumps(qstate.maximally_mixed().to_json())
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, out = run("invariants", "-")
    assert code == 0 and json.loads(out)["det_pt"] == pytest.approx(1 / 256)


def test_classify():
    code, text = run("classify", "@bell")
    rec = json.loads(text)
    assert code == 0 and rec["tag"] == "InteriorEntangled" and rec["separable"] is False
    code, text = run("classify", "@werner=0.3333333333333333")
    assert json.loads(text)["tag"] == "BoundaryDGamma"
    code, text = run("classify", "@mixed")
    assert json.loads(text)["tag"] == "InteriorSeparable"


def test_boundary_point():
    code, text = run("boundary-point", "@bell")
    rec = json.loads(text)
    assert code == 0
    assert rec["lambda"] == pytest.approx(1 / 3, abs=1e-12)
    assert abs(rec["det_pt"]) <= 1e-12
    m = np.array(rec["state"]["re"]) + 1j * np.array(rec["state"]["im"])
    np.testing.assert_allclose(m, qstate.werner_state(1 / 3).mat, atol=1e-12)


def test_boundary_point_same_sign(capsys):
    code, _ = run("boundary-point", "@mixed")
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 4, "re": np.diag([1, 1, 0, 0]).tolist(),
                               "im": np.zeros((4, 4)).tolist()}))
    assert run("invariants", str(bad))[0] == 2
    assert run("invariants", str(tmp_path / "missing.json"))[0] == 2
    assert run("classify", "@nonsense")[0] == 2
    (tmp_path / "junk.json").write_text("{")
    assert run("invariants", str(tmp_path / "junk.json"))[0] == 2
    with pytest.raises(SystemExit) as exc:
        run("no-such-command")
    assert exc.value.code == 2


def test_verify_det_formula():
    code, text = run("verify", "det-formula", "--samples", "200", "--rank-samples", "20",
                     "--separable-samples", "20", "--records")
    recs = lines(text)
    assert code == 0 and len(recs) == 241
    assert recs[-1]["passed"] and recs[-1]["max_abs_diff"] <= 1e-12


def test_verify_det_formula_exit_code_on_failure():
    # rounding makes some differences nonzero, so a zero tolerance must fail
    code, text = run("verify", "det-formula", "--samples", "50", "--rank-samples", "1",
                     "--separable-samples", "1", "--tol", "0")
    summary = lines(text)[-1]
    assert summary["max_abs_diff"] > 0
    assert code == 1 and summary["passed"] is False


def test_audit_smoothness():
    code, text = run("audit-smoothness", "--samples", "12", "--seed", "7")
    recs = lines(text)
    assert code == 0 and len(recs) == 13
    assert set(recs[0]) == {"index", "tag", "det", "det_pt", "zero_count"}
    assert all(r["zero_count"] == 1 for r in recs[:-1])
    assert recs[-1]["passed"]


def test_audit_is_byte_deterministic():
    a = run("audit-smoothness", "--samples", "8", "--seed", "3")[1]
    b = run("audit-smoothness", "--samples", "8", "--seed", "3", "--threads", "3")[1]
    assert a == b


def test_series_json_and_csv():
    code, text = run("series", "expand", "--grading", "1", "--max-degree", "8")
    rec = json.loads(text)
    assert code == 0 and rec["coefficients"] == ["1", "0", "3", "2", "10", "7", "29", "25", "73"]
    code, text = run("series", "expand", "--grading", "3", "--max-degree", "3", "--format", "csv")
    rows = text.splitlines()
    assert rows[0] == "d1,d2,d3,coefficient"
    assert "1,1,1,1" in rows and "0,0,3,1" in rows
    assert len(rows) == 1 + 20


def test_series_large_coefficients_exact():
    code, text = run("series", "expand", "--max-degree", "60")
    coeffs = json.loads(text)["coefficients"]
    assert len(coeffs) == 61 and all(c.isdigit() for c in coeffs)


def test_molien():
    assert run("molien", "dim", "0", "0", "4") == (0, "2\n")
    code, text = run("molien", "dim", "1", "1", "1", "--lie")
    assert code == 0 and json.loads(text) == {"degree": [1, 1, 1], "molien": 1, "lie": 1}
    assert run("molien", "dim", "0", "0", "-1")[0] == 2


def test_molien_cross_check():
    code, text = run("molien", "cross-check", "--max-degree", "4", "--lie-max-degree", "3")
    recs = lines(text)
    assert code == 0 and recs[-1]["passed"] and recs[-1]["multidegrees"] == 35


def test_verify_all_smoke():
    code, text = run("verify", "all", "--scale", "0.02")
    assert code == 0
    assert text.count("PASS") == 10 and text.rstrip().endswith("10/10 checks passed")


def test_float_format():
    assert cli.dumps({"x": 0.1, "y": [1, True, None]}) == '{"x": 0.10000000000000001, "y": [1, true, null]}'
    assert cli.dumps(np.float64(2.0)) == "2"
