"""End-to-end tests of the command-line front end.

Most cases drive ``cli.main`` in-process and read stdout through capsys;
byte-for-byte reproducibility gets a real subprocess pair.
"""

import json
import subprocess
import sys

import pytest

from hohlov import cli

SMALL_SEARCH = ["--grid-p", "21", "--grid-angle", "12", "--atoms", "2000"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_psi_json(capsys):
    code, out, _ = run(capsys, "psi", "--a", "2", "--b", "1", "--c", "1",
                       "--n", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["psi"] == [1.0, 2.0, 3.0, 4.0, 5.0]
    assert out.endswith("\n")


def test_psi_csv(capsys):
    code, out, _ = run(capsys, "psi", "--a", "1", "--b", "1", "--c", "1",
                       "--n", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,psi", "1,1.0", "2,1.0"]


def test_bound_fs_real(capsys):
    code, out, _ = run(capsys, "bound", "fs", "--a", "2", "--b", "1",
                       "--c", "1", "--mu", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["functional"] == "fs_real"
    assert payload["bound"] == pytest.approx(1.0 / 6.0, abs=1e-15)
    assert payload["status"] == "PROVED"
    assert payload["mu"] == [2.0, 0.0]


def test_bound_fs_complex_route(capsys):
    code, out, _ = run(capsys, "bound", "fs", "--a", "1", "--b", "1",
                       "--c", "1", "--mu", "1,1")
    assert code == 0
    payload = json.loads(out)
    assert payload["functional"] == "fs_complex"
    assert payload["bound"] == 0.5


def test_bound_text_format(capsys):
    code, out, _ = run(capsys, "bound", "a5", "--a", "1", "--b", "1",
                       "--c", "1", "--format", "text")
    assert code == 0
    assert "[REPORT_ONLY]" in out
    assert "a5" in out


def test_bound_alias(capsys):
    code, out, _ = run(capsys, "bound", "h22", "--a", "1", "--b", "1",
                       "--c", "1")
    assert code == 0
    assert json.loads(out)["functional"] == "h2_2"


def test_bound_fs_requires_mu(capsys):
    code, _, err = run(capsys, "bound", "fs", "--a", "1", "--b", "1",
                       "--c", "1")
    assert code == 2
    assert "mu" in err


def test_search_h2_2(capsys):
    code, out, _ = run(capsys, "search", "h22", "--a", "1", "--b", "1",
                       "--c", "1", "--seed", "7", *SMALL_SEARCH)
    assert code == 0
    payload = json.loads(out)
    assert payload["functional"] == "h2_2"
    assert payload["status"] == "ATTAINED"
    assert payload["bound"] == 0.25
    assert abs(payload["numeric_max"] - 0.25) < 1e-3
    assert payload["seed"] == 7


def test_search_violated_is_exit_zero(capsys):
    code, out, _ = run(capsys, "search", "a5", "--a", "1", "--b", "1",
                       "--c", "1", *SMALL_SEARCH)
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "VIOLATED"
    assert payload["witness"]["kind"] == "atoms"
    assert "certification" in payload["witness"]


def test_search_text_format(capsys):
    code, out, _ = run(capsys, "search", "a4", "--a", "1", "--b", "1",
                       "--c", "1", "--format", "text", *SMALL_SEARCH)
    assert code == 0
    assert "-> ATTAINED" in out
    assert "witness:" in out


def test_extremal_member_roundtrip(tmp_path, capsys):
    path = tmp_path / "extremal3.json"
    code, out, _ = run(capsys, "extremal", "--k", "3", "--a", "1", "--b", "1",
                       "--c", "1", "--order", "512", "--output", str(path))
    assert code == 0
    assert out == ""
    payload = json.loads(path.read_text())
    assert payload["a1_implicit"] is True
    assert payload["coeffs"][2] == [0.5, 0.0]

    code, out, _ = run(capsys, "member", "--series", str(path), "--a", "1",
                       "--b", "1", "--c", "1", "--radius", "0.99")
    assert code == 0
    check = json.loads(out)
    assert check["ok"] is True
    assert check["margin"] > 0.02


def test_member_identity(tmp_path, capsys):
    path = tmp_path / "id.json"
    path.write_text(json.dumps({"order": 8, "a1_implicit": True,
                                "coeffs": [[0.0, 0.0]] * 7}))
    code, out, _ = run(capsys, "member", "--series", str(path), "--a", "1",
                       "--b", "1", "--c", "1")
    assert code == 0
    check = json.loads(out)
    assert check["ok"] is True
    assert check["margin"] == pytest.approx(1.0, abs=1e-12)


def test_suffcond(tmp_path, capsys):
    path = tmp_path / "id.json"
    path.write_text(json.dumps({"order": 8, "a1_implicit": True,
                                "coeffs": [[0.0, 0.0]] * 7}))
    code, out, _ = run(capsys, "suffcond", "--series", str(path), "--a", "1",
                       "--b", "1", "--c", "1", "--gamma", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["premise_holds"] is True
    assert payload["conclusion_holds"] is True
    assert payload["threshold"] == 1.25


def test_suffcond_denominator_exit_code(tmp_path, capsys):
    # a2 places the root of 1 + a2 z on the sampling circle
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"order": 8, "a1_implicit": True,
                                "coeffs": [[1.0 / 0.999, 0.0]] + [[0.0, 0.0]] * 6}))
    code, _, err = run(capsys, "suffcond", "--series", str(path), "--a", "1",
                       "--b", "1", "--c", "1", "--gamma", "2")
    assert code == 4
    assert "error" in err


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--preset", "alexander",
                       "--functionals", "a2,a3", "--mu-grid", "")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "functional,a,b,c,mu_re,mu_im,bound,status"
    assert "a2,2.0,1.0,1.0,,,0.25,PROVED" in lines
    assert len(lines) == 3


def test_table_json(capsys):
    # the bernardi triple sits below the main regime, so the table warns
    with pytest.warns(Warning):
        code, out, _ = run(capsys, "table", "--preset", "bernardi:1",
                           "--functionals", "fs", "--mu-grid", "0,1",
                           "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 2
    assert rows[0]["functional"] == "fs_real"
    assert rows[0]["mu_re"] == 0.0


def test_invalid_params_exit_code(capsys):
    code, _, err = run(capsys, "psi", "--a", "1", "--b", "1", "--c", "0",
                       "--n", "3")
    assert code == 2
    assert "error" in err


def test_unknown_functional_exit_code(capsys):
    code, _, _ = run(capsys, "bound", "a7", "--a", "1", "--b", "1", "--c", "1")
    assert code == 2


def test_missing_series_exit_code(capsys):
    code, _, err = run(capsys, "member", "--series", "/no/such/file.json",
                       "--a", "1", "--b", "1", "--c", "1")
    assert code == 3
    assert "cannot read" in err


def test_malformed_series_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{\"order\": 3")
    code, _, err = run(capsys, "member", "--series", str(path), "--a", "1",
                       "--b", "1", "--c", "1")
    assert code == 3
    assert "malformed" in err


def test_unwritable_output_exit_code(capsys):
    code, _, err = run(capsys, "psi", "--a", "1", "--b", "1", "--c", "1",
                       "--n", "2", "--output", "/no/such/dir/out.json")
    assert code == 3
    assert "cannot write" in err


def test_nan_walk():
    assert cli._all_finite({"x": [1.0, 2.0], "y": {"z": 0.0}})
    assert not cli._all_finite({"x": [1.0, float("nan")]})
    assert not cli._all_finite([{"v": float("inf")}])


def test_search_byte_identical():
    argv = [sys.executable, "-m", "hohlov.cli", "search", "a5",
            "--a", "1", "--b", "1", "--c", "1", "--seed", "3",
            *SMALL_SEARCH]
    first = subprocess.run(argv, capture_output=True, check=True)
    second = subprocess.run(argv, capture_output=True, check=True)
    assert first.stdout == second.stdout
    assert first.stdout.endswith(b"\n")
