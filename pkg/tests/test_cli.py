import json

from incgamma.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_psi_tilde_json(capsys):
    code, doc = run_json(capsys, "psi-tilde", "--r", "2", "--m-max", "3")
    assert code == 0
    assert doc["command"] == "psi-tilde"
    assert doc["pass"] is True
    assert [row["value"] for row in doc["rows"]] == ["1", "3/2", "5/2", "19/4"]
    assert all(row["precision_claim"] == "exact" for row in doc["rows"])


def test_psi_tilde_csv_header(capsys):
    code, out, _ = run(capsys, "psi-tilde", "--r", "5/3", "--m-max", "2",
                       "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "m,value,precision_claim,status"
    assert len(lines) == 4


def test_eval_padic(capsys):
    code, doc = run_json(capsys, "eval", "--side", "padic", "--r", "2",
                         "--s", "2", "--p", "3", "--prec", "12")
    assert code == 0
    row = doc["rows"][0]
    # <2>^2 psi_tilde(2) = 4 * 5/2 = 10 on the nose
    assert row["value"] == "10"
    assert row["precision_claim"] == "mod 3^12"


def test_eval_complex(capsys):
    code, doc = run_json(capsys, "eval", "--side", "complex", "--r", "1",
                         "--s", "4")
    assert code == 0
    assert abs(float(doc["rows"][0]["value"]) - 65.0) < 1e-8


def test_eval_padic_needs_p(capsys):
    code, _, err = run(capsys, "eval", "--side", "padic", "--r", "2",
                       "--s", "2")
    assert code == 2
    assert "--p" in err


def test_interp_check_padic(capsys):
    code, doc = run_json(capsys, "interp-check", "--r", "2", "--p", "3",
                         "--m-max", "6", "--prec", "20")
    assert code == 0
    assert doc["pass"] is True
    assert len(doc["rows"]) == 7
    assert all(row["status"] == "pass" for row in doc["rows"])


def test_interp_check_negative_r_complex(capsys):
    code, doc = run_json(capsys, "interp-check", "--r", "-1", "--complex",
                         "--m-max", "8")
    assert code == 0
    # r = -1 gives the derangement numbers
    values = [round(float(row["value"])) for row in doc["rows"]]
    assert values == [1, 0, 1, 2, 9, 44, 265, 1854, 14833]


def test_interp_check_both_sides(capsys):
    code, doc = run_json(capsys, "interp-check", "--r", "2", "--p", "5",
                         "--complex", "--m-max", "4", "--prec", "16")
    assert code == 0
    sides = [row["side"] for row in doc["rows"]]
    assert sides == ["padic"] * 5 + ["complex"] * 5


def test_interp_check_needs_a_side(capsys):
    code, _, err = run(capsys, "interp-check", "--r", "2")
    assert code == 2
    assert "side" in err


def test_interp_check_tight_tol_fails(capsys):
    code, doc = run_json(capsys, "interp-check", "--r", "1", "--complex",
                         "--m-max", "4", "--tol", "1e-30")
    assert code == 1
    assert doc["pass"] is False
    assert any(row["status"] == "fail" for row in doc["rows"])


def test_func_eq(capsys):
    code, doc = run_json(capsys, "func-eq", "--poly", "1,1/2,1/3",
                         "--p", "5", "--samples", "3", "--seed", "1",
                         "--complex", "--prec", "16")
    assert code == 0
    assert doc["pass"] is True
    assert len(doc["rows"]) == 6
    # seeded sampling is part of the interface
    assert [row["s"] for row in doc["rows"][:3]] == [-4, -6, 0]


def test_func_eq_deterministic(capsys):
    argv = ["func-eq", "--poly", "1,1/2", "--p", "5", "--samples", "4",
            "--seed", "0", "--prec", "14"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    _, out3, _ = run(capsys, *argv[:-3], "2", "--prec", "14")
    assert out1 != out3


def test_place_excluded_exit(capsys):
    code, _, err = run(capsys, "eval", "--side", "padic", "--r", "3",
                       "--s", "1", "--p", "3")
    assert code == 2
    assert "unit" in err


def test_incompatible_weight_exit(capsys):
    code, _, err = run(capsys, "func-eq", "--poly", "2", "--p", "5")
    assert code == 2
    assert "principal" in err


def test_prec_env_default(capsys, monkeypatch):
    monkeypatch.setenv("INCGAMMA_PREC", "10")
    code, doc = run_json(capsys, "eval", "--side", "padic", "--r", "2",
                         "--s", "2", "--p", "3")
    assert code == 0
    assert doc["rows"][0]["precision_claim"] == "mod 3^10"
