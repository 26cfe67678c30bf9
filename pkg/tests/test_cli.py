import json

import pytest

from jetwronsk.cli import main

from cli_cases import GOLDEN, run_cli, without_timing


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, json.loads(out), err


@pytest.mark.parametrize("label,argv,expected", GOLDEN, ids=[g[0] for g in GOLDEN])
def test_exit_code_matrix(capsys, label, argv, expected):
    code, report, _ = call(capsys, *argv, "--quiet")
    assert code == expected
    assert report["status"] == {0: "pass", 1: "fail", 2: "error"}[expected]


def test_diff_golden(capsys):
    code, report, err = call(capsys, "diff", "--expr", "z1*z2", "--p", "2", "--n", "2", "--k", "2")
    assert report["results"]["derivative"] == "z1''*z2 + 2*z1'*z2' + z1*z2''"
    assert report["schema"] == "jetwronsk/1" and "seconds" in report["timing"]
    assert "diff" in err


def test_diff_order_zero_echoes(capsys):
    _, report, _ = call(capsys, "diff", "--expr", "z1^2 - 3*z2", "--p", "0", "--n", "2", "--k", "1", "--quiet")
    assert report["results"]["derivative"] == "z1^2 - 3*z2"


def test_parse_error_reported(capsys):
    code, report, _ = call(capsys, "diff", "--expr", "z1^^2", "--p", "1", "--n", "1", "--k", "1", "--quiet")
    assert code == 2 and report["error"]["type"] == "ParseError"


def test_bounds_report(capsys):
    _, report, _ = call(capsys, "bounds", "--n", "2", "--N", "2", "--k", "1", "--delta", "4", "--quiet")
    dc = report["results"]["delta_conditions"]
    assert dc["basic"] is True and dc["estimation_margin"] == -1
    _, report, _ = call(capsys, "bounds", "--deng", "--n", "2", "--quiet")
    assert report["results"]["deng"] == {"n": 2, "d0": 12338, "cap": 59049}


def test_bounds_decomposition(capsys):
    code, report, _ = call(capsys, "bounds", "--n", "2", "--N", "2", "--k", "1", "--delta", "4",
                           "--u", "3", "--m-inf", "2", "--R", "5", "--d", "43", "--quiet")
    assert code == 0
    assert report["results"]["decomposition"] == {"d": 43, "epsilon": 5, "r": 6}


def test_germ_command(capsys):
    code, report, _ = call(capsys, "germ", "--expr", "z1 + z2^2", "--point", "0,0", "--order", "2", "--quiet")
    assert code == 0
    assert report["results"]["coefficients"] == [["0", "0", "-1"], ["0", "1", "0"]]


def test_plucker_command(capsys):
    code, report, _ = call(capsys, "plucker", "--matrix", "1,0,0,0;0,1,0,0", "--relations", "--quiet")
    assert code == 0 and report["results"]["plucker"]["(0,1)"] == "1"
    code, report, _ = call(capsys, "plucker", "--matrix", "1,2;2,4", "--quiet")
    assert code == 0 and report["results"]["degenerate"] is True


def test_reduced_wronskian_command(capsys):
    spec = json.dumps({"n": 2, "N": 2, "k": 1, "delta": 1, "r": 1, "tau": ["z1", "z2", "1 + z1"],
                       "a": {"(1,0,0)": "z2", "(0,1,0)": "1"}})
    code, report, _ = call(capsys, "reduced-wronskian", "--spec", spec, "--indices", "(1,0,0);(0,1,0)", "--quiet")
    assert code == 0 and report["checks"]["factorization-identity"]["pass"]


def test_failing_check_has_witness(capsys):
    argv = next(g[1] for g in GOLDEN if g[0] == "incidence-off-surface")
    code, report, _ = call(capsys, *argv, "--quiet")
    assert code == 1 and report["checks"]["incidence"]["witness"]["residuals"] == ["0", "2"]


def test_input_file(tmp_path, capsys):
    path = tmp_path / "in.json"
    path.write_text(json.dumps({"expr": "z1*z2", "p": 1, "n": 2, "k": 1}))
    code, report, _ = call(capsys, "diff", "--input", str(path), "--quiet")
    assert code == 0 and report["results"]["derivative"] == "z1'*z2 + z1*z2'"
    code, _, _ = call(capsys, "diff", "--input", str(path), "--p", "0", "--quiet")
    assert code == 0
    path.write_text(json.dumps({"bogus": 1}))
    code, report, _ = call(capsys, "diff", "--input", str(path), "--quiet")
    assert code == 2


def test_no_command(capsys):
    code, report, _ = call(capsys)
    assert code == 2


def test_verify_seed_echoed(capsys):
    _, report, _ = call(capsys, "verify", "--suite", "plucker", "--trials", "5", "--quiet")
    assert report["seed"] == 0


def test_subprocess_determinism():
    argv = ["verify", "--suite", "factorization", "--seed", "3", "--trials", "4"]
    first, second = run_cli(argv), run_cli(argv)
    assert first[0] == second[0] == 0
    assert without_timing(first[1]) == without_timing(second[1])
