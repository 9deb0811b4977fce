import json

import pytest

from quadid.cli import CapExceeded, main, run_eval, run_lindstrom, run_verify_identities


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_duration(payload):
    d = json.loads(payload)
    d.pop("duration")
    return d


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-identities", "--m", "3", "--n", "3"],
        ["verify-identities", "--m", "3", "--n", "3", "--family", "plucker"],
        ["lindstrom", "--m", "3", "--n", "2"],
        ["extend", "--m", "3", "--n", "3"],
        ["reconstruct", "--m", "3", "--n", "3"],
    ],
)
def test_suites_pass(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 0
    report = json.loads(out)
    assert report["passed"] and report["failures"] == []
    assert report["instances"] > 0
    assert err.startswith("PASS")


def test_family_counts(capsys):
    _, out, _ = run(capsys, "verify-identities", "--m", "3", "--n", "3")
    counts = json.loads(out)["details"]["per_family"]
    assert counts == {"plucker": 6, "coplucker": 6, "dodgson": 5, "qc": 79}


def test_cap(capsys):
    code, out, err = run(capsys, "lindstrom", "--m", "5", "--n", "2")
    assert code == 2 and out == "" and "cap" in err
    with pytest.raises(CapExceeded):
        run_verify_identities(0, 2)


def test_raised_cap_warns(capsys):
    code, _, err = run(capsys, "lindstrom", "--m", "1", "--n", "1", "--cap", "6")
    assert code == 0 and "warning" in err


def test_deterministic(capsys):
    argv = ["reconstruct", "--m", "2", "--n", "3"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert strip_duration(a) == strip_duration(b)


def test_json_out_and_table(tmp_path, capsys):
    rep, tab = tmp_path / "r.json", tmp_path / "t.json"
    code, out, _ = run(capsys, "extend", "--m", "2", "--n", "2", "--json-out", str(rep), "--table-out", str(tab))
    assert code == 0
    assert json.loads(rep.read_text()) == json.loads(out)
    table = json.loads(tab.read_text())
    assert len(table) == 6 and table["[|]"] == "(1)"


def test_eval_file(tmp_path, capsys):
    f = tmp_path / "exprs.txt"
    f.write_text("# true identity\n+ [1|1][1|2] - q^1 [1|2][1|1]\n+ [1|1][2|2] - [2|2][1|1]\n")
    code, out, err = run(capsys, "eval", "--expr-file", str(f))
    assert code == 1 and err.startswith("FAIL")
    report = json.loads(out)
    first, second = report["details"]["expressions"]
    assert first["residual"] == "0"
    assert second["residual"] != "0"
    assert len(report["failures"]) == 1


def test_eval_syntax_error(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("[1|]\n")
    code, _, err = run(capsys, "eval", "--expr-file", str(f))
    assert code == 2 and "syntax" in err


def test_eval_api_dimensions():
    rep = run_eval("+ [1|1][1|2] - q^1 [1|2][1|1]", m=3, n=3)
    assert rep.passed and rep.details["expressions"][0]["m"] == 3
