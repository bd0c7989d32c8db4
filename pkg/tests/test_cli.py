import json
import os
import sys

import pytest

# Add root directory to sys.path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from kronecker_cells.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main
from kronecker_cells.config import Settings


@pytest.fixture(autouse=True)
def restore_settings(monkeypatch):
    # --log-level writes through to Settings
    monkeypatch.setattr(Settings, "LOG_LEVEL", Settings.LOG_LEVEL)
    monkeypatch.setattr(Settings, "WORKERS", 1)


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_enumerate(capsys):
    assert main(["enumerate", "--m", "4"]) == EXIT_OK
    out = capsys.readouterr().out.strip().splitlines()
    assert out[-1] == "5 tuples for m=4"
    code, payload = run_json(capsys, ["enumerate", "--m", "4"])
    assert code == EXIT_OK and payload["count"] == 5
    assert payload["tuples"][0] == {"m": 4, "entries": [], "e1": 0, "e2": 0}


def test_enumerate_rejects_small_m(capsys):
    assert main(["enumerate", "--m", "2"]) == EXIT_USAGE
    assert "m must be at least 3" in capsys.readouterr().err


def test_verify_reports_corrupted_relations(capsys):
    code = main(["verify", "--m", "6", "--p", "0,2", "--corrupt", "--trials", "1"])
    out = capsys.readouterr().out
    assert code == EXIT_MISMATCH
    assert "FAIL" in out and "difference at (1,3)" in out
    assert out.strip().splitlines()[-1] == "0 of 1 tuples verified for m=6"


def test_verify_worked_tuple(capsys):
    code, payload = run_json(capsys, ["verify", "--m", "11", "--p", "0,2,4,4,5,6", "--trials", "3", "--seed", "4"])
    assert code == EXIT_OK
    assert payload["ok"] and payload["seed"] == 4
    [report] = payload["reports"]
    assert report["census"] == {"e1": 6, "e2": 3, "dimension": 11}
    assert [check["match"] for check in report["jk"]] == [True, True, True]
    assert report["trials"]["passed"] == 3


def test_verify_writes_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code = main(["verify", "--m", "4", "--trials", "1", "--format", "json", "--output", str(target)])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["m"] == 4


def test_subrep_with_unit_values(capsys):
    code, payload = run_json(capsys, ["subrep", "--m", "11", "--p", "0,2,4,4,5,6", "--ones"])
    assert code == EXIT_OK
    assert payload["assignment"]["x[1,8]"] == "-3"
    assert payload["rank_N1"] == 6 and payload["subrepresentation"]
    assert payload["field"] == "Q"


def test_subrep_random_is_seeded(capsys):
    argv = ["subrep", "--m", "8", "--p", "0,2,3,4", "--random", "--seed", "7"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    assert "subrepresentation: yes" in first


def test_subrep_from_assignment_file(capsys, tmp_path):
    code, payload = run_json(capsys, ["subrep", "--m", "11", "--p", "0,2,4,4,5,6"])
    free = {name: "1" for name, value in payload["assignment"].items() if name not in ("x[1,3]", "x[1,7]", "x[1,8]")}
    point = tmp_path / "point.json"
    point.write_text(json.dumps(free))
    code, payload = run_json(capsys, ["subrep", "--m", "11", "--p", "0,2,4,4,5,6", "--assignment", str(point)])
    assert code == EXIT_OK
    assert payload["assignment"]["x[1,8]"] == "-3"


def test_subrep_rejects_bad_assignment_files(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("[1, 2]")
    assert main(["subrep", "--m", "6", "--p", "0,2", "--assignment", str(broken)]) == EXIT_USAGE
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"x[9,9]": 1}))
    assert main(["subrep", "--m", "6", "--p", "0,2", "--assignment", str(wrong)]) == EXIT_USAGE
    assert main(["subrep", "--m", "6", "--p", "0,2", "--assignment", str(tmp_path / "missing.json")]) == EXIT_USAGE


@pytest.mark.parametrize("bad", ["abc", "1/0", "[1]"])
def test_subrep_rejects_bad_assignment_values(capsys, tmp_path, bad):
    code, payload = run_json(capsys, ["subrep", "--m", "11", "--p", "0,2,4,4,5,6"])
    free = {name: "1" for name in payload["assignment"] if name not in ("x[1,3]", "x[1,7]", "x[1,8]")}
    free[sorted(free)[0]] = bad
    point = tmp_path / "point.json"
    point.write_text(json.dumps(free))
    assert main(["subrep", "--m", "11", "--p", "0,2,4,4,5,6", "--assignment", str(point)]) == EXIT_USAGE
    assert "Bad value" in capsys.readouterr().err


@pytest.mark.parametrize("flags", [["--workers", "0"], ["--workers", "-1"], ["--trials", "-1"], ["--trials", "two"]])
def test_verify_rejects_bad_counts(capsys, flags):
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "--m", "4"] + flags)
    assert excinfo.value.code == 2


def test_verify_accepts_zero_trials(capsys):
    assert main(["verify", "--m", "4", "--trials", "0"]) == EXIT_OK


def test_cluster_check(capsys):
    assert main(["cluster-check", "--max", "12"]) == EXIT_OK
    assert capsys.readouterr().out.strip().splitlines()[-1] == "10 of 10 equalities hold"
    code, payload = run_json(capsys, ["cluster-check", "--max", "2"])
    assert code == EXIT_OK and payload == {"ok": True, "rows": []}


def test_matrices(capsys):
    assert main(["matrices", "--m", "11", "--p", "0,2,4,4,5,6", "--jk", "1,7"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "N1 of (0,2,4,4,5,6) (7x9):" in out
    assert "A_1,7 of (0,2,4,4,5,6)" in out
    code, payload = run_json(capsys, ["matrices", "--m", "11", "--p", "0,2,4,6"])
    assert [block["name"] for block in payload["matrices"]] == ["N2-full", "N2", "N1", "S'"]


def test_matrices_rejects_pairs_outside_jk(capsys):
    assert main(["matrices", "--m", "11", "--p", "0,2,4,6", "--jk", "2,3"]) == EXIT_USAGE
    with pytest.raises(SystemExit):
        main(["matrices", "--m", "11", "--jk", "nonsense"])


def test_relations(capsys):
    code, payload = run_json(capsys, ["relations", "--m", "11", "--p", "0,2,4,6"])
    assert code == EXIT_OK
    assert payload["solving_order"] == [[1, 3], [5, 7], [1, 8], [5, 8], [1, 7]]
    assert payload["structure"]["ok"]
    assert main(["relations", "--m", "11", "--p", "0,2,4,4,5,6"]) == EXIT_OK
    assert "D-hat_1,8 = " in capsys.readouterr().out


def test_tree(capsys):
    assert main(["tree", "--eta", "1", "--nu", "1", "--mu", "3", "--n", "3"]) == EXIT_OK
    assert capsys.readouterr().out.strip().endswith("13 vertices")
    code, payload = run_json(capsys, ["tree", "--eta", "2", "--nu", "1", "--mu", "3", "--n", "3"])
    assert payload["size"] == 8 and len(payload["vertices"]) == 8


def test_census(capsys):
    assert main(["census", "--m", "5"]) == EXIT_OK
    assert capsys.readouterr().out.strip().splitlines()[-1] == "13 cells for m=5"


def test_invalid_configuration(capsys, monkeypatch):
    monkeypatch.setattr(Settings, "WORKERS", 0)
    assert main(["enumerate", "--m", "4"]) == EXIT_USAGE
    assert "KRONECKER_WORKERS" in capsys.readouterr().err


def test_log_level_flag(capsys):
    assert main(["enumerate", "--m", "3", "--log-level", "loud"]) == EXIT_USAGE
    assert main(["enumerate", "--m", "3", "--log-level", "info"]) == EXIT_OK
    assert Settings.LOG_LEVEL == "INFO"
