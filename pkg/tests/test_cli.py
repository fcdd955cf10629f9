import json
import os
import subprocess
import sys

import pytest

from daha import macdonald as Mac
from daha.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_epoly_compute_rank_one(capsys):
    code, doc = run_json(capsys, "epoly", "compute", "--type", "A", "--rank", "1", "--weight", "-1")
    assert code == EXIT_OK
    assert doc["weight"] == [-1]
    assert doc["ok"] is True
    assert doc["value_at_t_minus_rho"] == "(q*tl^(3/2) - tl^(-1/2))/(q*tl - 1)"
    assert len(doc["polynomial"]["terms"]) == 2


def test_verify_duality_range_three(capsys):
    code, doc = run_json(capsys, "verify", "duality", "--type", "A", "--rank", "1", "--range", "3")
    assert code == EXIT_OK
    assert doc["ok"] and doc["total"] == 21  # 7 weights, unordered pairs


def test_rootsys_show_g2(capsys):
    code, doc = run_json(capsys, "rootsys", "show", "--type", "G", "--rank", "2")
    assert code == EXIT_OK
    assert len(doc["positive_roots"]) == 6
    assert doc["weyl_order"] == 12
    assert doc["minuscule"] == []


def test_type_shorthand(capsys):
    code, doc = run_json(capsys, "rootsys", "show", "--type", "B2")
    assert code == EXIT_OK and doc["system"] == "B2"


def test_weyl_commands(capsys):
    code, doc = run_json(capsys, "weyl", "word", "--type", "A1", "--weight", "1")
    assert code == EXIT_OK
    assert doc["pi"] == 1 and doc["word"] == []
    code, doc = run_json(capsys, "weyl", "sigma", "--type", "A1", "--weight", "-2")
    assert code == EXIT_OK
    assert sorted(doc["sigma_plus"]) == [[0]]


@pytest.mark.parametrize(
    "what, extra",
    [
        ("relations", ["--samples", "5"]),
        ("evaluation", []),
        ("norms", ["--k", "1"]),
        ("consterm", ["--k", "1", "2"]),
        ("pieri", []),
        ("symmetric", []),
        ("shift", ["--range", "2"]),
    ],
)
def test_verify_checks_pass_in_rank_one(capsys, what, extra):
    code, doc = run_json(capsys, "verify", what, "--type", "A1", *extra)
    assert code == EXIT_OK, doc
    assert doc["check"] == what and doc["ok"]


def test_consterm_reports_one_plus_q(capsys):
    _, doc = run_json(capsys, "verify", "consterm", "--type", "A1", "--k", "1")
    assert doc["cases"][0]["constant_term"] == "q + 1"


def test_unity_build_and_sl2(capsys):
    code, doc = run_json(capsys, "unity", "build", "--type", "A1", "--N", "7", "--k", "1")
    assert code == EXIT_OK
    assert doc["dimension"] == 5 and doc["labels"][0] == [0]
    code, doc = run_json(capsys, "unity", "sl2check", "--type", "A1", "--N", "7", "--k", "1")
    assert code == EXIT_OK and doc["ok"]


def test_generic_unity_sl2_reports_failure(capsys):
    # no diagonal Gaussian realizes the conjugation identities at free t
    code, doc = run_json(capsys, "unity", "sl2check", "--type", "A1", "--N", "3")
    assert code == EXIT_FAILED
    assert doc["ok"] is False


def test_usage_errors(capsys):
    assert run(capsys, "rootsys", "show", "--type", "Q", "--rank", "2")[0] == EXIT_USAGE
    assert run(capsys, "epoly", "compute", "--type", "A1", "--weight", "1", "2")[0] == EXIT_USAGE
    assert run(capsys, "verify", "shift", "--type", "A2")[0] == EXIT_USAGE
    assert run(capsys, "unity", "build", "--type", "A1", "--N", "3", "--k", "2")[0] == EXIT_USAGE
    assert run(capsys, "nonsense")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE


def test_config_file_merges_under_flags(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("type = A\nrank = 1\nweight = 2\n", encoding="utf-8")
    code, doc = run_json(capsys, "--config", str(cfg), "epoly", "compute")
    assert code == EXIT_OK and doc["weight"] == [2]
    code, doc = run_json(capsys, "epoly", "compute", "--config", str(cfg), "--weight", "-2")
    assert doc["weight"] == [-2]


def test_missing_config_is_a_usage_error(capsys, tmp_path):
    assert run(capsys, "rootsys", "show", "--config", str(tmp_path / "none.cfg"))[0] == EXIT_USAGE


def test_output_file_and_table_format(capsys, tmp_path):
    out = tmp_path / "report.txt"
    code, stdout, _ = run(capsys, "verify", "evaluation", "--type", "A1", "--format", "table", "--output", str(out))
    assert code == EXIT_OK and stdout == ""
    text = out.read_text(encoding="utf-8")
    assert "pass" in text and "FAIL" not in text


def test_identical_runs_are_byte_identical(capsys):
    argv = ["epoly", "compute", "--type", "B2", "--weight", "-1", "1", "--normalized"]
    _, first, _ = run(capsys, *argv)
    Mac.clear_memo()
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_disk_cache_round_trip(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("DAHA_CACHE_DIR", str(tmp_path))
    Mac.clear_memo()
    _, first, _ = run(capsys, "epoly", "compute", "--type", "A2", "--weight", "1", "-1")
    assert os.listdir(tmp_path)
    Mac.clear_memo()
    _, second, _ = run(capsys, "epoly", "compute", "--type", "A2", "--weight", "1", "-1")
    assert first == second
    Mac.clear_memo()


def test_module_entry_point():
    env = dict(os.environ, PYTHONPATH=os.pathsep.join(sys.path))
    res = subprocess.run(
        [sys.executable, "-m", "daha", "rootsys", "show", "--type", "A1"],
        capture_output=True, text=True, env=env, check=False,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["m"] == 2
