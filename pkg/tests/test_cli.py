import json
import subprocess
import sys

import pytest

from rigidpack import graph6
from rigidpack.cli import RunConfig, main
from rigidpack.errors import ParameterError
from rigidpack.graph import ExtremalParams, build_extremal, complete


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "--n", "18", "--delta", "6", "--k", "1")
    assert code == 0
    assert graph6.decode(out.strip()) == build_extremal(ExtremalParams(18, 6, 1))
    code, out, _ = run(capsys, "construct", "--n", "18", "--delta", "6", "--k", "2", "--class-index", "5")
    assert code == 0 and graph6.decode(out.strip()).m == 88


def test_spectral_text_and_json(capsys, tmp_path):
    f = tmp_path / "k4.g6"
    f.write_text("C~\n")
    code, out, _ = run(capsys, "--format", "text", "spectral", "--graph", str(f))
    assert code == 0 and "lambda1 = 3.000000000000" in out
    code, out, _ = run(capsys, "spectral", "--graph", str(f), "--vector")
    doc = json_lines(out)[0]
    assert doc["lambda1"] == 3.0 and doc["mu2"] == 4.0 and len(doc["perron_vector"]) == 4


def test_pack_refutation(capsys):
    code, out, _ = run(capsys, "pack", "--extremal", "18", "6", "1", "--k", "1", "--ell", "1")
    doc = json_lines(out)[0]
    assert code == 0
    assert doc["verdict"] == "refuted" and doc["verified"]
    assert doc["witness_terms"]["value"] < doc["target"]


def test_rank_subset(capsys, tmp_path):
    f = tmp_path / "k4.g6"
    f.write_text("C~\n")
    code, out, _ = run(capsys, "rank", "--graph", str(f), "--k", "1", "--ell", "1", "--subset", "0,1,2")
    doc = json_lines(out)[0]
    assert doc["rigid_rank"] == 3 and doc["circuit_rank"] == 2 and doc["outside"] == 3
    assert doc["value"] == 8 and doc["target"] == 8


def test_verify_extremal_and_summary(capsys):
    code, out, _ = run(capsys, "verify", "--extremal", "--n", "18", "--delta", "6", "--k", "1")
    recs = json_lines(out)
    assert code == 0
    assert recs[0]["verdict"] == "consistent" and recs[0]["is_extremal_iso"]
    assert recs[-1]["summary"]["records"] == 1


def test_cdg(capsys, tmp_path):
    f = tmp_path / "k13.g6"
    f.write_text(graph6.encode(complete(13)) + "\n")
    code, out, _ = run(capsys, "cdg", "--graph", str(f), "--k", "2")
    doc = json_lines(out)[0]
    assert code == 0 and doc["condition1"] and doc["packed_k_rigid"]


def test_malformed_graph6_exit_2(capsys, tmp_path):
    f = tmp_path / "bad.g6"
    f.write_text("C~\nC!\n")
    code, _, err = run(capsys, "spectral", "--graph", str(f))
    assert code == 2 and "line 2" in err


def test_parameter_error_exit_2(capsys):
    code, _, err = run(capsys, "construct", "--n", "10", "--delta", "6", "--k", "1")
    assert code == 2 and "usage" in err
    code, _, _ = run(capsys, "spectral")
    assert code == 2


def test_budget_exit_3(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"class_budget": 10}))
    code, _, err = run(capsys, "--config", str(cfg), "set-extremal", "--n", "18", "--delta", "6", "--k", "3")
    assert code == 3 and "budget" in err


def test_config_env_and_validation(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "text"}))
    monkeypatch.setenv("RIGIDPACK_CONFIG", str(cfg))
    code, out, _ = run(capsys, "spectral", "--extremal", "4", "1", "1")
    assert code == 0 and "lambda1 = " in out
    cfg.write_text(json.dumps({"bogus": 1}))
    code, _, _ = run(capsys, "spectral", "--extremal", "4", "1", "1")
    assert code == 2
    with pytest.raises(ParameterError):
        RunConfig(tolerance=1e-6, margin=1e-9)


def test_output_file(capsys, tmp_path):
    out_path = tmp_path / "out.jsonl"
    code, out, _ = run(capsys, "--output", str(out_path), "spectral", "--extremal", "18", "6", "1")
    assert code == 0 and out == ""
    assert json_lines(out_path.read_text())[0]["n"] == 18


def _cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "rigidpack.cli", *argv], capture_output=True, check=False
    )


def test_seeded_verify_is_byte_identical():
    argv = ("verify", "--trials", "3", "--seed", "11", "--n", "18", "--delta", "6", "--k", "1")
    a, b = _cli(*argv), _cli(*argv)
    assert a.returncode == 0
    assert a.stdout == b.stdout and a.stdout
