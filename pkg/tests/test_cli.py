#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行工具测试
"""

import json

import pytest

from scripts import ncopt_cli, sqlite_cli
from src.sdp import import_sdpa
from src.store.sqlite_conn import get_sqlite_db
from src.store.sqlite_repo import RunRecordRepo

from conftest import SOHS_EXAMPLE


def _run(capsys, argv):
    code = ncopt_cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sohs_check_prints_certificate(capsys):
    code, out, err = _run(capsys, ["sohs-check", "--objective", SOHS_EXAMPLE, "--nvars", "2"])
    assert code == 0
    result = json.loads(out)
    assert result["status"] == "Feasible"
    assert result["command"] == "sohs-check"
    assert result["schema"] == 1
    assert result["certificate"]["residual_norm"] <= 1e-6
    assert "✅" in err


def test_trace_min_from_problem_file(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text(f"nvars = 2\nobjective = {SOHS_EXAMPLE}\n", encoding="utf-8")
    code, out, _ = _run(capsys, ["trace-min", "--order", "2", "--trials", "0", str(path)])
    assert code == 0
    result = json.loads(out)
    assert result["kind"] == "trace"
    assert result["status"] == "Optimal"
    assert abs(result["bounds"]["dual"]) <= 1e-6
    assert result["bounds"]["sample"] is None


def test_unbounded_exit_code(capsys):
    code, out, _ = _run(capsys, ["eig-min", "--objective", "x1", "--nvars", "1", "--order", "1",
                                 "--trials", "0"])
    assert code == 2
    result = json.loads(out)
    assert result["status"] == "Unbounded"
    assert result["bounds"]["dual"] == "-inf"


def test_eig_min_with_sampling_writes_out_file(tmp_path, capsys):
    out_path = tmp_path / "result.json"
    code, out, _ = _run(capsys, ["eig-min", "--objective", "x1^2-2*x1+3", "--nvars", "1",
                                 "--trials", "20", "--sizes", "1,2", "--seed", "4",
                                 "--out", str(out_path)])
    assert code == 0
    assert out == ""
    result = json.loads(out_path.read_text(encoding="utf-8"))
    assert result["bounds"]["dual"] == pytest.approx(2.0, abs=1e-6)
    assert result["bounds"]["sample"] >= result["bounds"]["dual"] - 1e-6
    assert result["metadata"]["sampling"]["seed"] == 4


def test_export_sdpa(tmp_path, capsys):
    out_path = tmp_path / "t.dat-s"
    code, _, _ = _run(capsys, ["export-sdpa", "--objective", SOHS_EXAMPLE, "--nvars", "2",
                               "--out", str(out_path)])
    assert code == 0
    problem = import_sdpa(out_path.read_text(encoding="utf-8"))
    assert problem.block_sizes == [7]


def test_psd_rank_from_csv(tmp_path, capsys):
    path = tmp_path / "m.csv"
    path.write_text("1,1\n1,1\n", encoding="utf-8")
    code, out, _ = _run(capsys, ["psd-rank", "--order", "2", str(path)])
    assert code == 0
    result = json.loads(out)
    assert result["bounds"]["dual"] <= 1 + 1e-6
    assert result["metadata"]["matrix_shape"] == [2, 2]


def test_bad_input_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("nvars = 2\nobjective = x + *y\n", encoding="utf-8")
    code, out, err = _run(capsys, ["trace-min", str(path)])
    assert code == 1
    assert out == ""
    assert "❌" in err
    assert "第2行" in err


def test_missing_input(capsys):
    code, _, err = _run(capsys, ["eig-min"])
    assert code == 1
    assert "❌" in err


def test_numeric_failure_exit_code(monkeypatch, capsys):
    def broken(args, mode):
        raise ValueError("array must not contain infs or NaNs")

    monkeypatch.setattr(ncopt_cli, "run_minimize", broken)
    code, out, err = _run(capsys, ["eig-min", "--objective", "x1^2", "--nvars", "1"])
    assert code == 1
    assert out == ""
    assert "数值计算失败" in err


def test_save_and_query_run(tmp_path, capsys):
    db_path = str(tmp_path / "runs.db")
    code, _, err = _run(capsys, ["sohs-check", "--objective", "x1^2+1", "--nvars", "1",
                                 "--save", "--db", db_path])
    assert code == 0
    assert "💾" in err
    with get_sqlite_db(db_path) as db:
        records = RunRecordRepo.list_latest(db.get_connection(), 5)
    assert len(records) == 1
    assert records[0].command == "sohs-check"

    assert sqlite_cli.main(["-q", records[0].run_id, "--db", db_path]) == 0
    assert "sohs-check" in capsys.readouterr().out
    assert sqlite_cli.main(["-q", "missing", "--db", db_path]) == 1
