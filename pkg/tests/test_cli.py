"""CLI surface tests: ingest, run, oracle, report, ablate, error paths."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from pseudoexec.cli import main
from pseudoexec.tasks import TaskId
from pseudoexec.tasks.generate import generate_instance


@pytest.fixture()
def bbh_dir(tmp_path: Path) -> Path:
    src = tmp_path / "bbh"
    src.mkdir()
    for task in (TaskId.NAVIGATE, TaskId.WEB_OF_LIES):
        examples = [
            {"input": generate_instance(task, s, 3).input_text,
             "target": generate_instance(task, s, 3).target}
            for s in range(4)
        ]
        (src / f"{task.value}.json").write_text(
            json.dumps({"examples": examples}), encoding="utf-8")
    return src


def _write_config(tmp_path: Path, **extra) -> Path:
    base = {
        "dataset_dir": str(Path("src/pseudoexec/assets/fixtures/replay")
                           .resolve()),
        "runs_dir": str(tmp_path / "runs"),
        "mode": "replay",
        "cassette_path": str(Path("src/pseudoexec/assets/replay/"
                                  "cassette.jsonl").resolve()),
        "method": "think_and_execute",
    }
    base.update(extra)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(base), encoding="utf-8")
    return path


def test_ingest_writes_normalized_fixtures(bbh_dir, capsys):
    out = bbh_dir.parent / "normalized"
    assert main(["ingest", str(bbh_dir), "--out", str(out)]) == 0
    captured = capsys.readouterr().out
    assert "navigate: 4" in captured
    first = (out / "navigate.jsonl").read_bytes()
    assert main(["ingest", str(bbh_dir), "--out", str(out)]) == 0
    assert (out / "navigate.jsonl").read_bytes() == first   # idempotent


def test_ingest_rejects_missing_target(tmp_path):
    src = tmp_path / "bbh"
    src.mkdir()
    (src / "navigate.json").write_text(
        json.dumps({"examples": [{"input": "x"}]}), encoding="utf-8")
    assert main(["ingest", str(src)]) == 2


def test_run_replay_deterministic(tmp_path, capsys):
    config = _write_config(tmp_path)
    assert main(["run", "--config", str(config)]) == 0
    runs = tmp_path / "runs"
    run_dir = next(d for d in runs.iterdir() if d.is_dir())
    report1 = (run_dir / "report.md").read_bytes()
    manifest1 = (run_dir / "manifest.json").read_bytes()
    assert main(["run", "--config", str(config)]) == 0
    assert [d for d in runs.iterdir() if d.is_dir()] == [run_dir]
    assert (run_dir / "report.md").read_bytes() == report1
    assert (run_dir / "manifest.json").read_bytes() == manifest1
    capsys.readouterr()


def test_run_unknown_task_in_config(tmp_path):
    config = _write_config(tmp_path, tasks=["navigate", "unknown_task"])
    assert main(["run", "--config", str(config)]) == 2


def test_run_persists_transcripts(tmp_path):
    config = _write_config(tmp_path, tasks=["navigate"])
    assert main(["run", "--config", str(config)]) == 0
    run_dir = next(d for d in (tmp_path / "runs").iterdir() if d.is_dir())
    transcripts = sorted((run_dir / "navigate").glob("*.txt"))
    assert len(transcripts) == 20


def test_oracle_command_all_100(tmp_path, capsys):
    config = _write_config(
        tmp_path,
        dataset_dir=str(Path("src/pseudoexec/assets/fixtures/paper")
                        .resolve()))
    assert main(["oracle", "--config", str(config)]) == 0
    out = capsys.readouterr().out
    for task in TaskId:
        assert f"{task.value}: 100.0" in out
    assert "average: 100.0" in out


def test_report_rerenders_stored_run(tmp_path, capsys):
    config = _write_config(tmp_path)
    assert main(["run", "--config", str(config)]) == 0
    run_dir = next(d for d in (tmp_path / "runs").iterdir() if d.is_dir())
    stored_csv = (run_dir / "report.csv").read_text()
    capsys.readouterr()
    assert main(["report", run_dir.name, "--config", str(config),
                 "--format", "csv"]) == 0
    assert capsys.readouterr().out == stored_csv


def test_report_unknown_run_id(tmp_path):
    config = _write_config(tmp_path)
    assert main(["report", "deadbeef", "--config", str(config)]) == 2


def test_ablate_command(capsys):
    assert main(["ablate", "--task", "dyck_languages"]) == 0
    out = capsys.readouterr().out
    assert "X1" in out
    assert "#" not in out


def test_replay_mode_requires_cassette(tmp_path):
    config = _write_config(tmp_path,
                           cassette_path=str(tmp_path / "missing.jsonl"))
    assert main(["run", "--config", str(config)]) == 2


def test_seed_flag_overrides_config(tmp_path):
    config = _write_config(tmp_path, seed=3)
    from pseudoexec.cli import _load_effective_config
    import argparse

    args = argparse.Namespace(config=str(config), seed=9, mode=None,
                              keep_sandbox=None)
    assert _load_effective_config(args).seed == 9
