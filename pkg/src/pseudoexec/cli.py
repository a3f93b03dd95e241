"""Command-line surface: ingest, think, run, oracle, report, ablate."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import baselines
from .baselines import MethodId
from .config import RunConfig, load_config, run_id
from .errors import MalformedDataset, PseudoexecError
from .evaluator import (EvalReport, TaskTally, evaluate_run, render_report)
from .gateway import (Gateway, LiveGateway, MockGateway, RecordGateway,
                      ReplayGateway, oracle_responder)
from .prompts import (ablate_prompt, default_demo_pool, load_nl_plan,
                      load_pseudocode, run_think, simulate_instructor)
from .tasks import TaskId, TaskInstance, make_instance

TASK_CHOICES = [t.value for t in TaskId]


# --- dataset files -----------------------------------------------------------

def write_dataset(instances: list[TaskInstance], out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    by_task: dict[TaskId, list[TaskInstance]] = {}
    for inst in instances:
        by_task.setdefault(inst.task, []).append(inst)
    for task, items in by_task.items():
        lines = [json.dumps({"task": task.value,
                             "input_text": inst.input_text,
                             "target": inst.target},
                            ensure_ascii=False)
                 for inst in items]
        (out_dir / f"{task.value}.jsonl").write_text(
            "\n".join(lines) + "\n", encoding="utf-8")


def load_dataset(dataset_dir: Path,
                 tasks: list[TaskId]) -> list[TaskInstance]:
    instances: list[TaskInstance] = []
    for task in tasks:
        path = dataset_dir / f"{task.value}.jsonl"
        if not path.is_file():
            raise MalformedDataset(f"missing dataset file {path}", path=path)
        for index, line in enumerate(
                path.read_text(encoding="utf-8").splitlines()):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                instances.append(make_instance(
                    task, obj["input_text"], obj["target"]))
            except (KeyError, ValueError) as exc:
                raise MalformedDataset(
                    f"{path} record {index}: {exc}",
                    path=path, index=index) from exc
    return instances


def dataset_digest(dataset_dir: Path, tasks: list[TaskId]) -> str:
    hasher = hashlib.sha256()
    for task in tasks:
        path = dataset_dir / f"{task.value}.jsonl"
        hasher.update(task.value.encode())
        if path.is_file():
            hasher.update(path.read_bytes())
    return hasher.hexdigest()


# --- gateway construction ----------------------------------------------------

def build_gateway(config: RunConfig) -> Gateway:
    if config.mode == "mock":
        return MockGateway(responders={
            "reasoner": oracle_responder(config.mock_corrupt_fraction),
            "instructor": simulate_instructor,
        })
    if config.mode == "replay":
        return ReplayGateway(Path(config.cassette_path))
    live = LiveGateway(config.endpoint, config.credential_env)
    if config.mode == "record":
        return RecordGateway(live, Path(config.cassette_path))
    return live


# --- commands ----------------------------------------------------------------

def cmd_ingest(args) -> int:
    src = Path(args.dataset_dir)
    out = Path(args.out) if args.out else src / "normalized"
    instances: list[TaskInstance] = []
    for task in TaskId:
        path = src / f"{task.value}.json"
        if not path.is_file():
            continue
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise MalformedDataset(f"{path}: {exc}", path=path) from exc
        examples = data.get("examples")
        if not isinstance(examples, list):
            raise MalformedDataset(f"{path}: no 'examples' array", path=path)
        count = 0
        for index, record in enumerate(examples):
            if not isinstance(record, dict) or \
                    "input" not in record or "target" not in record:
                raise MalformedDataset(
                    f"{path} record {index}: needs 'input' and 'target'",
                    path=path, index=index)
            instances.append(make_instance(
                task, record["input"], record["target"]))
            count += 1
        print(f"{task.value}: {count}")
    if not instances:
        raise MalformedDataset(f"no task files found under {src}", path=src)
    write_dataset(instances, out)
    print(f"normalized fixtures written to {out}")
    return 0


def cmd_think(args, config: RunConfig) -> int:
    task = TaskId(args.task)
    gateway = build_gateway(config)
    out_dir = Path(args.out) if args.out else \
        Path(config.runs_dir) / "think"
    analysis, pseudocode = run_think(
        task, gateway, config.seed,
        demos=default_demo_pool(config.pseudocode_source),
        model_id=config.instructor_model, out_dir=out_dir)
    print(f"analysis: {out_dir / (task.value + '.analysis.txt')}")
    print(f"pseudocode ({pseudocode.function_name}): "
          f"{out_dir / (task.value + '.txt')}")
    return 0


def _task_assets(config: RunConfig) -> dict[TaskId, dict]:
    method = config.method_id()
    assets: dict[TaskId, dict] = {}
    for task in config.task_ids():
        entry: dict = {}
        if method is MethodId.THINK_AND_EXECUTE:
            entry["pseudocode"] = load_pseudocode(
                task, config.pseudocode_source)
        elif method is MethodId.NL_PLANNING:
            entry["nl_plan"] = load_nl_plan(task)
        assets[task] = entry
    return assets


def cmd_run(args, config: RunConfig) -> int:
    tasks = config.task_ids()
    dataset_dir = Path(config.dataset_dir)
    instances = load_dataset(dataset_dir, tasks)
    digest = dataset_digest(dataset_dir, tasks)
    rid = run_id(config, digest)
    run_dir = Path(config.runs_dir) / rid
    run_dir.mkdir(parents=True, exist_ok=True)

    method = config.method_id()
    gateway = None if method is MethodId.ORACLE else build_gateway(config)
    counters: dict[TaskId, int] = {}

    def persist(index, instance, prediction, correct):
        idx = counters.get(instance.task, 0)
        counters[instance.task] = idx + 1
        task_dir = run_dir / instance.task.value
        task_dir.mkdir(exist_ok=True)
        verdict = "correct" if correct else "incorrect"
        body = (f"# instance {idx} [{verdict}]"
                f" target={instance.target!r}"
                f" answer={prediction.final_answer!r}"
                f" failure={prediction.failure!r}\n"
                + prediction.transcript + "\n")
        (task_dir / f"{idx}.txt").write_text(body, encoding="utf-8")

    report = evaluate_run(
        method, instances, gateway, _task_assets(config),
        model_id=config.reasoner_model, on_prediction=persist,
        interpreter_command=config.interpreter_command,
        sandbox_timeout_ms=config.sandbox_timeout_ms,
        credential_env=config.credential_env)

    cassette_digest = None
    if config.cassette_path and Path(config.cassette_path).is_file():
        cassette_digest = hashlib.sha256(
            Path(config.cassette_path).read_bytes()).hexdigest()
    manifest = {
        "run_id": rid,
        "method": method.value,
        "model_id": config.reasoner_model,
        "dataset_digest": digest,
        "cassette_digest": cassette_digest,
        "config_hash": hashlib.sha256(
            config.canonical_json().encode()).hexdigest(),
        "effective_config": json.loads(config.canonical_json()),
        "per_task": {
            task.value: {"correct": tally.correct, "total": tally.total,
                         "parse_unsupported": tally.parse_unsupported}
            for task, tally in sorted(report.per_task.items(),
                                      key=lambda kv: kv[0].value)
        },
        "average_accuracy": report.average_accuracy,
    }
    (run_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    (run_dir / "report.md").write_text(
        render_report(report, "markdown"), encoding="utf-8")
    (run_dir / "report.csv").write_text(
        render_report(report, "csv"), encoding="utf-8")
    print(f"run {rid} complete")
    print(render_report(report, "markdown"), end="")
    return 0


def cmd_oracle(args, config: RunConfig) -> int:
    tasks = [TaskId(t) for t in args.tasks.split(",")] if args.tasks \
        else config.task_ids()
    instances = load_dataset(Path(config.dataset_dir), tasks)
    report = evaluate_run(MethodId.ORACLE, instances, None)
    for task in tasks:
        tally = report.per_task.get(task, TaskTally())
        rate = (tally.parse_unsupported / tally.total * 100
                if tally.total else 0.0)
        print(f"{task.value}: {tally.accuracy * 100:.1f} "
              f"(parse_unsupported {rate:.1f}%)")
    print(f"average: {report.average_accuracy * 100:.1f}")
    return 0


def cmd_report(args, config: RunConfig) -> int:
    manifest_path = Path(config.runs_dir) / args.run_id / "manifest.json"
    if not manifest_path.is_file():
        raise PseudoexecError(f"no manifest at {manifest_path}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    report = EvalReport(
        method=MethodId(manifest["method"]),
        model_id=manifest["model_id"],
        per_task={
            TaskId(name): TaskTally(correct=t["correct"], total=t["total"],
                                    parse_unsupported=t["parse_unsupported"])
            for name, t in manifest["per_task"].items()
        })
    print(render_report(report, args.format), end="")
    return 0


def cmd_ablate(args) -> int:
    asset = load_pseudocode(TaskId(args.task), args.source)
    ablated = ablate_prompt(asset)
    if args.out:
        Path(args.out).write_text(ablated.body + "\n", encoding="utf-8")
        print(f"ablated prompt written to {args.out}")
    else:
        print(ablated.body)
    return 0


# --- argument parsing --------------------------------------------------------

def _make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a JSON run config")
    common.add_argument("--seed", type=int, help="override config seed")
    common.add_argument("--mode", choices=("live", "record", "replay", "mock"),
                        help="override gateway mode")
    common.add_argument("--keep-sandbox", action="store_true", default=None,
                        help="keep sandbox temp dirs for inspection")

    parser = argparse.ArgumentParser(
        prog="pseudoexec",
        description="Deterministic Think/Execute pseudocode-prompt harness "
                    "for seven algorithmic reasoning tasks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common],
                       help="normalize a BBH-format dataset directory")
    p.add_argument("dataset_dir")
    p.add_argument("--out")

    p = sub.add_parser("think", parents=[common],
                       help="generate analysis + pseudocode for one task")
    p.add_argument("--task", required=True, choices=TASK_CHOICES)
    p.add_argument("--out")

    sub.add_parser("run", parents=[common],
                   help="evaluate the configured method over the dataset")

    p = sub.add_parser("oracle", parents=[common],
                       help="oracle-solve the dataset and report accuracy")
    p.add_argument("--tasks", help="comma-separated task subset")

    p = sub.add_parser("report", parents=[common],
                       help="re-render a stored run report")
    p.add_argument("run_id")
    p.add_argument("--format", choices=("markdown", "csv"),
                   default="markdown")

    p = sub.add_parser("ablate", parents=[common],
                       help="print a prompt with comments/semantics stripped")
    p.add_argument("--task", required=True, choices=TASK_CHOICES)
    p.add_argument("--source", choices=("human", "generated"),
                   default="human")
    p.add_argument("--out")
    return parser


def _load_effective_config(args) -> RunConfig:
    overrides = {
        "seed": getattr(args, "seed", None),
        "mode": getattr(args, "mode", None),
        "keep_sandbox": getattr(args, "keep_sandbox", None),
    }
    return load_config(args.config, overrides)


def main(argv: list[str] | None = None) -> int:
    args = _make_parser().parse_args(argv)
    try:
        if args.command == "ingest":
            return cmd_ingest(args)
        if args.command == "ablate":
            return cmd_ablate(args)
        config = _load_effective_config(args)
        if args.command == "think":
            return cmd_think(args, config)
        if args.command == "run":
            return cmd_run(args, config)
        if args.command == "oracle":
            return cmd_oracle(args, config)
        if args.command == "report":
            return cmd_report(args, config)
        raise PseudoexecError(f"unknown command {args.command!r}")
    except PseudoexecError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
