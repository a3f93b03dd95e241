"""Scoring with option-text tolerance, aggregation, and report rendering."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .baselines import MethodId
from .engine import Prediction, run_instance
from .errors import ParseUnsupported, PseudoexecError
from .tasks import SHORT_CODES, TaskId, TaskInstance, solve

TASK_ORDER = (TaskId.DYCK_LANGUAGES, TaskId.GEOMETRIC_SHAPES, TaskId.NAVIGATE,
              TaskId.COLORED_OBJECTS, TaskId.TEMPORAL_SEQUENCES,
              TaskId.SHUFFLED_OBJECTS, TaskId.WEB_OF_LIES)


@dataclass
class TaskTally:
    correct: int = 0
    total: int = 0
    parse_unsupported: int = 0

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0


@dataclass
class EvalReport:
    method: MethodId
    model_id: str
    per_task: dict[TaskId, TaskTally] = field(default_factory=dict)

    @property
    def average_accuracy(self) -> float:
        populated = [t for t in self.per_task.values() if t.total]
        if not populated:
            return 0.0
        return sum(t.accuracy for t in populated) / len(populated)


def _normalize(text: str) -> str:
    text = text.strip().casefold()
    if text.endswith("."):
        text = text[:-1].strip()
    return text


def score_prediction(prediction: Prediction, instance: TaskInstance) -> bool:
    """Exact match after normalization, with the multiple-choice tolerance:
    the tag alone, the full "(A) text" string, or the option text alone all
    count as naming the correct choice."""
    if prediction.final_answer is None:
        return False
    pred = _normalize(prediction.final_answer)
    accepted = {_normalize(instance.target)}
    for tag, text in instance.options:
        if tag == instance.target:
            accepted.add(_normalize(f"{tag} {text}"))
            accepted.add(_normalize(text))
    return pred in accepted


def evaluate_run(method: MethodId, instances: list[TaskInstance], gateway,
                 assets_by_task: dict[TaskId, dict] | None = None,
                 model_id: str = "mock-model",
                 on_prediction=None,
                 **run_kwargs) -> EvalReport:
    """Score every instance under one method.  Oracle mode routes through
    the task solvers and needs no gateway.  ``on_prediction(index, instance,
    prediction, correct)`` is called per item, in input order, for callers
    that persist transcripts."""
    if not instances:
        raise ValueError("instances must be non-empty")
    report = EvalReport(method=method, model_id=model_id)
    for index, instance in enumerate(instances):
        tally = report.per_task.setdefault(instance.task, TaskTally())
        tally.total += 1
        if method is MethodId.ORACLE:
            prediction = _oracle_prediction(instance, tally)
        else:
            assets = (assets_by_task or {}).get(instance.task, {})
            prediction = run_instance(method, instance, assets, gateway,
                                      model_id=model_id, **run_kwargs)
        correct = score_prediction(prediction, instance)
        if correct:
            tally.correct += 1
        if on_prediction is not None:
            on_prediction(index, instance, prediction, correct)
    return report


def _oracle_prediction(instance: TaskInstance, tally: TaskTally) -> Prediction:
    try:
        answer = solve(instance.task, instance)
    except ParseUnsupported as exc:
        tally.parse_unsupported += 1
        return Prediction(transcript=str(exc), outputs=(),
                          final_answer=None, failure=f"parse_unsupported: {exc}")
    except PseudoexecError as exc:
        return Prediction(transcript=str(exc), outputs=(),
                          final_answer=None, failure=f"solver_error: {exc}")
    return Prediction(transcript=f"Final answer: {answer}",
                      outputs=(f"Final answer: {answer}",),
                      final_answer=answer)


def _percent(value: float) -> str:
    return f"{100.0 * value:.1f}"


def render_report(report: EvalReport, format: str = "markdown") -> str:
    cells = [_percent(report.per_task.get(task, TaskTally()).accuracy)
             for task in TASK_ORDER]
    cells.append(_percent(report.average_accuracy))
    headers = [SHORT_CODES[task] for task in TASK_ORDER] + ["Avg"]
    method_name = report.method.value
    if format == "markdown":
        lines = [
            "| Method | " + " | ".join(headers) + " |",
            "|" + "---|" * (len(headers) + 1),
            "| " + method_name + " | " + " | ".join(cells) + " |",
        ]
        parse_un = sum(t.parse_unsupported for t in report.per_task.values())
        lines.append("")
        lines.append(f"Model: {report.model_id}. "
                     f"ParseUnsupported (counted incorrect): {parse_un}.")
        return "\n".join(lines) + "\n"
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["method"] + headers)
        writer.writerow([method_name] + cells)
        return buf.getvalue()
    raise ValueError(f"unknown report format {format!r}")
