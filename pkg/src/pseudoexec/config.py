"""Run configuration: JSON file with a flat schema, flag overrides, and a
canonical serialization used for content-derived run ids."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .baselines import DEFAULT_TIMEOUT_MS, MethodId
from .errors import ConfigError
from .tasks import TaskId

MODES = ("live", "record", "replay", "mock")

DEFAULT_ENDPOINT = "https://api.openai.com/v1/chat/completions"
DEFAULT_CREDENTIAL_ENV = "PSEUDOEXEC_API_KEY"


@dataclass
class RunConfig:
    dataset_dir: str = "."
    runs_dir: str = "runs"
    mode: str = "mock"
    cassette_path: str | None = None
    endpoint: str = DEFAULT_ENDPOINT
    credential_env: str = DEFAULT_CREDENTIAL_ENV
    instructor_model: str = "mock-model"
    reasoner_model: str = "mock-model"
    method: str = MethodId.THINK_AND_EXECUTE.value
    tasks: list[str] = field(
        default_factory=lambda: [t.value for t in TaskId])
    seed: int = 0
    max_parallel: int = 1
    pseudocode_source: str = "human"
    interpreter_command: list[str] = field(
        default_factory=lambda: ["python3"])
    sandbox_timeout_ms: int = DEFAULT_TIMEOUT_MS
    keep_sandbox: bool = False
    mock_corrupt_fraction: float = 0.2

    def method_id(self) -> MethodId:
        try:
            return MethodId(self.method)
        except ValueError:
            raise ConfigError(f"unknown method {self.method!r}") from None

    def task_ids(self) -> list[TaskId]:
        try:
            return [TaskId(t) for t in self.tasks]
        except ValueError as exc:
            raise ConfigError(f"unknown task in config: {exc}") from None

    def validate(self) -> "RunConfig":
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.max_parallel < 1:
            raise ConfigError("max_parallel must be >= 1")
        if not Path(self.dataset_dir).is_dir():
            raise ConfigError(f"dataset_dir {self.dataset_dir!r} not found")
        if self.mode in ("record", "replay") and not self.cassette_path:
            raise ConfigError(f"mode {self.mode!r} requires cassette_path")
        if self.mode == "replay" and not Path(self.cassette_path).is_file():
            raise ConfigError(
                f"cassette {self.cassette_path!r} not found")
        self.method_id()
        self.task_ids()
        return self

    def canonical_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, ensure_ascii=False)


def load_config(path: str | Path | None,
                overrides: dict | None = None) -> RunConfig:
    data: dict = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError(f"config file {path!r} not found") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config root must be a JSON object")
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    known = set(RunConfig.__dataclass_fields__)
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return RunConfig(**data).validate()


def run_id(config: RunConfig, dataset_digest: str) -> str:
    """Content-derived run id: reruns of the same effective config over the
    same dataset collide on purpose."""
    blob = config.canonical_json() + "\n" + dataset_digest
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:12]
