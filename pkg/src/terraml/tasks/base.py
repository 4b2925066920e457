"""Task contract: executable workflows with tracked artifacts."""

from __future__ import annotations

import json
import os
import time
import warnings
from dataclasses import dataclass, field

from ..errors import LockHeld, SchemaError, TerramlError
from ..params import Param, validate_params

LOCK_FILE = "run.lock"
STALE_LOCK_SECONDS = 24 * 3600


@dataclass(frozen=True)
class Artifact:
    kind: str
    path: str


@dataclass
class TaskResult:
    status: str  # "ok" | "failed"
    artifacts: tuple[Artifact, ...] = ()
    summary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def acquire_lock(directory) -> str:
    """Exclusive run.lock in the artifact directory; stale locks reclaimed."""
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(os.fspath(directory), LOCK_FILE)
    if os.path.exists(path):
        age = time.time() - os.path.getmtime(path)
        if age < STALE_LOCK_SECONDS:
            raise LockHeld(f"{path} exists (age {age:.0f}s); another run owns this directory")
        warnings.warn(f"reclaiming stale lock {path} (age {age / 3600.0:.1f}h)", stacklevel=2)
        os.unlink(path)
    fd = os.open(path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        json.dump({"pid": os.getpid(), "created": time.time()}, fh)
    return path


def release_lock(path: str) -> None:
    if path and os.path.exists(path):
        os.unlink(path)


class Task:
    """One executable workflow; subclasses implement execute()."""

    CLASSNAME = ""
    REQUIRED_SLOTS: tuple[str, ...] = ()
    OPTIONAL_SLOTS: tuple[str, ...] = ()
    PARAMS: dict[str, Param] = {}

    def __init__(
        self,
        config: dict | None = None,
        model=None,
        train_dataset=None,
        val_dataset=None,
        seed: int = 42,
        run_seed: int = 42,
        run_config=None,
    ):
        self.config = validate_params(dict(config or {}), type(self).PARAMS, "task.config")
        self.model = model
        self.train_dataset = train_dataset
        self.val_dataset = val_dataset
        self.seed = seed
        self.run_seed = run_seed
        self.run_config = run_config
        slots = {"model": model, "train_dataset": train_dataset, "val_dataset": val_dataset}
        for slot in type(self).REQUIRED_SLOTS:
            if slots.get(slot) is None:
                raise SchemaError(f"task {type(self).CLASSNAME} requires {slot!r}", slot)

    def artifact_root(self) -> str | None:
        """Directory this run owns exclusively (None: no lock taken)."""
        return None

    def execute(self) -> TaskResult:
        raise NotImplementedError

    def run(self) -> TaskResult:
        """Executes with the artifact-directory lock held; failures become a
        failed TaskResult instead of an exception."""
        root = self.artifact_root()
        lock = None
        try:
            if root:
                lock = acquire_lock(root)
            result = self.execute()
            missing = [a.path for a in result.artifacts if not os.path.exists(a.path)]
            if result.ok and missing:
                raise TerramlError(f"task reported ok but artifacts are missing: {missing}")
            return result
        except (TerramlError, OSError) as exc:
            return TaskResult(
                status="failed",
                summary={"error": str(exc), "error_type": type(exc).__name__},
            )
        finally:
            if lock:
                release_lock(lock)

    def write_json(self, path, payload: dict) -> None:
        os.makedirs(os.path.dirname(os.fspath(path)) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
