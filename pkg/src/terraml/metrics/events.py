"""Append-only scalar event log.

One JSON object per line with keys exactly ``run_id, step, epoch, tag, value,
time`` (time in ISO-8601 UTC). Losses and evaluation metrics land here during
training so runs can be plotted or exported later.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from datetime import datetime, timezone

from ..errors import MonotonicityViolation, NonFiniteValue

_KEYS = ("run_id", "step", "epoch", "tag", "value", "time")


@dataclass(frozen=True)
class EventRecord:
    run_id: str
    step: int
    epoch: int
    tag: str
    value: float
    time: str


@dataclass(frozen=True)
class EventLogContents:
    records: tuple[EventRecord, ...]
    malformed: tuple[tuple[int, str], ...]  # (1-based line number, reason)


class EventLogWriter:
    """Single writer per file; appends are flushed per line.

    Steps must strictly increase per (run_id, tag). When appending to an
    existing file, the monotonicity state is seeded from its records.
    """

    def __init__(self, path, mode: str = "a"):
        if mode not in ("a", "w"):
            raise ValueError(f"mode must be 'a' or 'w', got {mode!r}")
        self.path = os.fspath(path)
        self._last_step: dict[tuple[str, str], int] = {}
        if mode == "a" and os.path.exists(self.path):
            for rec in read_event_log(self.path).records:
                self._last_step[(rec.run_id, rec.tag)] = rec.step
        os.makedirs(os.path.dirname(self.path) or ".", exist_ok=True)
        self._fh = open(self.path, mode, encoding="utf-8")

    def log(self, run_id: str, step: int, epoch: int, tag: str, value: float) -> None:
        value = float(value)
        if not math.isfinite(value):
            raise NonFiniteValue(f"refusing to log {value!r} under tag {tag!r}")
        if step < 0:
            raise MonotonicityViolation(f"step must be non-negative, got {step}")
        key = (run_id, tag)
        last = self._last_step.get(key)
        if last is not None and step <= last:
            raise MonotonicityViolation(
                f"step {step} not greater than previous step {last} for tag {tag!r}"
            )
        record = {
            "run_id": run_id,
            "step": int(step),
            "epoch": int(epoch),
            "tag": tag,
            "value": value,
            "time": datetime.now(timezone.utc).isoformat(),
        }
        self._fh.write(json.dumps(record) + "\n")
        self._fh.flush()
        self._last_step[key] = step

    def close(self) -> None:
        self._fh.close()

    def __enter__(self) -> "EventLogWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def read_event_log(path) -> EventLogContents:
    """All records in file order; unparseable lines reported, not fatal."""
    records: list[EventRecord] = []
    malformed: list[tuple[int, str]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                if not isinstance(obj, dict) or set(obj) != set(_KEYS):
                    raise ValueError(f"expected keys {_KEYS}")
                records.append(
                    EventRecord(
                        run_id=str(obj["run_id"]),
                        step=int(obj["step"]),
                        epoch=int(obj["epoch"]),
                        tag=str(obj["tag"]),
                        value=float(obj["value"]),
                        time=str(obj["time"]),
                    )
                )
            except (ValueError, TypeError) as exc:
                malformed.append((lineno, str(exc)))
    return EventLogContents(records=tuple(records), malformed=tuple(malformed))
