"""Raw gaze samples and the trace file format.

A trace file is UTF-8 JSON Lines, one sample per line:

    {"t_ms": <int>, "x": <number|null>, "y": <number|null>, "valid": <bool>}

`x`/`y` are null exactly when `valid` is false. Lines starting with `#`
are comments. The format is byte-stable: writing the samples read from a
file reproduces it (modulo comments), which the golden replay tests rely
on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from eyedoc.errors import TraceNonMonotonic, TraceParseError


@dataclass(frozen=True)
class GazeSample:
    """One timestamped gaze point. Timestamps are stream-relative ms."""

    t_ms: int
    x: float | None
    y: float | None
    valid: bool

    def __post_init__(self):
        if self.valid:
            if self.x is None or self.y is None:
                raise ValueError("valid sample requires coordinates")
            if not (math.isfinite(self.x) and math.isfinite(self.y)):
                raise ValueError("valid sample requires finite coordinates")
        else:
            if self.x is not None or self.y is not None:
                raise ValueError("invalid sample must not carry coordinates")
        if self.t_ms < 0:
            raise ValueError("t_ms must be non-negative")

    @classmethod
    def point(cls, t_ms: int, x: float, y: float) -> "GazeSample":
        return cls(t_ms=t_ms, x=float(x), y=float(y), valid=True)

    @classmethod
    def gap(cls, t_ms: int) -> "GazeSample":
        return cls(t_ms=t_ms, x=None, y=None, valid=False)


def sample_to_json(s: GazeSample) -> str:
    return json.dumps(
        {"t_ms": s.t_ms, "x": s.x, "y": s.y, "valid": s.valid}, separators=(",", ":")
    )


def _parse_line(line: str, lineno: int) -> GazeSample:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise TraceParseError(lineno, f"invalid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise TraceParseError(lineno, "sample must be a JSON object")
    try:
        t_ms, x, y, valid = obj["t_ms"], obj["x"], obj["y"], obj["valid"]
    except KeyError as exc:
        raise TraceParseError(lineno, f"missing field {exc.args[0]!r}") from exc
    if not isinstance(valid, bool):
        raise TraceParseError(lineno, "valid must be a boolean")
    if not isinstance(t_ms, int) or isinstance(t_ms, bool) or t_ms < 0:
        raise TraceParseError(lineno, "t_ms must be a non-negative integer")
    if valid:
        if not isinstance(x, (int, float)) or not isinstance(y, (int, float)):
            raise TraceParseError(lineno, "valid sample requires numeric x and y")
        if not (math.isfinite(x) and math.isfinite(y)):
            raise TraceParseError(lineno, "coordinates must be finite")
        return GazeSample.point(t_ms, x, y)
    if x is not None or y is not None:
        raise TraceParseError(lineno, "invalid sample must have null x and y")
    return GazeSample.gap(t_ms)


def iter_trace_lines(lines: Iterable[str]) -> Iterator[GazeSample]:
    last_t = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        sample = _parse_line(line, lineno)
        if last_t is not None and sample.t_ms <= last_t:
            raise TraceNonMonotonic(
                lineno, f"t_ms {sample.t_ms} does not increase past {last_t}"
            )
        last_t = sample.t_ms
        yield sample


def read_trace(path: str | Path) -> list[GazeSample]:
    with open(path, "r", encoding="utf-8") as fh:
        return list(iter_trace_lines(fh))


def write_trace(path: str | Path, samples: Iterable[GazeSample]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for s in samples:
            fh.write(sample_to_json(s))
            fh.write("\n")
