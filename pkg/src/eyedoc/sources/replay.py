"""Trace replay. File timestamps are authoritative; the speed multiplier
only paces delivery (0 means as fast as possible)."""

from __future__ import annotations

import time
from pathlib import Path
from typing import Iterator

from eyedoc.errors import InvalidConfig
from eyedoc.samples import GazeSample, read_trace


def open_replay(path: str | Path, speed: float = 1.0) -> Iterator[GazeSample]:
    """Parses the whole trace eagerly (so format errors surface at open),
    then yields samples in file order with wall-clock pacing."""
    if speed < 0:
        raise InvalidConfig("speed must be >= 0")
    samples = read_trace(path)
    return _paced(samples, speed)


def _paced(samples: list[GazeSample], speed: float) -> Iterator[GazeSample]:
    if speed == 0:
        yield from samples
        return
    prev_t = None
    for s in samples:
        if prev_t is not None:
            delay = (s.t_ms - prev_t) / 1000.0 / speed
            if delay > 0:
                time.sleep(delay)
        prev_t = s.t_ms
        yield s
