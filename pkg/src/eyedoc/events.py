"""Event types flowing between pipeline, engine, log, and wire.

GazeEvent covers pipeline output; InteractionEvent covers engine output.
`order_ms` is the ordering key used by monotonicity checks (interval
events order by their start). Wire dicts are built with a fixed key
order so serialized logs are byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class SmoothedPoint:
    t_ms: int
    x: float
    y: float

    @property
    def order_ms(self) -> int:
        return self.t_ms


@dataclass(frozen=True)
class FixationStart:
    """Confirmed fixation onset. Emitted once the dispersion window has
    spanned the minimum duration, so it is retroactive: t_ms is the onset,
    which predates the sample that confirmed it."""

    t_ms: int
    cx: float
    cy: float

    @property
    def order_ms(self) -> int:
        return self.t_ms


@dataclass(frozen=True)
class FixationEnd:
    t_ms: int
    cx: float
    cy: float
    duration_ms: int

    @property
    def order_ms(self) -> int:
        return self.t_ms


@dataclass(frozen=True)
class Blink:
    t_start_ms: int
    t_end_ms: int

    @property
    def order_ms(self) -> int:
        return self.t_start_ms

    @property
    def duration_ms(self) -> int:
        return self.t_end_ms - self.t_start_ms


@dataclass(frozen=True)
class LookawayStart:
    t_ms: int

    @property
    def order_ms(self) -> int:
        return self.t_ms


@dataclass(frozen=True)
class LookawayEnd:
    t_ms: int

    @property
    def order_ms(self) -> int:
        return self.t_ms


GazeEvent = Union[SmoothedPoint, FixationStart, FixationEnd, Blink, LookawayStart, LookawayEnd]


@dataclass(frozen=True)
class TargetEnter:
    t_ms: int
    target_id: str


@dataclass(frozen=True)
class TargetLeave:
    t_ms: int
    target_id: str


@dataclass(frozen=True)
class DwellProgress:
    t_ms: int
    target_id: str
    fraction: float


@dataclass(frozen=True)
class Selection:
    t_ms: int
    target_id: str
    trigger: str  # "dwell" | "blink"


@dataclass(frozen=True)
class ScrollCommand:
    t_ms: int
    direction: str  # "up" | "down"


InteractionEvent = Union[TargetEnter, TargetLeave, DwellProgress, Selection, ScrollCommand]


def to_wire(ev: GazeEvent | InteractionEvent) -> tuple[int, dict]:
    """Returns (t_ms, payload) for one log entry. Payload key order is fixed."""
    if isinstance(ev, SmoothedPoint):
        return ev.t_ms, {"type": "smoothed_point", "x": ev.x, "y": ev.y}
    if isinstance(ev, Blink):
        return ev.t_start_ms, {"type": "blink", "duration_ms": ev.duration_ms}
    if isinstance(ev, LookawayStart):
        return ev.t_ms, {"type": "lookaway_start"}
    if isinstance(ev, LookawayEnd):
        return ev.t_ms, {"type": "lookaway_end"}
    if isinstance(ev, TargetEnter):
        return ev.t_ms, {"type": "target_enter", "target_id": ev.target_id}
    if isinstance(ev, TargetLeave):
        return ev.t_ms, {"type": "target_leave", "target_id": ev.target_id}
    if isinstance(ev, DwellProgress):
        return ev.t_ms, {"type": "dwell_progress", "target_id": ev.target_id, "fraction": ev.fraction}
    if isinstance(ev, Selection):
        return ev.t_ms, {"type": "selection", "target_id": ev.target_id, "trigger": ev.trigger}
    if isinstance(ev, ScrollCommand):
        return ev.t_ms, {"type": "scroll", "direction": ev.direction}
    raise TypeError(f"{type(ev).__name__} has no wire form")


LOGGED_GAZE_EVENTS = (SmoothedPoint, Blink, LookawayStart, LookawayEnd)
