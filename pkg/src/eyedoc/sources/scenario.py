"""Synthetic gaze scenarios: deterministic sample streams without hardware.

A scenario is an ordered list of segments (fixate, saccade, blink_gap,
lookaway_gap). Generation is a pure function of (spec, seed). Timestamps
are round(k * 1000 / rate) for the global sample index k, which keeps
long streams drift-free.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from eyedoc.errors import InvalidSpec
from eyedoc.samples import GazeSample

SEGMENT_KINDS = frozenset({"fixate", "saccade", "blink_gap", "lookaway_gap"})

Point = tuple[float, float]


@dataclass(frozen=True)
class Segment:
    kind: str
    duration_ms: int
    at: Point | None = None
    from_point: Point | None = None
    to_point: Point | None = None
    jitter_px: float = 0.0


@dataclass(frozen=True)
class ScenarioSpec:
    sample_rate_hz: int = 60
    segments: tuple[Segment, ...] = ()

    def validate(self) -> None:
        if not isinstance(self.sample_rate_hz, int) or self.sample_rate_hz <= 0:
            raise InvalidSpec("sample_rate_hz must be a positive integer")
        if self.sample_rate_hz > 1000:
            # timestamps are integer ms; faster rates would collide
            raise InvalidSpec("sample_rate_hz must be <= 1000")
        if not self.segments:
            raise InvalidSpec("scenario needs at least one segment")
        for i, seg in enumerate(self.segments):
            if seg.kind not in SEGMENT_KINDS:
                raise InvalidSpec(f"segment #{i}: unknown kind {seg.kind!r}")
            if not isinstance(seg.duration_ms, int) or seg.duration_ms <= 0:
                raise InvalidSpec(f"segment #{i}: duration_ms must be a positive integer")
            if seg.jitter_px < 0:
                raise InvalidSpec(f"segment #{i}: jitter_px must be non-negative")
            if seg.kind == "fixate" and seg.at is None:
                raise InvalidSpec(f"segment #{i}: fixate requires 'at'")
            if seg.kind == "saccade" and (seg.from_point is None or seg.to_point is None):
                raise InvalidSpec(f"segment #{i}: saccade requires 'from' and 'to'")


def _point(value, label: str, index: int) -> Point:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise InvalidSpec(f"segment #{index}: {label} must be [x, y]")
    return (float(value[0]), float(value[1]))


def spec_from_dict(data: dict) -> ScenarioSpec:
    if not isinstance(data, dict):
        raise InvalidSpec("scenario spec must be an object")
    rate = data.get("sample_rate_hz", 60)
    raw_segments = data.get("segments")
    if not isinstance(raw_segments, list):
        raise InvalidSpec("segments must be a list")
    segments = []
    for i, raw in enumerate(raw_segments):
        if not isinstance(raw, dict):
            raise InvalidSpec(f"segment #{i} must be an object")
        kind = raw.get("kind")
        duration = raw.get("duration_ms")
        if not isinstance(duration, int) or isinstance(duration, bool):
            raise InvalidSpec(f"segment #{i}: duration_ms must be an integer")
        jitter = raw.get("jitter_px", 0.0)
        if not isinstance(jitter, (int, float)) or isinstance(jitter, bool):
            raise InvalidSpec(f"segment #{i}: jitter_px must be a number")
        at = _point(raw["at"], "at", i) if "at" in raw else None
        from_point = _point(raw["from"], "from", i) if "from" in raw else None
        to_point = _point(raw["to"], "to", i) if "to" in raw else None
        segments.append(
            Segment(
                kind=kind,
                duration_ms=duration,
                at=at,
                from_point=from_point,
                to_point=to_point,
                jitter_px=float(jitter),
            )
        )
    spec = ScenarioSpec(sample_rate_hz=rate, segments=tuple(segments))
    spec.validate()
    return spec


def spec_to_dict(spec: ScenarioSpec) -> dict:
    segments = []
    for seg in spec.segments:
        d: dict = {"kind": seg.kind, "duration_ms": seg.duration_ms}
        if seg.at is not None:
            d["at"] = list(seg.at)
        if seg.from_point is not None:
            d["from"] = list(seg.from_point)
        if seg.to_point is not None:
            d["to"] = list(seg.to_point)
        if seg.jitter_px:
            d["jitter_px"] = seg.jitter_px
        segments.append(d)
    return {"sample_rate_hz": spec.sample_rate_hz, "segments": segments}


def generate_scenario(spec: ScenarioSpec, seed: int) -> list[GazeSample]:
    spec.validate()
    rng = random.Random(seed)
    samples: list[GazeSample] = []
    k = 0
    seg_start = 0
    for seg in spec.segments:
        seg_end = seg_start + seg.duration_ms
        while True:
            t = round(k * 1000 / spec.sample_rate_hz)
            if t >= seg_end:
                break
            if seg.kind in ("blink_gap", "lookaway_gap"):
                samples.append(GazeSample.gap(t))
            else:
                if seg.kind == "fixate":
                    x, y = seg.at
                else:
                    progress = (t - seg_start) / seg.duration_ms
                    x = seg.from_point[0] + (seg.to_point[0] - seg.from_point[0]) * progress
                    y = seg.from_point[1] + (seg.to_point[1] - seg.from_point[1]) * progress
                if seg.jitter_px > 0:
                    x += rng.uniform(-seg.jitter_px, seg.jitter_px)
                    y += rng.uniform(-seg.jitter_px, seg.jitter_px)
                samples.append(GazeSample.point(t, x, y))
            k += 1
        seg_start = seg_end
    return samples


CANONICAL_SEED = 7

_LINK_A = (100.0, 100.0, 200.0, 40.0)
_LINK_B = (100.0, 300.0, 200.0, 40.0)
_NEUTRAL = (900.0, 700.0)
_A_CENTER = (200.0, 120.0)
_B_CENTER = (200.0, 320.0)
_SCROLL_CENTER = (960.0, 1050.0)


def canonical_scenario() -> ScenarioSpec:
    """The bundled end-to-end scenario: select link A by dwell, abort one
    engagement on link B (reset), select B, look away 2 s, come back and
    rest on the bottom scroll band. Expected with default configs:
    2 dwell selections, 2 scroll commands, 1 dwell reset, 1 lookaway."""
    return ScenarioSpec(
        sample_rate_hz=60,
        segments=(
            Segment("fixate", 1000, at=_A_CENTER, jitter_px=2.0),
            Segment("saccade", 100, from_point=_A_CENTER, to_point=_B_CENTER),
            Segment("fixate", 300, at=_B_CENTER, jitter_px=2.0),
            Segment("saccade", 80, from_point=_B_CENTER, to_point=_NEUTRAL),
            Segment("fixate", 250, at=_NEUTRAL, jitter_px=2.0),
            Segment("saccade", 80, from_point=_NEUTRAL, to_point=_B_CENTER),
            Segment("fixate", 1000, at=_B_CENTER, jitter_px=2.0),
            Segment("lookaway_gap", 2000),
            Segment("fixate", 1000, at=_SCROLL_CENTER, jitter_px=2.0),
        ),
    )


def canonical_targets_payload(generation: int = 1) -> dict:
    """Registry used alongside the canonical scenario (1920x1080 screen)."""
    return {
        "generation": generation,
        "scroll": {"x": 0, "y": 0},
        "targets": [
            {
                "id": "link-a",
                "kind": "link",
                "rect": {"x": _LINK_A[0], "y": _LINK_A[1], "w": _LINK_A[2], "h": _LINK_A[3]},
                "href": "WidgetA.html",
            },
            {
                "id": "link-b",
                "kind": "link",
                "rect": {"x": _LINK_B[0], "y": _LINK_B[1], "w": _LINK_B[2], "h": _LINK_B[3]},
                "href": "WidgetB.html",
            },
            {
                "id": "scroll-up",
                "kind": "scroll_up",
                "rect": {"x": 0, "y": 0, "w": 1920, "h": 60},
            },
            {
                "id": "scroll-down",
                "kind": "scroll_down",
                "rect": {"x": 0, "y": 1020, "w": 1920, "h": 60},
            },
        ],
    }
