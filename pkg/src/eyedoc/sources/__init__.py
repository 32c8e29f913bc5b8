"""Interchangeable gaze sample sources.

Every source yields GazeSamples with strictly increasing t_ms. Replay
and scenario sources are deterministic; wall-clock pacing (replay speed)
only affects delivery timing, never content.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from eyedoc.errors import InvalidConfig

SOURCE_KINDS = frozenset({"replay", "scenario", "tracker", "api"})


@dataclass(frozen=True)
class SourceDescriptor:
    kind: str
    path: str | None = None
    speed: float = 1.0
    spec: dict | None = None
    seed: int = 0
    endpoint: str | None = None
    retry_budget: int = 5

    def __post_init__(self):
        if self.kind not in SOURCE_KINDS:
            raise InvalidConfig(f"unknown source kind {self.kind!r}")
        if self.speed < 0:
            raise InvalidConfig("speed must be >= 0")
        if self.retry_budget < 1:
            raise InvalidConfig("retry_budget must be >= 1")
        if self.kind == "replay" and not self.path:
            raise InvalidConfig("replay source requires a path")
        if self.kind == "scenario" and self.spec is None and not self.path:
            raise InvalidConfig("scenario source requires an inline spec or a path")
        if self.kind == "tracker" and not self.endpoint:
            raise InvalidConfig("tracker source requires an endpoint")


def descriptor_from_payload(payload: dict) -> SourceDescriptor:
    if not isinstance(payload, dict):
        raise InvalidConfig("source must be an object")
    kind = payload.get("kind")
    if not isinstance(kind, str):
        raise InvalidConfig("source kind must be a string")
    speed = payload.get("speed", 1.0)
    if not isinstance(speed, (int, float)) or isinstance(speed, bool):
        raise InvalidConfig("speed must be a number")
    seed = payload.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise InvalidConfig("seed must be an integer")
    spec = payload.get("spec")
    if spec is not None and not isinstance(spec, dict):
        raise InvalidConfig("scenario spec must be an object")
    path = payload.get("path")
    if path is not None and not isinstance(path, str):
        raise InvalidConfig("path must be a string")
    endpoint = payload.get("endpoint")
    if endpoint is not None and not isinstance(endpoint, str):
        raise InvalidConfig("endpoint must be a string")
    retry_budget = payload.get("retry_budget", 5)
    if not isinstance(retry_budget, int) or isinstance(retry_budget, bool):
        raise InvalidConfig("retry_budget must be an integer")
    return SourceDescriptor(
        kind=kind,
        path=path,
        speed=float(speed),
        spec=spec,
        seed=seed,
        endpoint=endpoint,
        retry_budget=retry_budget,
    )
