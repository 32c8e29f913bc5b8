"""Session orchestration: one gaze source wired through pipeline, engine,
and event log, serialized behind a per-session lock.

Replay and scenario sources start paused and are drained in time-budgeted
chunks inside poll calls, which keeps poll service time bounded while
leaving the final log independent of request timing (close() always
finishes the drain before exporting). Live sources (tracker, api) feed a
queue; the tracker queue is bounded and drops oldest samples when the
session lags, counting the drops.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import secrets
import threading
import time
from collections import deque
from pathlib import Path

from eyedoc.calibration import Calibration
from eyedoc.engine import (
    InteractionConfig,
    InteractionEngine,
    bounds_warnings,
    registry_from_payload,
)
from eyedoc.errors import (
    EyedocError,
    InvalidConfig,
    InvalidSpec,
    NonMonotonicTimestamp,
    SchemaError,
    SourceUnavailable,
    TraceNonMonotonic,
    TraceParseError,
    TrackerUnreachable,
    UnknownSession,
    WrongSourceKind,
)
from eyedoc.events import Blink, LookawayEnd, LookawayStart, SmoothedPoint
from eyedoc.pipeline import GazePipeline, PipelineConfig
from eyedoc.samples import GazeSample, read_trace
from eyedoc.service.config import ServiceConfig
from eyedoc.service.log import EventLog
from eyedoc.sources import SourceDescriptor, descriptor_from_payload
from eyedoc.sources.scenario import generate_scenario, spec_from_dict
from eyedoc.sources.tracker import TrackerClient

logger = logging.getLogger("eyedoc.service")

PUMP_BUDGET_S = 0.020
TRACKER_QUEUE_LIMIT = 1000

_PIPELINE_INT_FIELDS = {
    "smoothing_window",
    "min_fixation_ms",
    "blink_min_ms",
    "blink_max_ms",
    "screen_w",
    "screen_h",
}
_INTERACTION_INT_FIELDS = {"dwell_ms", "off_target_grace_ms", "scroll_repeat_ms"}


def _merge_config(cls, payload: dict | None, defaults: dict, int_fields: set[str]):
    merged = dict(defaults)
    if payload is not None:
        if not isinstance(payload, dict):
            raise InvalidConfig(f"{cls.__name__} payload must be an object")
        merged.update(payload)
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = set(merged) - known
    if unknown:
        raise InvalidConfig(f"unknown config fields: {sorted(unknown)}")
    for key, value in merged.items():
        if isinstance(value, bool) or not isinstance(value, (int, float, str)):
            raise InvalidConfig(f"{key} has invalid type {type(value).__name__}")
        if key in int_fields:
            if not isinstance(value, int):
                raise InvalidConfig(f"{key} must be an integer")
        elif isinstance(value, (int, float)) and not math.isfinite(value):
            raise InvalidConfig(f"{key} must be finite")
    return cls(**merged)


def build_pipeline_config(
    payload: dict | None, defaults: dict
) -> tuple[PipelineConfig, Calibration | None]:
    payload = dict(payload) if payload else {}
    raw_cal = payload.pop("calibration", None)
    calibration = None
    if raw_cal is not None:
        if (
            not isinstance(raw_cal, (list, tuple))
            or len(raw_cal) != 6
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw_cal)
        ):
            raise InvalidConfig("calibration must be six numbers [a, b, c, d, e, f]")
        calibration = Calibration(*(float(v) for v in raw_cal))
        if not calibration.is_invertible():
            raise InvalidConfig("calibration must be invertible")
    cfg = _merge_config(PipelineConfig, payload, defaults, _PIPELINE_INT_FIELDS)
    return cfg, calibration


def build_interaction_config(payload: dict | None, defaults: dict) -> InteractionConfig:
    return _merge_config(InteractionConfig, payload, defaults, _INTERACTION_INT_FIELDS)


def _parse_pushed_sample(raw, index: int) -> GazeSample:
    if not isinstance(raw, dict):
        raise SchemaError(f"sample #{index} must be an object")
    t_ms = raw.get("t_ms")
    if not isinstance(t_ms, int) or isinstance(t_ms, bool) or t_ms < 0:
        raise SchemaError(f"sample #{index}: t_ms must be a non-negative integer")
    valid = raw.get("valid")
    if not isinstance(valid, bool):
        raise SchemaError(f"sample #{index}: valid must be a boolean")
    x, y = raw.get("x"), raw.get("y")
    if valid:
        if (
            not isinstance(x, (int, float))
            or not isinstance(y, (int, float))
            or isinstance(x, bool)
            or isinstance(y, bool)
            or not (math.isfinite(x) and math.isfinite(y))
        ):
            raise SchemaError(f"sample #{index}: valid sample needs finite x and y")
        return GazeSample.point(t_ms, x, y)
    if x is not None or y is not None:
        raise SchemaError(f"sample #{index}: invalid sample must have null x and y")
    return GazeSample.gap(t_ms)


class Session:
    def __init__(
        self,
        sid: str,
        pipeline_cfg: PipelineConfig,
        interaction_cfg: InteractionConfig,
        descriptor: SourceDescriptor,
        calibration: Calibration | None,
        service_cfg: ServiceConfig,
    ):
        self.id = sid
        self.descriptor = descriptor
        self.lock = threading.RLock()
        self.pipeline = GazePipeline(pipeline_cfg, calibration=calibration)
        self.engine = InteractionEngine(interaction_cfg)
        self.log = EventLog()
        self.dropped_samples = 0
        self._pending: deque[GazeSample] = deque()
        self._queue: deque[GazeSample] = deque()
        self._queue_limit = TRACKER_QUEUE_LIMIT if descriptor.kind == "tracker" else None
        self._started = False
        self._closed = False
        self._stop = threading.Event()
        self._producer: threading.Thread | None = None
        self._replay_samples: list[GazeSample] | None = None
        self._tracker: TrackerClient | None = None
        self._smoothed_seen = 0
        self._log_smoothed_every = service_cfg.log_smoothed_every

    # -- source wiring ----------------------------------------------------

    def attach_samples(self, samples: list[GazeSample], speed: float) -> None:
        """Replay or scenario content. speed 0 drains during polls;
        positive speed paces delivery on a producer thread."""
        if speed == 0:
            self._pending.extend(samples)
        else:
            self._replay_samples = samples
            self._replay_speed = speed

    def attach_tracker(self, client: TrackerClient) -> None:
        self._tracker = client
        self._producer = threading.Thread(target=self._tracker_reader, daemon=True)
        self._producer.start()

    def _tracker_reader(self) -> None:
        try:
            for s in self._tracker.samples():
                if self._stop.is_set():
                    return
                self._enqueue_live(s)
        except EyedocError as exc:
            logger.warning("session %s: tracker stream ended: %s", self.id, exc)

    def _paced_producer(self) -> None:
        prev_t = None
        for s in self._replay_samples:
            if self._stop.is_set():
                return
            if prev_t is not None:
                delay = (s.t_ms - prev_t) / 1000.0 / self._replay_speed
                if delay > 0 and self._stop.wait(delay):
                    return
            prev_t = s.t_ms
            self._enqueue_live(s)

    def _enqueue_live(self, s: GazeSample) -> None:
        if self._queue_limit is not None and len(self._queue) >= self._queue_limit:
            self._queue.popleft()
            self.dropped_samples += 1
            if self.dropped_samples % 100 == 1:
                logger.warning(
                    "session %s: backpressure, %d samples dropped",
                    self.id,
                    self.dropped_samples,
                )
        self._queue.append(s)

    def _ensure_started(self) -> None:
        if self._started:
            return
        self._started = True
        if self._replay_samples is not None:
            self._producer = threading.Thread(target=self._paced_producer, daemon=True)
            self._producer.start()

    # -- processing --------------------------------------------------------

    def _process_sample(self, s: GazeSample) -> None:
        self._handle_gaze_events(self.pipeline.push(s))

    def _handle_gaze_events(self, gaze_events) -> None:
        for ev in gaze_events:
            if isinstance(ev, SmoothedPoint):
                self._smoothed_seen += 1
                if (self._smoothed_seen - 1) % self._log_smoothed_every == 0:
                    self.log.append(ev)
            elif isinstance(ev, (Blink, LookawayStart, LookawayEnd)):
                self.log.append(ev)
            for interaction in self.engine.step(ev):
                self.log.append(interaction)

    def _pump(self, budget_s: float | None) -> None:
        deadline = time.monotonic() + budget_s if budget_s is not None else None
        while True:
            if self._pending and self._started:
                s = self._pending.popleft()
            elif self._queue:
                s = self._queue.popleft()
            else:
                return
            try:
                self._process_sample(s)
            except NonMonotonicTimestamp as exc:
                # Live feeds can replay stale timestamps after reconnects.
                logger.warning("session %s: dropped sample: %s", self.id, exc)
            if deadline is not None and time.monotonic() > deadline:
                return

    # -- operations (called by the HTTP layer) -----------------------------

    def poll(self, since: int) -> tuple[list[dict], int]:
        with self.lock:
            self._ensure_started()
            self._pump(PUMP_BUDGET_S)
            return self.log.page(since)

    def put_targets(self, payload: dict) -> int:
        with self.lock:
            self._pump(PUMP_BUDGET_S)
            registry = registry_from_payload(payload)
            for warning in bounds_warnings(
                registry,
                self.pipeline.cfg.screen_w,
                self.pipeline.cfg.screen_h,
                self.engine.cfg.margin_px,
            ):
                logger.warning("session %s: %s", self.id, warning)
            for ev in self.engine.replace_targets(registry):
                self.log.append(ev)
            return registry.generation

    def push_gaze(self, raw_samples) -> int:
        with self.lock:
            if self.descriptor.kind != "api":
                raise WrongSourceKind(
                    f"gaze push requires an api source, session uses {self.descriptor.kind!r}"
                )
            if not isinstance(raw_samples, list):
                raise SchemaError("samples must be a list")
            samples = [_parse_pushed_sample(raw, i) for i, raw in enumerate(raw_samples)]
            prev = self.pipeline.last_t_ms
            for s in samples:
                if prev is not None and s.t_ms <= prev:
                    raise NonMonotonicTimestamp(
                        f"sample at {s.t_ms} ms does not advance past {prev} ms"
                    )
                prev = s.t_ms
            for s in samples:
                self._process_sample(s)
            return len(samples)

    def update_config(self, payload: dict) -> None:
        if payload is not None and not isinstance(payload, dict):
            raise InvalidConfig("config payload must be an object")
        with self.lock:
            self._pump(PUMP_BUDGET_S)
            current = dataclasses.asdict(self.engine.cfg)
            cfg = build_interaction_config(payload, current)
            for ev in self.engine.set_config(cfg):
                self.log.append(ev)

    def close(self, export_dir: str | None) -> str | None:
        with self.lock:
            if self._closed:
                return None
            self._closed = True
            self._stop.set()
        if self._tracker is not None:
            self._tracker.stop()
        if self._producer is not None:
            self._producer.join(timeout=5)
        with self.lock:
            self._started = True
            self._pump(None)
            self._handle_gaze_events(self.pipeline.flush())
            if export_dir is None:
                return None
            path = Path(export_dir) / f"session-{self.id}.jsonl"
            path.parent.mkdir(parents=True, exist_ok=True)
            self.log.export_jsonl(path)
            return str(path)


class SessionManager:
    def __init__(self, service_cfg: ServiceConfig):
        self.service_cfg = service_cfg
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, body: dict) -> Session:
        if not isinstance(body, dict):
            raise InvalidConfig("session payload must be an object")
        pipeline_cfg, calibration = build_pipeline_config(
            body.get("pipeline"), self.service_cfg.pipeline_defaults
        )
        interaction_cfg = build_interaction_config(
            body.get("interaction"), self.service_cfg.interaction_defaults
        )
        source = body.get("source")
        if source is None:
            raise InvalidConfig("source is required")
        descriptor = descriptor_from_payload(source)

        sid = secrets.token_urlsafe(16)
        session = Session(
            sid, pipeline_cfg, interaction_cfg, descriptor, calibration, self.service_cfg
        )
        if descriptor.kind == "replay":
            try:
                samples = read_trace(descriptor.path)
            except (TraceParseError, TraceNonMonotonic, OSError) as exc:
                raise SourceUnavailable(f"replay trace unusable: {exc}") from exc
            session.attach_samples(samples, descriptor.speed)
        elif descriptor.kind == "scenario":
            try:
                spec_data = descriptor.spec
                if spec_data is None:
                    import json

                    with open(descriptor.path, "r", encoding="utf-8") as fh:
                        spec_data = json.load(fh)
                spec = spec_from_dict(spec_data)
                samples = generate_scenario(spec, descriptor.seed)
            except InvalidSpec as exc:
                raise InvalidConfig(f"scenario spec invalid: {exc}") from exc
            except (OSError, ValueError) as exc:
                raise SourceUnavailable(f"scenario spec unusable: {exc}") from exc
            session.attach_samples(samples, 0)
        elif descriptor.kind == "tracker":
            client = TrackerClient(
                descriptor.endpoint,
                connect_attempts=descriptor.retry_budget,
                backoff_initial_s=0.2,
            )
            try:
                client.connect()
            except TrackerUnreachable as exc:
                raise SourceUnavailable(str(exc)) from exc
            session.attach_tracker(client)

        with self._lock:
            self._sessions[sid] = session
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise UnknownSession(f"no session {sid!r}")
        return session

    def close(self, sid: str) -> str | None:
        with self._lock:
            session = self._sessions.pop(sid, None)
        if session is None:
            raise UnknownSession(f"no session {sid!r}")
        return session.close(self.service_cfg.export_dir)

    def shutdown(self) -> None:
        with self._lock:
            sessions = list(self._sessions.values())
            self._sessions.clear()
        for session in sessions:
            session.close(self.service_cfg.export_dir)
