"""Streaming gaze pipeline: calibration, median smoothing, dispersion-
threshold fixation detection, and gap classification.

All logic is keyed to sample timestamps (virtual time), never the wall
clock, so identical streams produce identical event sequences. Per push()
the returned batch is internally non-decreasing in `order_ms`; across
batches every kind is non-decreasing, and FixationStart is the one event
whose timestamp may predate previously emitted events (it carries the
fixation onset, which is only confirmed min_fixation_ms later).

Gap classification: a maximal run of invalid or out-of-bounds samples is
measured from its first sample to the next usable sample (or to its last
sample at flush). Gaps shorter than blink_min_ms are tracker jitter and
ignored entirely; gaps within [blink_min_ms, blink_max_ms] emit Blink;
longer gaps emit LookawayStart/LookawayEnd. Blink and lookaway gaps also
close any open fixation and clear the smoothing window; ignored gaps
leave both untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

from eyedoc import kernels
from eyedoc.calibration import Calibration, apply_calibration
from eyedoc.errors import InvalidConfig, NonMonotonicTimestamp
from eyedoc.events import (
    Blink,
    FixationEnd,
    FixationStart,
    GazeEvent,
    LookawayEnd,
    LookawayStart,
    SmoothedPoint,
)
from eyedoc.samples import GazeSample


@dataclass(frozen=True)
class PipelineConfig:
    smoothing_window: int = 5
    dispersion_px: float = 40.0
    min_fixation_ms: int = 100
    blink_min_ms: int = 70
    blink_max_ms: int = 400
    screen_w: int = 1920
    screen_h: int = 1080

    def __post_init__(self):
        if self.smoothing_window < 1 or self.smoothing_window % 2 == 0:
            raise InvalidConfig("smoothing_window must be odd and >= 1")
        if self.dispersion_px <= 0:
            raise InvalidConfig("dispersion_px must be positive")
        if self.min_fixation_ms <= 0:
            raise InvalidConfig("min_fixation_ms must be positive")
        if self.blink_min_ms <= 0:
            raise InvalidConfig("blink_min_ms must be positive")
        if self.blink_min_ms >= self.blink_max_ms:
            raise InvalidConfig("blink_min_ms must be below blink_max_ms")
        if self.screen_w <= 0 or self.screen_h <= 0:
            raise InvalidConfig("screen bounds must be positive")


class GazePipeline:
    """Single-owner streaming state; drive it from one thread at a time."""

    def __init__(
        self,
        cfg: PipelineConfig,
        calibration: Calibration | None = None,
        backend=None,
    ):
        self.cfg = cfg
        self.calibration = calibration
        k = backend if backend is not None else kernels.active
        self._ring = k.MedianRing(cfg.smoothing_window)
        self._fix = k.FixWindow(cfg.dispersion_px, cfg.min_fixation_ms)
        self._last_t: int | None = None
        self._gap_start: int | None = None
        self._lookaway_open = False
        self.samples_seen = 0

    @property
    def last_t_ms(self) -> int | None:
        return self._last_t

    def _in_bounds(self, x: float, y: float) -> bool:
        return 0 <= x <= self.cfg.screen_w and 0 <= y <= self.cfg.screen_h

    def _close_fixation(self, events: list[GazeEvent]) -> None:
        if self._fix.close():
            events.append(
                FixationEnd(
                    t_ms=self._fix.end_ms,
                    cx=self._fix.end_cx,
                    cy=self._fix.end_cy,
                    duration_ms=self._fix.end_duration_ms,
                )
            )

    def push(self, s: GazeSample) -> list[GazeEvent]:
        if self._last_t is not None and s.t_ms <= self._last_t:
            raise NonMonotonicTimestamp(
                f"sample at {s.t_ms} ms does not advance past {self._last_t} ms"
            )
        self._last_t = s.t_ms
        self.samples_seen += 1
        if self.calibration is not None:
            s = apply_calibration(self.calibration, s)

        events: list[GazeEvent] = []
        usable = s.valid and self._in_bounds(s.x, s.y)
        if not usable:
            if self._gap_start is None:
                self._gap_start = s.t_ms
                self._lookaway_open = False
            if (
                not self._lookaway_open
                and s.t_ms - self._gap_start > self.cfg.blink_max_ms
            ):
                self._close_fixation(events)
                self._ring.clear()
                events.append(LookawayStart(t_ms=self._gap_start))
                self._lookaway_open = True
            return events

        if self._gap_start is not None:
            duration = s.t_ms - self._gap_start
            if self._lookaway_open:
                events.append(LookawayEnd(t_ms=s.t_ms))
            elif duration > self.cfg.blink_max_ms:
                # Sparse gap: the threshold crossing had no sample to fire on.
                self._close_fixation(events)
                self._ring.clear()
                events.append(LookawayStart(t_ms=self._gap_start))
                events.append(LookawayEnd(t_ms=s.t_ms))
            elif duration >= self.cfg.blink_min_ms:
                self._close_fixation(events)
                self._ring.clear()
                events.append(Blink(t_start_ms=self._gap_start, t_end_ms=s.t_ms))
            self._gap_start = None
            self._lookaway_open = False

        mx, my = self._ring.push(s.x, s.y)
        code = self._fix.push(s.t_ms, mx, my)
        if code == kernels.FIX_BREAK:
            events.append(
                FixationEnd(
                    t_ms=self._fix.end_ms,
                    cx=self._fix.end_cx,
                    cy=self._fix.end_cy,
                    duration_ms=self._fix.end_duration_ms,
                )
            )
        elif code == kernels.FIX_START:
            events.append(
                FixationStart(
                    t_ms=self._fix.fix_start_ms,
                    cx=self._fix.fix_cx,
                    cy=self._fix.fix_cy,
                )
            )
        events.append(SmoothedPoint(t_ms=s.t_ms, x=mx, y=my))
        return events

    def flush(self) -> list[GazeEvent]:
        """Closes any open gap and fixation. Second flush emits nothing."""
        events: list[GazeEvent] = []
        if self._gap_start is not None:
            end_t = self._last_t
            duration = end_t - self._gap_start
            if self._lookaway_open:
                events.append(LookawayEnd(t_ms=end_t))
            elif duration > self.cfg.blink_max_ms:
                self._close_fixation(events)
                self._ring.clear()
                events.append(LookawayStart(t_ms=self._gap_start))
                events.append(LookawayEnd(t_ms=end_t))
            elif duration >= self.cfg.blink_min_ms:
                self._close_fixation(events)
                self._ring.clear()
                events.append(Blink(t_start_ms=self._gap_start, t_end_ms=end_t))
            self._gap_start = None
            self._lookaway_open = False
        self._close_fixation(events)
        self._ring.clear()
        return events


def detect_fixations_batch(
    trace: list[GazeSample],
    cfg: PipelineConfig,
    calibration: Calibration | None = None,
    backend=None,
) -> list[GazeEvent]:
    """push() folded over the trace, then flush(). Testing convenience."""
    pipe = GazePipeline(cfg, calibration=calibration, backend=backend)
    events: list[GazeEvent] = []
    for s in trace:
        events.extend(pipe.push(s))
    events.extend(pipe.flush())
    return events
