"""Pure-Python kernels: the per-sample hot path of the gaze pipeline.

Mirrors eyedoc.kernels._native exactly. Both backends must produce
bit-identical results: medians use the same two-middle-average formula,
centroids sum members in arrival order, dispersion is max over axes of
(max - min). The equivalence test runs both over random streams.
"""

from __future__ import annotations

BACKEND = "pure"

FIX_NONE = 0
FIX_START = 1
FIX_BREAK = 2


def _median(values: list[float]) -> float:
    ordered = sorted(values)
    n = len(ordered)
    mid = n // 2
    if n % 2:
        return ordered[mid]
    return (ordered[mid - 1] + ordered[mid]) / 2.0


class MedianRing:
    """Per-axis moving median over the most recent valid points."""

    def __init__(self, window: int):
        if window < 1 or window % 2 == 0:
            raise ValueError("window must be odd and >= 1")
        self.window = window
        self._xs: list[float] = []
        self._ys: list[float] = []

    def clear(self) -> None:
        self._xs.clear()
        self._ys.clear()

    def push(self, x: float, y: float) -> tuple[float, float]:
        self._xs.append(x)
        self._ys.append(y)
        if len(self._xs) > self.window:
            self._xs.pop(0)
            self._ys.pop(0)
        return _median(self._xs), _median(self._ys)


class FixWindow:
    """Streaming dispersion-threshold fixation tracker.

    push() returns FIX_START when a candidate window first spans the
    minimum duration within the dispersion threshold (onset fields are
    then set), FIX_BREAK when an active fixation ends because the new
    point broke the threshold (end fields are set; the new point seeds
    the next candidate), FIX_NONE otherwise. close() finalizes an active
    fixation at its last accepted point, for gap and flush handling.
    """

    def __init__(self, dispersion_px: float, min_fixation_ms: int):
        self.dispersion_px = dispersion_px
        self.min_fixation_ms = min_fixation_ms
        self._ts: list[int] = []
        self._xs: list[float] = []
        self._ys: list[float] = []
        self._active = False
        self._n = 0
        self._sum_x = 0.0
        self._sum_y = 0.0
        self._min_x = 0.0
        self._max_x = 0.0
        self._min_y = 0.0
        self._max_y = 0.0
        self._start_ms = 0
        self._last_ms = 0
        self.fix_start_ms = 0
        self.fix_cx = 0.0
        self.fix_cy = 0.0
        self.end_ms = 0
        self.end_cx = 0.0
        self.end_cy = 0.0
        self.end_duration_ms = 0

    def reset(self) -> None:
        self._ts.clear()
        self._xs.clear()
        self._ys.clear()
        self._active = False
        self._n = 0

    @property
    def active(self) -> bool:
        return self._active

    def _candidate_dispersion(self) -> float:
        return max(
            max(self._xs) - min(self._xs),
            max(self._ys) - min(self._ys),
        )

    def _finalize_end(self) -> None:
        self.end_ms = self._last_ms
        self.end_cx = self._sum_x / self._n
        self.end_cy = self._sum_y / self._n
        self.end_duration_ms = self._last_ms - self._start_ms

    def push(self, t_ms: int, x: float, y: float) -> int:
        if self._active:
            min_x = x if x < self._min_x else self._min_x
            max_x = x if x > self._max_x else self._max_x
            min_y = y if y < self._min_y else self._min_y
            max_y = y if y > self._max_y else self._max_y
            if max(max_x - min_x, max_y - min_y) <= self.dispersion_px:
                self._min_x, self._max_x = min_x, max_x
                self._min_y, self._max_y = min_y, max_y
                self._sum_x += x
                self._sum_y += y
                self._n += 1
                self._last_ms = t_ms
                return FIX_NONE
            self._finalize_end()
            self._active = False
            self._n = 0
            self._ts = [t_ms]
            self._xs = [x]
            self._ys = [y]
            return FIX_BREAK

        self._ts.append(t_ms)
        self._xs.append(x)
        self._ys.append(y)
        while self._candidate_dispersion() > self.dispersion_px:
            self._ts.pop(0)
            self._xs.pop(0)
            self._ys.pop(0)
        if self._ts[-1] - self._ts[0] < self.min_fixation_ms:
            return FIX_NONE

        # Candidate spans the minimum duration: promote to active fixation.
        self._active = True
        self._n = len(self._ts)
        self._sum_x = 0.0
        self._sum_y = 0.0
        self._min_x = self._max_x = self._xs[0]
        self._min_y = self._max_y = self._ys[0]
        for i in range(self._n):
            cx, cy = self._xs[i], self._ys[i]
            self._sum_x += cx
            self._sum_y += cy
            if cx < self._min_x:
                self._min_x = cx
            if cx > self._max_x:
                self._max_x = cx
            if cy < self._min_y:
                self._min_y = cy
            if cy > self._max_y:
                self._max_y = cy
        self._start_ms = self._ts[0]
        self._last_ms = self._ts[-1]
        self.fix_start_ms = self._start_ms
        self.fix_cx = self._sum_x / self._n
        self.fix_cy = self._sum_y / self._n
        self._ts.clear()
        self._xs.clear()
        self._ys.clear()
        return FIX_START

    def close(self) -> bool:
        if self._active:
            self._finalize_end()
            self.reset()
            return True
        self.reset()
        return False
