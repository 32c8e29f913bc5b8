"""Tracker adapter client.

Protocol: newline-delimited JSON over a stream socket. The client sends
{"cmd": "subscribe"} once per connection; the server pushes frames
{"ts": <int ms>, "x": <number>, "y": <number>, "ok": <bool>} with x/y
omitted when ok is false. Malformed or time-regressing frames are
skipped and counted, never fatal. On connection drops the client
reconnects with exponential backoff (capped) and synthesizes invalid
samples meanwhile so the pipeline sees the outage as a gap.
"""

from __future__ import annotations

import json
import math
import socket
import threading
import time
from typing import Iterator

from eyedoc.errors import InvalidConfig, TrackerUnreachable
from eyedoc.samples import GazeSample

SUBSCRIBE_LINE = b'{"cmd":"subscribe"}\n'


def _parse_endpoint(endpoint: str) -> tuple[str, int]:
    host, sep, port = endpoint.rpartition(":")
    if not sep or not host:
        raise InvalidConfig(f"endpoint must be host:port, got {endpoint!r}")
    try:
        return host, int(port)
    except ValueError as exc:
        raise InvalidConfig(f"endpoint port must be an integer, got {port!r}") from exc


class TrackerClient:
    def __init__(
        self,
        endpoint: str,
        connect_attempts: int = 5,
        backoff_initial_s: float = 0.25,
        backoff_cap_s: float = 5.0,
        socket_timeout_s: float = 0.5,
    ):
        self.host, self.port = _parse_endpoint(endpoint)
        self.connect_attempts = connect_attempts
        self.backoff_initial_s = backoff_initial_s
        self.backoff_cap_s = backoff_cap_s
        self.socket_timeout_s = socket_timeout_s
        self.skipped_frames = 0
        self.reconnects = 0
        self._sock: socket.socket | None = None
        self._file = None
        self._stop = threading.Event()
        self._last_ts: int | None = None

    def stop(self) -> None:
        self._stop.set()
        self._close()

    def _close(self) -> None:
        if self._file is not None:
            try:
                self._file.close()
            except OSError:
                pass
            self._file = None
        if self._sock is not None:
            try:
                self._sock.close()
            except OSError:
                pass
            self._sock = None

    def connect(self) -> None:
        """Connects and subscribes, retrying up to the attempt budget."""
        backoff = self.backoff_initial_s
        last_error: Exception | None = None
        for _ in range(self.connect_attempts):
            if self._stop.is_set():
                raise TrackerUnreachable("client stopped")
            try:
                sock = socket.create_connection(
                    (self.host, self.port), timeout=self.socket_timeout_s
                )
                sock.settimeout(self.socket_timeout_s)
                sock.sendall(SUBSCRIBE_LINE)
                self._sock = sock
                self._file = sock.makefile("rb")
                return
            except OSError as exc:
                last_error = exc
                time.sleep(backoff)
                backoff = min(backoff * 2, self.backoff_cap_s)
        raise TrackerUnreachable(
            f"{self.host}:{self.port} unreachable after "
            f"{self.connect_attempts} attempts: {last_error}"
        )

    def _frame_to_sample(self, line: bytes) -> GazeSample | None:
        """None means the frame was skipped."""
        try:
            frame = json.loads(line)
        except json.JSONDecodeError:
            return None
        if not isinstance(frame, dict):
            return None
        ts = frame.get("ts")
        ok = frame.get("ok")
        if not isinstance(ts, int) or isinstance(ts, bool) or not isinstance(ok, bool):
            return None
        if self._last_ts is not None and ts <= self._last_ts:
            return None
        if not ok:
            self._last_ts = ts
            return GazeSample.gap(ts)
        x, y = frame.get("x"), frame.get("y")
        if (
            not isinstance(x, (int, float))
            or not isinstance(y, (int, float))
            or not (math.isfinite(x) and math.isfinite(y))
        ):
            return None
        self._last_ts = ts
        return GazeSample.point(ts, x, y)

    def samples(self) -> Iterator[GazeSample]:
        """Blocking frame stream; raises TrackerUnreachable when a
        reconnect episode exhausts the attempt budget."""
        if self._sock is None:
            self.connect()
        while not self._stop.is_set():
            try:
                line = self._file.readline()
            except socket.timeout:
                continue
            except OSError:
                line = b""
            if line:
                sample = self._frame_to_sample(line)
                if sample is None:
                    self.skipped_frames += 1
                    continue
                yield sample
                continue
            if self._stop.is_set():
                return
            yield from self._reconnect_with_gap()

    def _reconnect_with_gap(self) -> Iterator[GazeSample]:
        self._close()
        self.reconnects += 1
        dropped_at = time.monotonic()
        backoff = self.backoff_initial_s
        for attempt in range(self.connect_attempts):
            if self._stop.is_set():
                return
            time.sleep(backoff)
            backoff = min(backoff * 2, self.backoff_cap_s)
            # The outage must read as a gap: synthesize an invalid sample
            # stamped past the last real frame.
            if self._last_ts is not None:
                elapsed_ms = int((time.monotonic() - dropped_at) * 1000)
                ts = self._last_ts + max(1, elapsed_ms)
                self._last_ts = ts
                yield GazeSample.gap(ts)
            try:
                sock = socket.create_connection(
                    (self.host, self.port), timeout=self.socket_timeout_s
                )
                sock.settimeout(self.socket_timeout_s)
                sock.sendall(SUBSCRIBE_LINE)
                self._sock = sock
                self._file = sock.makefile("rb")
                return
            except OSError:
                continue
        raise TrackerUnreachable(
            f"lost connection to {self.host}:{self.port} and could not "
            f"reconnect within {self.connect_attempts} attempts"
        )


def connect_tracker(endpoint: str, **kwargs) -> TrackerClient:
    """Connects eagerly; iterate client.samples() for the stream."""
    client = TrackerClient(endpoint, **kwargs)
    client.connect()
    return client
