"""Bundled fake tracker: a protocol-exact test server.

Pushes a fixed frame list to every subscriber, optionally paced. Frames
are serialized compactly so the wire bytes are stable for golden tests.
"""

from __future__ import annotations

import json
import socket
import threading
import time
from typing import Iterable

from eyedoc.samples import GazeSample


def frame_from_sample(s: GazeSample) -> dict:
    if s.valid:
        return {"ts": s.t_ms, "x": s.x, "y": s.y, "ok": True}
    return {"ts": s.t_ms, "ok": False}


def frames_from_samples(samples: Iterable[GazeSample]) -> list[dict]:
    return [frame_from_sample(s) for s in samples]


class FakeTrackerServer:
    def __init__(
        self,
        frames: list[dict],
        host: str = "127.0.0.1",
        port: int = 0,
        interval_s: float = 0.0,
        loop: bool = False,
    ):
        self.frames = frames
        self.host = host
        self.interval_s = interval_s
        self.loop = loop
        self._listener = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        self._listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        self._listener.bind((host, port))
        self._listener.listen(4)
        self._listener.settimeout(0.2)
        self.port = self._listener.getsockname()[1]
        self._stop = threading.Event()
        self._threads: list[threading.Thread] = []
        self._accept_thread: threading.Thread | None = None
        self.clients_served = 0

    @property
    def endpoint(self) -> str:
        return f"{self.host}:{self.port}"

    def swap_frames(self, frames: list[dict]) -> None:
        """New content for subsequent subscribers (reconnect tests)."""
        self.frames = frames

    def start(self) -> "FakeTrackerServer":
        self._accept_thread = threading.Thread(target=self._accept_loop, daemon=True)
        self._accept_thread.start()
        return self

    def stop(self) -> None:
        self._stop.set()
        try:
            self._listener.close()
        except OSError:
            pass
        for t in self._threads:
            t.join(timeout=2)

    def _accept_loop(self) -> None:
        while not self._stop.is_set():
            try:
                conn, _ = self._listener.accept()
            except socket.timeout:
                continue
            except OSError:
                return
            t = threading.Thread(target=self._serve_client, args=(conn,), daemon=True)
            t.start()
            self._threads.append(t)

    def _serve_client(self, conn: socket.socket) -> None:
        conn.settimeout(5.0)
        try:
            with conn:
                reader = conn.makefile("rb")
                line = reader.readline()
                try:
                    cmd = json.loads(line)
                except json.JSONDecodeError:
                    return
                if not isinstance(cmd, dict) or cmd.get("cmd") != "subscribe":
                    return
                self.clients_served += 1
                while not self._stop.is_set():
                    for frame in self.frames:
                        if self._stop.is_set():
                            return
                        payload = json.dumps(frame, separators=(",", ":")) + "\n"
                        conn.sendall(payload.encode("utf-8"))
                        if self.interval_s > 0:
                            time.sleep(self.interval_s)
                    if not self.loop:
                        return
        except OSError:
            return
