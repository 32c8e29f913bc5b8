from __future__ import annotations

import itertools
import json
import socket
import threading
import time

import pytest

from eyedoc.errors import TrackerUnreachable
from eyedoc.samples import GazeSample
from eyedoc.sources.fake_tracker import FakeTrackerServer, frames_from_samples
from eyedoc.sources.tracker import TrackerClient, connect_tracker


def collect(client, n):
    return list(itertools.islice(client.samples(), n))


def test_frame_mapping():
    frames = [
        {"ts": 100, "x": 10.0, "y": 20.0, "ok": True},
        {"ts": 120, "ok": False},
        {"ts": 140, "x": 11.0, "y": 21.0, "ok": True},
    ]
    server = FakeTrackerServer(frames).start()
    try:
        client = connect_tracker(server.endpoint, connect_attempts=2, backoff_initial_s=0.01)
        got = collect(client, 3)
        client.stop()
        assert got == [
            GazeSample.point(100, 10.0, 20.0),
            GazeSample.gap(120),
            GazeSample.point(140, 11.0, 21.0),
        ]
    finally:
        server.stop()


def test_malformed_frames_skipped():
    frames = [
        {"ts": 100, "x": 1.0, "y": 2.0, "ok": True},
        {"junk": True},
        {"ts": "soon", "ok": False},
        {"ts": 90, "x": 1.0, "y": 2.0, "ok": True},  # regresses: skipped
        {"ts": 140, "x": 3.0, "y": 4.0, "ok": True},
    ]
    server = FakeTrackerServer(frames).start()
    try:
        client = connect_tracker(server.endpoint, connect_attempts=2, backoff_initial_s=0.01)
        got = collect(client, 2)
        client.stop()
        assert [s.t_ms for s in got] == [100, 140]
        assert client.skipped_frames == 3
    finally:
        server.stop()


def test_unreachable_endpoint_raises_after_budget():
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        dead_port = probe.getsockname()[1]
    client = TrackerClient(
        f"127.0.0.1:{dead_port}", connect_attempts=2, backoff_initial_s=0.01
    )
    start = time.monotonic()
    with pytest.raises(TrackerUnreachable):
        client.connect()
    assert time.monotonic() - start < 5


def test_reconnect_emits_gap_and_resumes():
    # first subscription delivers one frame then the server hangs up;
    # the client must bridge the outage with an invalid gap and resubscribe
    server = FakeTrackerServer([{"ts": 100, "x": 1.0, "y": 1.0, "ok": True}]).start()
    client = TrackerClient(
        server.endpoint, connect_attempts=50, backoff_initial_s=0.02, backoff_cap_s=0.05
    )
    client.connect()
    stream = client.samples()
    assert next(stream) == GazeSample.point(100, 1.0, 1.0)
    server.swap_frames([{"ts": 5000, "x": 2.0, "y": 2.0, "ok": True}])

    got = []

    def pull():
        for s in stream:
            got.append(s)
            if s.valid and s.t_ms == 5000:
                return

    t = threading.Thread(target=pull, daemon=True)
    t.start()
    t.join(timeout=5)
    client.stop()
    server.stop()
    assert not t.is_alive()
    assert got[-1] == GazeSample.point(5000, 2.0, 2.0)
    gaps = [s for s in got if not s.valid]
    assert gaps, "outage must surface as invalid samples"
    ts = [s.t_ms for s in got]
    assert ts == sorted(ts)
    assert client.reconnects == 1
