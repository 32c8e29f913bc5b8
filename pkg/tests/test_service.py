from __future__ import annotations

import json
import time
import socket

import pytest
from fastapi.testclient import TestClient

from eyedoc.data import canonical_trace_path
from eyedoc.service import ServiceConfig, create_app, load_service_config
from eyedoc.sources.fake_tracker import FakeTrackerServer
from eyedoc.sources.scenario import canonical_targets_payload


def client_for(tmp_path, **cfg_kwargs) -> TestClient:
    cfg = ServiceConfig(export_dir=str(tmp_path / "exports"), **cfg_kwargs)
    return TestClient(create_app(cfg))


def api_session(client) -> str:
    resp = client.post("/sessions", json={"source": {"kind": "api"}})
    assert resp.status_code == 201, resp.text
    return resp.json()["id"]


def sample(t, x, y, valid=True):
    if valid:
        return {"t_ms": t, "x": x, "y": y, "valid": True}
    return {"t_ms": t, "x": None, "y": None, "valid": False}


def push_fixation(client, sid, x, y, t0=0, duration=1000, step=10):
    samples = [sample(t0 + i * step, x, y) for i in range(duration // step)]
    resp = client.post(f"/sessions/{sid}/gaze", json={"samples": samples})
    assert resp.status_code == 200, resp.text
    return resp.json()["accepted"]


TARGETS = {
    "generation": 1,
    "scroll": {"x": 0, "y": 0},
    "targets": [
        {"id": "m1", "kind": "link", "rect": {"x": 100, "y": 100, "w": 200, "h": 50}, "href": "a.html"}
    ],
}


def test_healthz(tmp_path):
    client = client_for(tmp_path)
    resp = client.get("/healthz")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_full_api_session_flow(tmp_path):
    client = client_for(tmp_path)
    sid = api_session(client)

    resp = client.put(f"/sessions/{sid}/targets", json=TARGETS)
    assert resp.status_code == 200
    assert resp.json() == {"generation": 1}

    accepted = push_fixation(client, sid, 150, 125)
    assert accepted == 100

    resp = client.get(f"/sessions/{sid}/events", params={"since": 0})
    body = resp.json()
    assert body["events"], "events expected"
    seqs = [e["seq"] for e in body["events"]]
    assert seqs == list(range(1, len(seqs) + 1))
    types = {e["type"] for e in body["events"]}
    assert {"smoothed_point", "target_enter", "dwell_progress", "selection"} <= types
    selection = next(e for e in body["events"] if e["type"] == "selection")
    assert selection["target_id"] == "m1"
    assert selection["trigger"] == "dwell"
    assert selection["t_ms"] == 800

    resp = client.delete(f"/sessions/{sid}")
    assert resp.status_code == 200
    exported = resp.json()["exported"]
    assert exported and exported.endswith(".jsonl")
    lines = open(exported, encoding="utf-8").read().splitlines()
    assert json.loads(lines[0])["seq"] == 1


def test_poll_pagination_reconstructs_log(tmp_path):
    client = client_for(tmp_path)
    sid = api_session(client)
    client.put(f"/sessions/{sid}/targets", json=TARGETS)
    # more than one page (500) of events: 600 samples on target
    push_fixation(client, sid, 150, 125, duration=6000, step=10)
    since = 0
    collected = []
    while True:
        body = client.get(f"/sessions/{sid}/events", params={"since": since}).json()
        if not body["events"]:
            break
        collected.extend(body["events"])
        assert len(body["events"]) <= 500
        since = body["events"][-1]["seq"]
        assert body["next_seq"] == since + 1
    assert [e["seq"] for e in collected] == list(range(1, len(collected) + 1))
    assert len(collected) > 500


def test_poll_idempotent_and_badseq(tmp_path):
    client = client_for(tmp_path)
    sid = api_session(client)
    client.put(f"/sessions/{sid}/targets", json=TARGETS)
    push_fixation(client, sid, 150, 125, duration=200)
    first = client.get(f"/sessions/{sid}/events", params={"since": 0}).json()
    second = client.get(f"/sessions/{sid}/events", params={"since": 0}).json()
    assert first == second
    latest = first["events"][-1]["seq"]
    empty = client.get(f"/sessions/{sid}/events", params={"since": latest}).json()
    assert empty["events"] == []
    assert empty["next_seq"] == latest + 1
    resp = client.get(f"/sessions/{sid}/events", params={"since": latest + 5})
    assert resp.status_code == 400
    assert resp.json()["error"] == "BadSeq"


def test_unknown_session_code(tmp_path):
    client = client_for(tmp_path)
    resp = client.get("/sessions/nope/events")
    assert resp.status_code == 404
    assert resp.json()["error"] == "UnknownSession"
    resp = client.delete("/sessions/nope")
    assert resp.status_code == 404
    assert resp.json()["error"] == "UnknownSession"


def test_create_invalid_config(tmp_path):
    client = client_for(tmp_path)
    resp = client.post(
        "/sessions", json={"interaction": {"dwell_ms": 0}, "source": {"kind": "api"}}
    )
    assert resp.status_code == 400
    assert resp.json()["error"] == "InvalidConfig"


def test_create_tracker_down_source_unavailable(tmp_path):
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        dead_port = probe.getsockname()[1]
    client = client_for(tmp_path)
    resp = client.post(
        "/sessions",
        json={
            "source": {
                "kind": "tracker",
                "endpoint": f"127.0.0.1:{dead_port}",
                "retry_budget": 1,
            }
        },
    )
    assert resp.status_code == 503
    assert resp.json()["error"] == "SourceUnavailable"


def test_targets_schema_and_generation_errors(tmp_path):
    client = client_for(tmp_path)
    sid = api_session(client)
    dup = {
        "generation": 1,
        "targets": [
            {"id": "a", "kind": "link", "rect": {"x": 0, "y": 0, "w": 10, "h": 10}},
            {"id": "a", "kind": "link", "rect": {"x": 1, "y": 1, "w": 10, "h": 10}},
        ],
    }
    resp = client.put(f"/sessions/{sid}/targets", json=dup)
    assert resp.status_code == 400
    assert resp.json()["error"] == "SchemaError"

    ok = client.put(f"/sessions/{sid}/targets", json=TARGETS)
    assert ok.status_code == 200
    skew = dict(TARGETS, generation=3)
    resp = client.put(f"/sessions/{sid}/targets", json=skew)
    assert resp.status_code == 409
    assert resp.json()["error"] == "GenerationSkew"


def test_push_gaze_wrong_source_kind(tmp_path):
    client = client_for(tmp_path)
    resp = client.post(
        "/sessions",
        json={"source": {"kind": "replay", "path": str(canonical_trace_path()), "speed": 0}},
    )
    sid = resp.json()["id"]
    resp = client.post(f"/sessions/{sid}/gaze", json={"samples": [sample(0, 1, 1)]})
    assert resp.status_code == 409
    assert resp.json()["error"] == "WrongSourceKind"


def test_push_gaze_non_monotonic(tmp_path):
    client = client_for(tmp_path)
    sid = api_session(client)
    resp = client.post(
        f"/sessions/{sid}/gaze",
        json={"samples": [sample(10, 1, 1), sample(10, 1, 1)]},
    )
    assert resp.status_code == 400
    assert resp.json()["error"] == "NonMonotonicTimestamp"
    # batch rejected atomically
    resp = client.post(f"/sessions/{sid}/gaze", json={"samples": [sample(10, 1, 1)]})
    assert resp.status_code == 200


def test_update_config_takes_effect_and_resets(tmp_path):
    client = client_for(tmp_path)
    sid = api_session(client)
    client.put(f"/sessions/{sid}/targets", json=TARGETS)
    push_fixation(client, sid, 150, 125, duration=400)  # 400 ms toward 800
    resp = client.patch(f"/sessions/{sid}/config", json={"dwell_ms": 500})
    assert resp.status_code == 200
    assert resp.json() == {"ok": True}
    push_fixation(client, sid, 150, 125, t0=400, duration=700)
    events = client.get(f"/sessions/{sid}/events", params={"since": 0}).json()["events"]
    selections = [e for e in events if e["type"] == "selection"]
    # engagement reset at the config change: re-enter at 400, select at 900
    assert [e["t_ms"] for e in selections] == [900]
    leaves = [e for e in events if e["type"] == "target_leave"]
    assert leaves, "config change must reset the engagement"


def test_update_config_invalid(tmp_path):
    client = client_for(tmp_path)
    sid = api_session(client)
    resp = client.patch(
        f"/sessions/{sid}/config", json={"dwell_ms": 500, "off_target_grace_ms": 500}
    )
    assert resp.status_code == 400
    assert resp.json()["error"] == "InvalidConfig"


def test_blink_style_via_config(tmp_path):
    client = client_for(tmp_path)
    sid = api_session(client)
    client.put(f"/sessions/{sid}/targets", json=TARGETS)
    client.patch(f"/sessions/{sid}/config", json={"navigation_style": "blink"})
    samples = [sample(i * 10, 150, 125) for i in range(30)]  # 0..290
    samples += [sample(300 + i * 10, None, None, valid=False) for i in range(15)]  # blink
    samples += [sample(450 + i * 10, 150, 125) for i in range(5)]
    client.post(f"/sessions/{sid}/gaze", json={"samples": samples})
    events = client.get(f"/sessions/{sid}/events", params={"since": 0}).json()["events"]
    selections = [e for e in events if e["type"] == "selection"]
    assert selections and selections[0]["trigger"] == "blink"
    assert not any(e["type"] == "dwell_progress" for e in events)


def test_replay_session_drains_and_exports(tmp_path):
    client = client_for(tmp_path)
    resp = client.post(
        "/sessions",
        json={"source": {"kind": "replay", "path": str(canonical_trace_path()), "speed": 0}},
    )
    sid = resp.json()["id"]
    client.put(f"/sessions/{sid}/targets", json=canonical_targets_payload())
    first = client.get(f"/sessions/{sid}/events", params={"since": 0}).json()
    assert first["events"], "first poll starts the drain"
    exported = client.delete(f"/sessions/{sid}").json()["exported"]
    entries = [json.loads(line) for line in open(exported, encoding="utf-8")]
    assert [e["seq"] for e in entries] == list(range(1, len(entries) + 1))
    selections = [e for e in entries if e["type"] == "selection"]
    assert len(selections) == 2


def test_tracker_session_end_to_end(tmp_path):
    # paced at 10 ms so target registration lands mid-stream
    frames = [{"ts": i * 10, "x": 150.0, "y": 125.0, "ok": True} for i in range(200)]
    server = FakeTrackerServer(frames, interval_s=0.01).start()
    try:
        client = client_for(tmp_path)
        resp = client.post(
            "/sessions", json={"source": {"kind": "tracker", "endpoint": server.endpoint}}
        )
        assert resp.status_code == 201
        sid = resp.json()["id"]
        client.put(f"/sessions/{sid}/targets", json=TARGETS)
        deadline = 50
        selections = []
        while deadline and not selections:
            deadline -= 1
            time.sleep(0.1)
            events = client.get(f"/sessions/{sid}/events", params={"since": 0}).json()["events"]
            selections = [e for e in events if e["type"] == "selection"]
        assert selections, "tracker-fed dwell selection expected"
        client.delete(f"/sessions/{sid}")
    finally:
        server.stop()


def test_malformed_body_is_schema_error(tmp_path):
    client = client_for(tmp_path)
    resp = client.post(
        "/sessions", content=b"{not json", headers={"content-type": "application/json"}
    )
    assert resp.status_code == 400
    assert resp.json()["error"] == "SchemaError"


def test_service_config_file(tmp_path):
    path = tmp_path / "svc.ini"
    path.write_text(
        "[server]\nhost = 0.0.0.0\nport = 9000\ncors_allow_origin = http://docs.local\n"
        "export_dir = /tmp/exp\n\n[interaction]\ndwell_ms = 600\n\n[pipeline]\nscreen_w = 2560\n",
        encoding="utf-8",
    )
    cfg = load_service_config(path)
    assert cfg.host == "0.0.0.0"
    assert cfg.port == 9000
    assert cfg.cors_allow_origin == "http://docs.local"
    assert cfg.interaction_defaults == {"dwell_ms": 600}
    assert cfg.pipeline_defaults == {"screen_w": 2560}


def test_defaults_from_config_apply(tmp_path):
    client = client_for(tmp_path, interaction_defaults={"dwell_ms": 300})
    sid = api_session(client)
    client.put(f"/sessions/{sid}/targets", json=TARGETS)
    push_fixation(client, sid, 150, 125, duration=400)
    events = client.get(f"/sessions/{sid}/events", params={"since": 0}).json()["events"]
    assert [e["t_ms"] for e in events if e["type"] == "selection"] == [300]


def test_cors_header_present(tmp_path):
    client = client_for(tmp_path)
    resp = client.get("/healthz", headers={"Origin": "http://docs.local"})
    assert resp.headers.get("access-control-allow-origin") == "*"
