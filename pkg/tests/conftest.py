from __future__ import annotations

import random

import pytest

from eyedoc.samples import GazeSample
from eyedoc.sources.scenario import ScenarioSpec, Segment, generate_scenario


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance gate criterion")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if "acceptance" in report.keywords:
                name = report.nodeid.split("::")[-1]
                lines.append(f"{name}: {'PASS' if outcome == 'passed' else 'FAIL'}")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


def steady_trace(x=100.0, y=100.0, duration_ms=300, rate_hz=60, t0=0):
    """Samples at a fixed point."""
    out = []
    k = 0
    while True:
        t = t0 + round(k * 1000 / rate_hz)
        if t - t0 >= duration_ms:
            break
        out.append(GazeSample.point(t, x, y))
        k += 1
    return out


def random_scenario(rng: random.Random, screen_w=1920, screen_h=1080) -> ScenarioSpec:
    """Random mix of fixations, saccades, and gaps for property tests."""
    segments = []
    pos = (rng.uniform(50, screen_w - 50), rng.uniform(50, screen_h - 50))
    for _ in range(rng.randint(2, 8)):
        kind = rng.choice(["fixate", "fixate", "saccade", "blink_gap", "lookaway_gap"])
        if kind == "fixate":
            segments.append(
                Segment(
                    "fixate",
                    rng.randint(40, 600),
                    at=pos,
                    jitter_px=rng.choice([0.0, 2.0, 12.0, 30.0]),
                )
            )
        elif kind == "saccade":
            nxt = (rng.uniform(0, screen_w), rng.uniform(0, screen_h))
            segments.append(Segment("saccade", rng.randint(30, 120), from_point=pos, to_point=nxt))
            pos = nxt
        elif kind == "blink_gap":
            segments.append(Segment("blink_gap", rng.randint(30, 500)))
        else:
            segments.append(Segment("lookaway_gap", rng.randint(401, 1500)))
    rate = rng.choice([30, 60, 60, 120])
    return ScenarioSpec(sample_rate_hz=rate, segments=tuple(segments))


def random_trace(seed: int):
    rng = random.Random(seed)
    spec = random_scenario(rng)
    return generate_scenario(spec, seed)


@pytest.fixture
def tmp_trace_path(tmp_path):
    def write(lines: list[str]):
        p = tmp_path / "trace.jsonl"
        p.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return p

    return write
