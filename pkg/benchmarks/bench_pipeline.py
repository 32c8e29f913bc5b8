#!/usr/bin/env python3
"""Kernel backend benchmark: full pipeline+engine throughput with the
compiled kernels versus the pure-Python fallback.

    python benchmarks/bench_pipeline.py [--seconds 120] [--rate 60]
"""

from __future__ import annotations

import argparse
import random
import time

from eyedoc import kernels
from eyedoc.engine import InteractionConfig, InteractionEngine, registry_from_payload
from eyedoc.pipeline import GazePipeline, PipelineConfig
from eyedoc.samples import GazeSample
from eyedoc.sources.scenario import canonical_targets_payload


def build_trace(seconds: int, rate: int) -> list[GazeSample]:
    rng = random.Random(11)
    trace = []
    x, y = 600.0, 400.0
    for k in range(seconds * rate):
        t = round(k * 1000 / rate)
        roll = rng.random()
        if roll < 0.02:
            trace.append(GazeSample.gap(t))
            continue
        if roll < 0.10:  # saccade step
            x = min(1900.0, max(10.0, x + rng.uniform(-400, 400)))
            y = min(1060.0, max(10.0, y + rng.uniform(-300, 300)))
        trace.append(
            GazeSample.point(t, x + rng.uniform(-3, 3), y + rng.uniform(-3, 3))
        )
    return trace


def run(backend_name: str, trace: list[GazeSample]) -> tuple[float, int]:
    backend = kernels.get_backend(backend_name)
    pipe = GazePipeline(PipelineConfig(), backend=backend)
    engine = InteractionEngine(
        InteractionConfig(), registry_from_payload(canonical_targets_payload())
    )
    events = 0
    started = time.perf_counter()
    for s in trace:
        for ev in pipe.push(s):
            events += len(engine.step(ev))
    for ev in pipe.flush():
        events += len(engine.step(ev))
    return time.perf_counter() - started, events


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seconds", type=int, default=120, help="trace length in seconds")
    parser.add_argument("--rate", type=int, default=60, help="sample rate in Hz")
    args = parser.parse_args()

    trace = build_trace(args.seconds, args.rate)
    print(f"trace: {len(trace)} samples ({args.seconds}s at {args.rate} Hz)")
    print(f"backends available: {kernels.available_backends()}")

    results = {}
    for name in kernels.available_backends():
        run(name, trace[: args.rate])  # warm up
        elapsed, events = run(name, trace)
        per_sample_us = elapsed * 1e6 / len(trace)
        rate = len(trace) / elapsed
        results[name] = per_sample_us
        print(
            f"{name:>7}: {elapsed:7.3f} s total, {per_sample_us:8.2f} us/sample, "
            f"{rate:12.0f} samples/s, {events} interaction events"
        )
    if "native" in results and "pure" in results:
        print(f"speedup: {results['pure'] / results['native']:.2f}x (native over pure)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
