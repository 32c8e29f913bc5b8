"""Console entry points."""

from __future__ import annotations

import argparse
import json
import sys

from eyedoc.errors import EyedocError


def serve_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="eyedoc-serve", description="Run the gaze session service")
    parser.add_argument("--config", help="INI config file (see eyedoc.service.config)")
    parser.add_argument("--host", help="bind address override")
    parser.add_argument("--port", type=int, help="port override")
    args = parser.parse_args(argv)

    import uvicorn

    from eyedoc.service import ServiceConfig, create_app, load_service_config

    cfg = load_service_config(args.config) if args.config else ServiceConfig()
    if args.host:
        cfg.host = args.host
    if args.port:
        cfg.port = args.port
    app = create_app(cfg)
    uvicorn.run(app, host=cfg.host, port=cfg.port, log_level="info")
    return 0


def inject_main(argv: list[str] | None = None) -> int:
    from eyedoc.injector import PROFILES, inject, restore

    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "restore":
        parser = argparse.ArgumentParser(prog="eyedoc-inject restore")
        parser.add_argument("--root", required=True)
        args = parser.parse_args(argv[1:])
        try:
            report = restore(args.root)
        except EyedocError as exc:
            print(json.dumps({"error": exc.code, "detail": str(exc)}))
            return 2
    else:
        parser = argparse.ArgumentParser(
            prog="eyedoc-inject",
            description="Insert the overlay script tag into an HTML documentation tree",
        )
        parser.add_argument("--root", required=True)
        parser.add_argument("--script-url", required=True)
        parser.add_argument("--service-url", required=True)
        parser.add_argument("--profile", choices=PROFILES, default="generic")
        parser.add_argument("--dry-run", action="store_true")
        parser.add_argument("--backup", action="store_true")
        args = parser.parse_args(argv)
        try:
            report = inject(
                args.root,
                script_url=args.script_url,
                service_url=args.service_url,
                profile=args.profile,
                dry_run=args.dry_run,
                backup=args.backup,
            )
        except EyedocError as exc:
            print(json.dumps({"error": exc.code, "detail": str(exc)}))
            return 2
    print(report.to_json())
    return 1 if report.failures else 0


def metrics_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="eyedoc-metrics", description="Report on an exported session event log"
    )
    parser.add_argument("--log", required=True, help="event log JSONL path")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    args = parser.parse_args(argv)

    from eyedoc.metrics import compute_metrics, export_report

    try:
        report = compute_metrics(args.log)
    except (EyedocError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(export_report(report, args.format), end="")
    return 0


def scenario_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="eyedoc-scenario", description="Generate a trace file from a scenario spec"
    )
    parser.add_argument("--spec", help="scenario spec JSON (default: bundled canonical)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", required=True, help="output trace JSONL path")
    args = parser.parse_args(argv)

    from eyedoc.samples import write_trace
    from eyedoc.sources.scenario import (
        CANONICAL_SEED,
        canonical_scenario,
        generate_scenario,
        spec_from_dict,
    )

    if args.spec:
        with open(args.spec, "r", encoding="utf-8") as fh:
            spec = spec_from_dict(json.load(fh))
        seed = args.seed if args.seed is not None else 0
    else:
        spec = canonical_scenario()
        seed = args.seed if args.seed is not None else CANONICAL_SEED
    try:
        samples = generate_scenario(spec, seed)
    except EyedocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    write_trace(args.out, samples)
    print(f"wrote {len(samples)} samples to {args.out}")
    return 0


def fake_tracker_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="eyedoc-fake-tracker",
        description="Serve the tracker adapter protocol from a trace or scenario",
    )
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8701)
    parser.add_argument("--trace", help="trace JSONL to serve (default: canonical scenario)")
    parser.add_argument("--rate", type=float, default=60.0, help="frames per second (0 = unpaced)")
    parser.add_argument("--loop", action="store_true")
    args = parser.parse_args(argv)

    from eyedoc.samples import read_trace
    from eyedoc.sources.fake_tracker import FakeTrackerServer, frames_from_samples
    from eyedoc.sources.scenario import CANONICAL_SEED, canonical_scenario, generate_scenario

    if args.trace:
        samples = read_trace(args.trace)
    else:
        samples = generate_scenario(canonical_scenario(), CANONICAL_SEED)
    interval = 1.0 / args.rate if args.rate > 0 else 0.0
    server = FakeTrackerServer(
        frames_from_samples(samples),
        host=args.host,
        port=args.port,
        interval_s=interval,
        loop=args.loop,
    ).start()
    print(f"fake tracker on {server.endpoint} ({len(samples)} frames, loop={args.loop})")
    try:
        while True:
            import time

            time.sleep(1)
    except KeyboardInterrupt:
        server.stop()
    return 0
