"""Offline reports over exported session event logs.

The report covers only log-derivable quantities. A context switch is
operationalized as the interval from a lookaway ending to the next
selection, provided no new lookaway starts in between. Means are absent
(null), not zero, when their population is empty.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from eyedoc.errors import LogParseError, SeqGap

REPORT_NOTE = (
    "Log-derived measures for one session. A context switch is "
    "operationalized as the LookawayEnd-to-next-Selection interval; "
    "task-level timing and perceived workload need study instrumentation "
    "outside this tool."
)


@dataclass
class MetricsReport:
    selections_total: int = 0
    selections_by_trigger: dict[str, int] = field(default_factory=dict)
    mean_engagement_to_selection_ms: float | None = None
    dwell_resets: int = 0
    lookaway_episodes: int = 0
    switch_latencies_ms: list[int] = field(default_factory=list)
    mean_switch_latency_ms: float | None = None

    def is_empty(self) -> bool:
        return (
            self.selections_total == 0
            and self.dwell_resets == 0
            and self.lookaway_episodes == 0
            and not self.switch_latencies_ms
        )


def _parse_entry(raw: str, lineno: int) -> dict:
    try:
        entry = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise LogParseError(f"line {lineno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(entry, dict):
        raise LogParseError(f"line {lineno}: entry must be an object")
    seq = entry.get("seq")
    t_ms = entry.get("t_ms")
    if not isinstance(seq, int) or isinstance(seq, bool):
        raise LogParseError(f"line {lineno}: seq must be an integer")
    if not isinstance(t_ms, int) or isinstance(t_ms, bool):
        raise LogParseError(f"line {lineno}: t_ms must be an integer")
    if not isinstance(entry.get("type"), str):
        raise LogParseError(f"line {lineno}: type must be a string")
    return entry


@dataclass
class _Engagement:
    enter_ms: int
    saw_progress: bool = False
    selected: bool = False


def compute_metrics_lines(lines: Iterable[str]) -> MetricsReport:
    report = MetricsReport()
    engagements: dict[str, _Engagement] = {}
    engagement_spans: list[int] = []
    pending_switch_ms: int | None = None
    expected_seq = 1

    for lineno, raw in enumerate(lines, start=1):
        raw = raw.strip()
        if not raw:
            continue
        entry = _parse_entry(raw, lineno)
        if entry["seq"] != expected_seq:
            raise SeqGap(f"line {lineno}: expected seq {expected_seq}, got {entry['seq']}")
        expected_seq += 1

        kind = entry["type"]
        t_ms = entry["t_ms"]
        if kind == "target_enter":
            engagements[entry.get("target_id")] = _Engagement(enter_ms=t_ms)
        elif kind == "dwell_progress":
            eng = engagements.get(entry.get("target_id"))
            if eng is not None and entry.get("fraction", 0) > 0:
                eng.saw_progress = True
        elif kind == "selection":
            report.selections_total += 1
            trigger = entry.get("trigger", "unknown")
            report.selections_by_trigger[trigger] = (
                report.selections_by_trigger.get(trigger, 0) + 1
            )
            eng = engagements.get(entry.get("target_id"))
            if eng is not None:
                eng.selected = True
                engagement_spans.append(t_ms - eng.enter_ms)
            if pending_switch_ms is not None:
                report.switch_latencies_ms.append(t_ms - pending_switch_ms)
                pending_switch_ms = None
        elif kind == "target_leave":
            eng = engagements.pop(entry.get("target_id"), None)
            if eng is not None and eng.saw_progress and not eng.selected:
                report.dwell_resets += 1
        elif kind == "lookaway_start":
            report.lookaway_episodes += 1
            pending_switch_ms = None
        elif kind == "lookaway_end":
            pending_switch_ms = t_ms

    if engagement_spans:
        report.mean_engagement_to_selection_ms = sum(engagement_spans) / len(engagement_spans)
    if report.switch_latencies_ms:
        report.mean_switch_latency_ms = sum(report.switch_latencies_ms) / len(
            report.switch_latencies_ms
        )
    return report


def compute_metrics(path: str | Path) -> MetricsReport:
    with open(path, "r", encoding="utf-8") as fh:
        return compute_metrics_lines(fh)


def report_to_dict(report: MetricsReport) -> dict:
    return {
        "notes": REPORT_NOTE,
        "selections_total": report.selections_total,
        "selections_by_trigger": dict(sorted(report.selections_by_trigger.items())),
        "mean_engagement_to_selection_ms": report.mean_engagement_to_selection_ms,
        "dwell_resets": report.dwell_resets,
        "lookaway_episodes": report.lookaway_episodes,
        "switch_latencies_ms": report.switch_latencies_ms,
        "mean_switch_latency_ms": report.mean_switch_latency_ms,
    }


def report_from_json(text: str) -> MetricsReport:
    data = json.loads(text)
    return MetricsReport(
        selections_total=data["selections_total"],
        selections_by_trigger=data["selections_by_trigger"],
        mean_engagement_to_selection_ms=data["mean_engagement_to_selection_ms"],
        dwell_resets=data["dwell_resets"],
        lookaway_episodes=data["lookaway_episodes"],
        switch_latencies_ms=data["switch_latencies_ms"],
        mean_switch_latency_ms=data["mean_switch_latency_ms"],
    )


_CSV_COLUMNS = [
    "selections_total",
    "selections_dwell",
    "selections_blink",
    "mean_engagement_to_selection_ms",
    "dwell_resets",
    "lookaway_episodes",
    "mean_switch_latency_ms",
    "switch_latency_ms",
]


def export_report(report: MetricsReport, format: str = "json") -> str:
    """Stable-order JSON, or CSV with one row per switch latency."""
    if format == "json":
        return json.dumps(report_to_dict(report), indent=2)
    if format != "csv":
        raise ValueError(f"unknown format {format!r}")

    out = io.StringIO()
    out.write(f"# {REPORT_NOTE}\n")
    out.write(",".join(_CSV_COLUMNS) + "\n")
    if report.is_empty():
        return out.getvalue()

    def fmt(value) -> str:
        return "" if value is None else str(value)

    scalars = [
        fmt(report.selections_total),
        fmt(report.selections_by_trigger.get("dwell", 0)),
        fmt(report.selections_by_trigger.get("blink", 0)),
        fmt(report.mean_engagement_to_selection_ms),
        fmt(report.dwell_resets),
        fmt(report.lookaway_episodes),
        fmt(report.mean_switch_latency_ms),
    ]
    latencies = report.switch_latencies_ms or [None]
    for latency in latencies:
        out.write(",".join(scalars + [fmt(latency)]) + "\n")
    return out.getvalue()
