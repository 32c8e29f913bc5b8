"""Append-only session event log with consecutive sequence numbers.

Entries are serialized to their wire dicts at append time and never
mutated, so paging and the JSONL export are byte-stable. Appends happen
under the session lock; reads only index the append-only list, which is
safe alongside appends under CPython.
"""

from __future__ import annotations

import json
from pathlib import Path

from eyedoc.errors import BadSeq
from eyedoc.events import GazeEvent, InteractionEvent, to_wire

PAGE_LIMIT = 500


class EventLog:
    def __init__(self):
        self._entries: list[dict] = []

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def latest_seq(self) -> int:
        return len(self._entries)

    def append(self, ev: GazeEvent | InteractionEvent) -> int:
        t_ms, payload = to_wire(ev)
        seq = len(self._entries) + 1
        self._entries.append({"seq": seq, "t_ms": t_ms, **payload})
        return seq

    def page(self, since: int, limit: int = PAGE_LIMIT) -> tuple[list[dict], int]:
        """Entries with seq > since, at most `limit`, plus next_seq
        (= last returned seq + 1). Clients resume with since = last seen
        seq; since beyond the log is a BadSeq."""
        latest = len(self._entries)
        if since < 0 or since > latest:
            raise BadSeq(f"since={since} is beyond the latest seq {latest}")
        items = self._entries[since : since + limit]
        next_seq = (items[-1]["seq"] if items else since) + 1
        return items, next_seq

    def to_lines(self) -> list[str]:
        return [json.dumps(e, separators=(",", ":")) for e in self._entries]

    def export_jsonl(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for line in self.to_lines():
                fh.write(line)
                fh.write("\n")
