"""HTML tree preparation: inserts the overlay script tag into generated
documentation, idempotently and reversibly.

The splice is byte-level: the tag goes immediately before the first
</head> (case-insensitive), falling back to right after the first <html>
tag, or to the top of the file, with a warning for either fallback. Files
already stamped with data-eyedoc-marker are skipped, so re-runs change
nothing. --backup writes <name>.eyedoc.bak once and restore puts the
backups back verbatim.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from eyedoc.errors import RootNotFound

MARKER = b"data-eyedoc-marker"
BACKUP_SUFFIX = ".eyedoc.bak"
HTML_EXTENSIONS = {".html", ".htm"}
PROFILES = ("javadoc", "doxygen", "generic")

_HEAD_CLOSE = re.compile(rb"</head>", re.IGNORECASE)
_HTML_OPEN = re.compile(rb"<html[^>]*>", re.IGNORECASE)


@dataclass
class InjectReport:
    scanned: int = 0
    modified: int = 0
    skipped_already_injected: int = 0
    skipped_no_html: int = 0
    failures: int = 0
    warnings: list[dict] = field(default_factory=list)

    def warn(self, path: Path, message: str) -> None:
        self.warnings.append({"path": str(path), "message": message})

    def to_dict(self) -> dict:
        return {
            "scanned": self.scanned,
            "modified": self.modified,
            "skipped_already_injected": self.skipped_already_injected,
            "skipped_no_html": self.skipped_no_html,
            "failures": self.failures,
            "warnings": self.warnings,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def build_tag(script_url: str, service_url: str, profile: str) -> bytes:
    tag = (
        f'<script src="{script_url}" data-eyedoc-service="{service_url}" '
        f'data-eyedoc-profile="{profile}" data-eyedoc-marker="1"></script>'
    )
    return tag.encode("ascii")


def _spliced(content: bytes, tag: bytes) -> tuple[bytes, str | None]:
    """Returns (new content, warning or None)."""
    match = _HEAD_CLOSE.search(content)
    if match:
        pos = match.start()
        return content[:pos] + tag + content[pos:], None
    match = _HTML_OPEN.search(content)
    if match:
        pos = match.end()
        return (
            content[:pos] + tag + content[pos:],
            "no </head> found, injected after <html>",
        )
    return tag + content, "no </head> or <html> found, prepended"


def _walk_files(root: Path) -> list[Path]:
    return sorted(p for p in root.rglob("*") if p.is_file())


def inject(
    root: str | Path,
    script_url: str,
    service_url: str,
    profile: str = "generic",
    dry_run: bool = False,
    backup: bool = False,
) -> InjectReport:
    root = Path(root)
    if not root.is_dir():
        raise RootNotFound(f"{root} is not a directory")
    tag = build_tag(script_url, service_url, profile)
    report = InjectReport()
    for path in _walk_files(root):
        report.scanned += 1
        if path.name.endswith(BACKUP_SUFFIX) or path.suffix.lower() not in HTML_EXTENSIONS:
            report.skipped_no_html += 1
            continue
        try:
            content = path.read_bytes()
        except OSError as exc:
            report.failures += 1
            report.warn(path, f"unreadable: {exc}")
            continue
        if MARKER in content:
            report.skipped_already_injected += 1
            continue
        new_content, warning = _spliced(content, tag)
        if warning:
            report.warn(path, warning)
        report.modified += 1
        if dry_run:
            continue
        try:
            if backup:
                backup_path = path.with_name(path.name + BACKUP_SUFFIX)
                if not backup_path.exists():
                    backup_path.write_bytes(content)
            path.write_bytes(new_content)
        except OSError as exc:
            report.modified -= 1
            report.failures += 1
            report.warn(path, f"unwritable: {exc}")
    return report


def restore(root: str | Path) -> InjectReport:
    """Puts every .eyedoc.bak back over its original (the backup is
    authoritative) and removes it. Non-backup files count as skipped."""
    root = Path(root)
    if not root.is_dir():
        raise RootNotFound(f"{root} is not a directory")
    report = InjectReport()
    for path in _walk_files(root):
        report.scanned += 1
        if not path.name.endswith(BACKUP_SUFFIX):
            report.skipped_no_html += 1
            continue
        original = path.with_name(path.name[: -len(BACKUP_SUFFIX)])
        try:
            original.write_bytes(path.read_bytes())
            path.unlink()
            report.modified += 1
        except OSError as exc:
            report.failures += 1
            report.warn(path, f"restore failed: {exc}")
    return report
