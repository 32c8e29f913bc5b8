#!/usr/bin/env python3
"""Regenerates tests/golden/protocol.json from the request script.

Run from the repo root after a deliberate protocol change:

    python scripts/gen_golden.py

Review the diff before committing; the fixture is the wire contract.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "tests"))

from fastapi.testclient import TestClient

from eyedoc.data import canonical_trace_path
from eyedoc.service import ServiceConfig, create_app
from golden_steps import run_steps


def _reverse_sub(value, bindings: dict[str, str]):
    """Puts placeholders back over bound session ids in captured bodies."""
    if isinstance(value, str):
        for key, bound in bindings.items():
            value = value.replace(bound, "{" + key + "}")
        return value
    if isinstance(value, dict):
        return {k: _reverse_sub(v, bindings) for k, v in value.items()}
    if isinstance(value, list):
        return [_reverse_sub(v, bindings) for v in value]
    return value


def main() -> int:
    client = TestClient(create_app(ServiceConfig()))
    cases = []
    bindings: dict[str, str] = {}
    with client:
        for step, request, response in run_steps(client, str(canonical_trace_path())):
            if "bind" in step and response.status_code == 201:
                bindings[step["bind"]] = response.json()["id"]
            cases.append(
                {
                    "name": step["name"],
                    "request": step["request"],
                    "response": {
                        "status": response.status_code,
                        "json": _reverse_sub(response.json(), bindings),
                    },
                }
            )
    out = REPO / "tests" / "golden" / "protocol.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps(cases, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(cases)} cases to {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
