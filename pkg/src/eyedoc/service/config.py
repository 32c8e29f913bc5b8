"""Service configuration.

Loaded from an INI key-value file (configparser). Sections: [server]
for bind address, CORS origin, export/overlay directories; [pipeline]
and [interaction] for default session configs, merged under per-request
values.

Example:

    [server]
    host = 127.0.0.1
    port = 8700
    cors_allow_origin = *
    export_dir = ./logs
    overlay_dir = ./frontend/dist

    [interaction]
    dwell_ms = 600
    navigation_style = dwell
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from eyedoc.errors import InvalidConfig


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8700
    cors_allow_origin: str = "*"
    export_dir: str | None = None
    overlay_dir: str | None = None
    log_smoothed_every: int = 1
    pipeline_defaults: dict = field(default_factory=dict)
    interaction_defaults: dict = field(default_factory=dict)


def _coerce(value: str):
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            continue
    if value.lower() in ("true", "false"):
        return value.lower() == "true"
    return value


def load_service_config(path: str | Path) -> ServiceConfig:
    parser = configparser.ConfigParser()
    read = parser.read(path, encoding="utf-8")
    if not read:
        raise InvalidConfig(f"config file not found: {path}")
    cfg = ServiceConfig()
    if parser.has_section("server"):
        server = parser["server"]
        cfg.host = server.get("host", cfg.host)
        cfg.port = server.getint("port", cfg.port)
        cfg.cors_allow_origin = server.get("cors_allow_origin", cfg.cors_allow_origin)
        cfg.export_dir = server.get("export_dir", cfg.export_dir)
        cfg.overlay_dir = server.get("overlay_dir", cfg.overlay_dir)
        cfg.log_smoothed_every = server.getint("log_smoothed_every", cfg.log_smoothed_every)
    if cfg.log_smoothed_every < 1:
        raise InvalidConfig("log_smoothed_every must be >= 1")
    for section, bucket in (
        ("pipeline", cfg.pipeline_defaults),
        ("interaction", cfg.interaction_defaults),
    ):
        if parser.has_section(section):
            for key, value in parser[section].items():
                bucket[key] = _coerce(value)
    return cfg
