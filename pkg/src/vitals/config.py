"""Flat key=value configuration files mirroring the CLI flag names.

Lines are ``key = value``; blank lines and ``#`` comments are skipped.
Keys are case-insensitive and ``_`` reads the same as ``-``, so
``cv_threshold`` and ``cv-threshold`` both address the --cv-threshold flag.
Flags always win over file values.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ConfigError


def parse_kv(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"line {line_no}: expected 'key = value', got {line!r}")
        out[key.strip().lower().replace("_", "-")] = value.strip()
    return out


def load_config(path: str | Path) -> dict[str, str]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    return parse_kv(text)
