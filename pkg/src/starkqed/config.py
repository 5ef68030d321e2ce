"""Flat key-value configuration files.

Grammar: one ``key = value`` pair per line; blank lines and lines starting
with ``#`` are ignored; list values are comma separated; booleans are
``true``/``false``.  Keys are case-insensitive and use underscores.
"""

from __future__ import annotations

from pathlib import Path

__all__ = [
    "ConfigError",
    "parse_kv_file",
    "parse_bool",
    "parse_float_list",
]


class ConfigError(ValueError):
    """Invalid configuration key or value."""


def parse_kv_file(path: str | Path) -> dict[str, str]:
    """Read a flat key-value file into a string dict."""
    out: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().lower()
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        if key in out:
            raise ConfigError(f"{path}:{lineno}: duplicate key '{key}'")
        out[key] = value.strip()
    return out


def parse_bool(value: str, key: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"invalid boolean for {key}: {value!r}")


def parse_float_list(value: str, key: str) -> tuple[float, ...]:
    items = [item.strip() for item in value.split(",") if item.strip()]
    if not items:
        raise ConfigError(f"empty list for {key}")
    try:
        return tuple(float(item) for item in items)
    except ValueError as exc:
        raise ConfigError(f"invalid number in {key}: {exc}") from None
