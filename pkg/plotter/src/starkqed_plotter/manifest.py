"""Manifest and CSV contracts emitted by the starkqed preset command."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["ManifestError", "PlotManifest", "SeriesData", "load_manifest", "read_curve_csv"]

# Series count per known figure id.
FIGURE_SERIES_COUNT = {"fig2": 2, "fig3": 2, "fig4": 2, "fig5": 2, "fig6": 1}

LINE_STYLES = {"solid": "-", "dotted": ":"}

CSV_HEADER = "gt,concurrence,eof"


class ManifestError(ValueError):
    """Manifest or referenced CSV is missing or malformed."""


@dataclass(frozen=True)
class SeriesData:
    csv_path: Path
    label: str
    style: str
    gt: np.ndarray
    eof: np.ndarray


@dataclass(frozen=True)
class PlotManifest:
    figure: str
    xlabel: str
    ylabel: str
    image: str
    series: tuple[SeriesData, ...]
    assumptions: tuple[str, ...]


def read_curve_csv(path: Path) -> tuple[np.ndarray, np.ndarray]:
    """Parse a sweep CSV into (gt, eof); values are taken verbatim."""
    if not path.exists():
        raise ManifestError(f"{path}: csv file does not exist")
    gt = []
    eof = []
    header_seen = False
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if line.startswith("#") or not line.strip():
            continue
        if not header_seen:
            if line != CSV_HEADER:
                raise ManifestError(f"{path}:{lineno}: expected header '{CSV_HEADER}', got {line!r}")
            header_seen = True
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ManifestError(f"{path}:{lineno}: expected 3 columns, got {len(parts)}")
        try:
            values = [float(part) for part in parts]
        except ValueError:
            raise ManifestError(f"{path}:{lineno}: non-numeric value in {line!r}") from None
        gt.append(values[0])
        eof.append(values[2])
    if not header_seen:
        raise ManifestError(f"{path}: no data header found")
    if not gt:
        raise ManifestError(f"{path}: no data rows")
    return np.array(gt), np.array(eof)


def load_manifest(path: str | Path) -> PlotManifest:
    """Load and validate a preset manifest; resolves CSV paths relative to it."""
    path = Path(path)
    if not path.exists():
        raise ManifestError(f"{path}: manifest does not exist")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: invalid JSON ({exc})") from None
    for key in ("figure", "series", "xlabel", "ylabel", "image"):
        if key not in raw:
            raise ManifestError(f"{path}: missing manifest key '{key}'")
    figure = raw["figure"]
    if figure not in FIGURE_SERIES_COUNT:
        raise ManifestError(f"{path}: unknown figure id '{figure}'")
    entries = raw["series"]
    if not entries:
        raise ManifestError(f"{path}: manifest has no series")
    if len(entries) != FIGURE_SERIES_COUNT[figure]:
        raise ManifestError(
            f"{path}: {figure} defines {FIGURE_SERIES_COUNT[figure]} series, "
            f"manifest has {len(entries)}"
        )
    series = []
    for entry in entries:
        for key in ("csv", "label", "style"):
            if key not in entry:
                raise ManifestError(f"{path}: series entry missing '{key}'")
        if entry["style"] not in LINE_STYLES:
            raise ManifestError(f"{path}: unknown line style '{entry['style']}'")
        csv_path = path.parent / entry["csv"]
        gt, eof = read_curve_csv(csv_path)
        series.append(
            SeriesData(csv_path=csv_path, label=entry["label"], style=entry["style"], gt=gt, eof=eof)
        )
    return PlotManifest(
        figure=figure,
        xlabel=raw["xlabel"],
        ylabel=raw["ylabel"],
        image=raw["image"],
        series=tuple(series),
        assumptions=tuple(raw.get("assumptions", ())),
    )
