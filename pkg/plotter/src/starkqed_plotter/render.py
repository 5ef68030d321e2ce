"""Figure rendering from validated manifests.

Plots each series exactly as stored in its CSV (no smoothing or
resampling) with the manifest's line styles, axis labels and output name.
Rendering is deterministic for identical inputs: fixed figure size, dpi
and layout.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .manifest import LINE_STYLES, PlotManifest

__all__ = ["build_figure", "render"]

FIGSIZE = (6.4, 4.8)
DPI = 150


def build_figure(manifest: PlotManifest):
    """Matplotlib figure for a manifest; separated out so tests can inspect lines."""
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    for series in manifest.series:
        ax.plot(
            series.gt,
            series.eof,
            linestyle=LINE_STYLES[series.style],
            color="black",
            linewidth=1.2,
            label=series.label,
        )
    ax.set_xlabel(manifest.xlabel)
    ax.set_ylabel(manifest.ylabel)
    ax.set_xlim(manifest.series[0].gt[0], manifest.series[0].gt[-1])
    ax.legend(frameon=False)
    fig.tight_layout()
    return fig


def render(manifest: PlotManifest, out_dir: str | Path) -> Path:
    """Render the manifest to ``out_dir / manifest.image`` and return the path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fig = build_figure(manifest)
    target = out_dir / manifest.image
    try:
        fig.savefig(target)
    finally:
        plt.close(fig)
    return target
