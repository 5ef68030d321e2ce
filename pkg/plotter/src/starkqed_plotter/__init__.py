"""Batch plotter for starkqed sweep output: manifest + CSV in, figure out."""

from .manifest import ManifestError, PlotManifest, SeriesData, load_manifest, read_curve_csv
from .render import build_figure, render

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ManifestError",
    "PlotManifest",
    "SeriesData",
    "load_manifest",
    "read_curve_csv",
    "build_figure",
    "render",
]
