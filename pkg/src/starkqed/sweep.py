"""Parameter sweeps over (delta/g, beta/g, nbar, gt) with deterministic CSV output.

One CSV file is written per parameter combination, with a ``#``-prefixed
metadata header recording every input, the thermal truncation cutoff and
the tail deficit.  Number formatting is fixed to 17 significant digits so
identical configurations produce byte-identical files.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from ._version import __version__
from .config import ConfigError, parse_bool, parse_float_list, parse_kv_file
from .effective import ModelParams
from .entanglement import xstate_entanglement
from .micro import MicroParams, compare_effective_vs_full
from .twoatom import joint_density_fock, joint_density_thermal, thermal_weights

__all__ = [
    "SweepConfig",
    "FigurePreset",
    "PresetSeries",
    "PRESETS",
    "CurveResult",
    "ValidationReport",
    "ValidationRow",
    "entanglement_curve",
    "run_sweep",
    "run_preset",
    "run_validate",
]

OUTPUT_ENV_VAR = "STARKQED_OUT"
_DEFAULT_FIG6_NBAR = 0.1


@dataclass(frozen=True)
class SweepConfig:
    """Inputs of one sweep run; lists sweep their Cartesian product."""

    delta_over_g: tuple[float, ...] = (0.0,)
    beta_over_g: tuple[float, ...] = (0.0,)
    nbar: tuple[float, ...] = (0.0,)
    n0: int = 0
    gt_min: float = 0.0
    gt_max: float = 4.0
    gt_step: float = 0.005
    tail_tol: float = 1e-10
    renormalize_thermal: bool = False
    output_path: str = "."
    workers: int = 1
    g: float = 1.0

    def validate(self) -> None:
        if not self.delta_over_g:
            raise ConfigError("delta_over_g: needs at least one value")
        if not self.beta_over_g:
            raise ConfigError("beta_over_g: needs at least one value")
        if not self.nbar or any(v < 0.0 for v in self.nbar):
            raise ConfigError("nbar: needs at least one value >= 0")
        if self.n0 < 0:
            raise ConfigError(f"n0: must be >= 0, got {self.n0}")
        if not self.gt_step > 0.0:
            raise ConfigError(f"gt_step: must be > 0, got {self.gt_step}")
        if not (self.gt_max > self.gt_min >= 0.0):
            raise ConfigError(
                f"gt range: need gt_max > gt_min >= 0, got [{self.gt_min}, {self.gt_max}]"
            )
        if not (0.0 < self.tail_tol <= 1e-4):
            raise ConfigError(f"tail_tol: must lie in (0, 1e-4], got {self.tail_tol}")
        if self.workers < 1:
            raise ConfigError(f"workers: must be >= 1, got {self.workers}")
        if not self.g > 0.0:
            raise ConfigError(f"g: must be > 0, got {self.g}")

    def gt_grid(self) -> np.ndarray:
        count = int(math.floor((self.gt_max - self.gt_min) / self.gt_step + 1e-9)) + 1
        return self.gt_min + self.gt_step * np.arange(count)


_SWEEP_KEYS = {
    "delta_over_g": lambda v: parse_float_list(v, "delta_over_g"),
    "beta_over_g": lambda v: parse_float_list(v, "beta_over_g"),
    "nbar": lambda v: parse_float_list(v, "nbar"),
    "n0": int,
    "gt_min": float,
    "gt_max": float,
    "gt_step": float,
    "tail_tol": float,
    "renormalize_thermal": lambda v: parse_bool(v, "renormalize_thermal"),
    "out": str,
    "workers": int,
    "g": float,
}


def sweep_config_from_sources(
    config_path: str | None = None, overrides: dict | None = None
) -> SweepConfig:
    """Build a SweepConfig from defaults, then a config file, then overrides."""
    values: dict = {}
    if config_path is not None:
        raw = parse_kv_file(config_path)
        for key, text in raw.items():
            if key not in _SWEEP_KEYS:
                raise ConfigError(f"unknown config key '{key}'")
            try:
                values[key] = _SWEEP_KEYS[key](text)
            except ConfigError:
                raise
            except ValueError as exc:
                raise ConfigError(f"invalid value for {key}: {exc}") from None
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    if "out" in values:
        values["output_path"] = values.pop("out")
    else:
        values["output_path"] = default_output_dir()
    return SweepConfig(**values)


@dataclass(frozen=True)
class PresetSeries:
    """One curve of a figure preset; nbar=None means the configured default."""

    delta_over_g: float
    beta_over_g: float
    nbar: float | None
    style: str

    def label(self) -> str:
        return f"delta/g={_trim(self.delta_over_g)}, beta/g={_trim(self.beta_over_g)}"


@dataclass(frozen=True)
class FigurePreset:
    name: str
    series: tuple[PresetSeries, ...]


PRESETS: dict[str, FigurePreset] = {
    "fig2": FigurePreset(
        "fig2",
        (
            PresetSeries(0.0, 0.0, 0.0, "solid"),
            PresetSeries(2.0, 2.0, 0.0, "dotted"),
        ),
    ),
    "fig3": FigurePreset(
        "fig3",
        (
            PresetSeries(0.0, 0.0, 0.0, "solid"),
            PresetSeries(-1.0, 1.0, 0.0, "dotted"),
        ),
    ),
    "fig4": FigurePreset(
        "fig4",
        (
            PresetSeries(0.0, 0.0, 0.1, "solid"),
            PresetSeries(2.0, 2.0, 0.1, "dotted"),
        ),
    ),
    "fig5": FigurePreset(
        "fig5",
        (
            PresetSeries(0.0, 0.0, 0.1, "solid"),
            PresetSeries(-1.0, 1.0, 0.1, "dotted"),
        ),
    ),
    "fig6": FigurePreset("fig6", (PresetSeries(-2.0, 2.0, None, "solid"),)),
}


@dataclass(frozen=True)
class CurveResult:
    """Concurrence and E_F over a gt grid plus truncation metadata."""

    gt: np.ndarray
    concurrence: np.ndarray
    eof: np.ndarray
    nbar: float
    n0: int
    cutoff: int
    tail_deficit: float

    def __post_init__(self):
        for name in ("gt", "concurrence", "eof"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def _curve_points(
    params: ModelParams,
    gt_values,
    nbar: float,
    n0: int,
    tail_tol: float,
    renormalize: bool,
) -> list[tuple[float, float]]:
    field = thermal_weights(nbar, tail_tol) if nbar > 0.0 else None
    points = []
    for gt in gt_values:
        t = gt / params.g
        if field is None:
            rho = joint_density_fock(params, t, n0)
        else:
            rho = joint_density_thermal(params, t, field, renormalize=renormalize)
        result = xstate_entanglement(rho)
        points.append((result.concurrence, result.eof))
    return points


def _curve_chunk(payload) -> list[tuple[float, float]]:
    g, delta, beta_e, beta_g, gt_values, nbar, n0, tail_tol, renormalize = payload
    params = ModelParams(g=g, delta=delta, beta_e=beta_e, beta_g=beta_g)
    return _curve_points(params, gt_values, nbar, n0, tail_tol, renormalize)


def entanglement_curve(
    params: ModelParams,
    gt,
    *,
    nbar: float = 0.0,
    n0: int = 0,
    tail_tol: float = 1e-10,
    renormalize: bool = False,
    workers: int = 1,
) -> CurveResult:
    """Concurrence and E_F versus Rabi angle for one parameter combination.

    Points are independent, so ``workers`` > 1 splits the grid across
    processes; chunk results are reassembled in grid order, making the
    output identical for any worker count.
    """
    gt = np.asarray(gt, dtype=float)
    if nbar > 0.0:
        field = thermal_weights(nbar, tail_tol)
        cutoff, deficit = field.cutoff, field.tail_deficit
    else:
        cutoff, deficit = n0, 0.0
    if workers <= 1 or gt.size < 2 * workers:
        points = _curve_points(params, gt, nbar, n0, tail_tol, renormalize)
    else:
        chunks = np.array_split(gt, workers)
        payloads = [
            (params.g, params.delta, params.beta_e, params.beta_g,
             list(chunk), nbar, n0, tail_tol, renormalize)
            for chunk in chunks
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_curve_chunk, payloads))
        points = list(itertools.chain.from_iterable(results))
    conc = np.array([p[0] for p in points])
    ef = np.array([p[1] for p in points])
    return CurveResult(
        gt=gt, concurrence=conc, eof=ef, nbar=nbar, n0=n0, cutoff=cutoff, tail_deficit=deficit
    )


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _trim(x: float) -> str:
    # Compact float for filenames and labels: 2.0 -> "2", 0.1 -> "0.1".
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


def _csv_name(prefix: str, delta: float, beta: float, nbar: float) -> str:
    return f"{prefix}_delta{_trim(delta)}_beta{_trim(beta)}_nbar{_trim(nbar)}.csv"


def _write_curve_csv(path: Path, cfg: SweepConfig, delta: float, beta: float, curve: CurveResult) -> None:
    lines = ["# starkqed sweep output"]
    lines.append(f"# version = {__version__}")
    lines.append(f"# g = {_fmt(cfg.g)}")
    lines.append(f"# delta_over_g = {_fmt(delta)}")
    lines.append(f"# beta_over_g = {_fmt(beta)}")
    lines.append(f"# nbar = {_fmt(curve.nbar)}")
    lines.append(f"# field = {'thermal' if curve.nbar > 0 else 'fock'}")
    lines.append(f"# n0 = {curve.n0}")
    lines.append(f"# gt_min = {_fmt(cfg.gt_min)}")
    lines.append(f"# gt_max = {_fmt(cfg.gt_max)}")
    lines.append(f"# gt_step = {_fmt(cfg.gt_step)}")
    lines.append(f"# tail_tol = {_fmt(cfg.tail_tol)}")
    lines.append(f"# renormalize_thermal = {str(cfg.renormalize_thermal).lower()}")
    lines.append(f"# truncation_cutoff = {curve.cutoff}")
    lines.append(f"# tail_deficit = {_fmt(curve.tail_deficit)}")
    lines.append("gt,concurrence,eof")
    for gt, conc, ef in zip(curve.gt, curve.concurrence, curve.eof):
        lines.append(f"{_fmt(gt)},{_fmt(conc)},{_fmt(ef)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def default_output_dir() -> str:
    return os.environ.get(OUTPUT_ENV_VAR, ".")


def run_sweep(cfg: SweepConfig, prefix: str = "sweep") -> list[Path]:
    """Write one CSV per (delta/g, beta/g, nbar) combination; return the paths."""
    cfg.validate()
    out_dir = Path(cfg.output_path)
    out_dir.mkdir(parents=True, exist_ok=True)
    gt = cfg.gt_grid()
    paths = []
    for delta, beta, nbar in itertools.product(cfg.delta_over_g, cfg.beta_over_g, cfg.nbar):
        params = ModelParams(g=cfg.g, delta=delta * cfg.g, beta_e=beta * cfg.g, beta_g=beta * cfg.g)
        curve = entanglement_curve(
            params,
            gt,
            nbar=nbar,
            n0=cfg.n0,
            tail_tol=cfg.tail_tol,
            renormalize=cfg.renormalize_thermal,
            workers=cfg.workers,
        )
        path = out_dir / _csv_name(prefix, delta, beta, nbar)
        _write_curve_csv(path, cfg, delta, beta, curve)
        paths.append(path)
    return paths


def run_preset(
    name: str,
    out_dir: str | Path | None = None,
    *,
    cfg: SweepConfig | None = None,
    default_nbar: float = _DEFAULT_FIG6_NBAR,
) -> Path:
    """Run one figure preset; write its CSV files and a JSON manifest.

    Returns the manifest path.  Presets that leave nbar open use
    ``default_nbar`` and flag the choice in the manifest's assumptions.
    """
    if name not in PRESETS:
        raise ConfigError(f"unknown preset '{name}' (have {', '.join(sorted(PRESETS))})")
    preset = PRESETS[name]
    cfg = cfg or SweepConfig()
    if out_dir is not None:
        cfg = replace(cfg, output_path=str(out_dir))
    cfg.validate()
    target = Path(cfg.output_path)
    target.mkdir(parents=True, exist_ok=True)
    gt = cfg.gt_grid()
    series_entries = []
    assumptions = []
    for series in preset.series:
        nbar = series.nbar if series.nbar is not None else default_nbar
        if series.nbar is None:
            assumptions.append(
                f"nbar defaulted to {_trim(default_nbar)} for this preset; override with --nbar"
            )
        params = ModelParams(
            g=cfg.g,
            delta=series.delta_over_g * cfg.g,
            beta_e=series.beta_over_g * cfg.g,
            beta_g=series.beta_over_g * cfg.g,
        )
        curve = entanglement_curve(
            params,
            gt,
            nbar=nbar,
            n0=cfg.n0,
            tail_tol=cfg.tail_tol,
            renormalize=cfg.renormalize_thermal,
            workers=cfg.workers,
        )
        filename = _csv_name(name, series.delta_over_g, series.beta_over_g, nbar)
        _write_curve_csv(target / filename, cfg, series.delta_over_g, series.beta_over_g, curve)
        series_entries.append(
            {
                "csv": filename,
                "label": series.label(),
                "style": series.style,
                "nbar": nbar,
            }
        )
    manifest = {
        "figure": name,
        "xlabel": "gt",
        "ylabel": "E_F",
        "series": series_entries,
        "assumptions": assumptions,
        "image": f"{name}.png",
    }
    manifest_path = target / f"{name}_manifest.json"
    manifest_path.write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return manifest_path


@dataclass(frozen=True)
class ValidationRow:
    """One rung of the detuning ladder."""

    detuning: float
    g_eff: float
    max_abs_diff: float
    mean_abs_diff: float
    peak_leakage: float


@dataclass(frozen=True)
class ValidationReport:
    rows: tuple[ValidationRow, ...]
    bound: float
    passed: bool
    failures: tuple[str, ...]

    def format_table(self) -> str:
        lines = [
            f"{'detuning':>12} {'|g_eff|':>12} {'max |dE_F|':>12} "
            f"{'mean |dE_F|':>12} {'peak leak':>12}"
        ]
        for row in self.rows:
            lines.append(
                f"{row.detuning:>12.6g} {abs(row.g_eff):>12.6g} {row.max_abs_diff:>12.4e} "
                f"{row.mean_abs_diff:>12.4e} {row.peak_leakage:>12.4e}"
            )
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"bound on max |dE_F|: {self.bound:g} -> {verdict}")
        lines.extend(f"  {msg}" for msg in self.failures)
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "bound": self.bound,
            "passed": self.passed,
            "failures": list(self.failures),
            "rows": [
                {
                    "detuning": row.detuning,
                    "g_eff": row.g_eff,
                    "max_abs_diff": row.max_abs_diff,
                    "mean_abs_diff": row.mean_abs_diff,
                    "peak_leakage": row.peak_leakage,
                }
                for row in self.rows
            ],
        }


_MICRO_EXPLICIT = ("omega_e", "omega_i", "omega_g", "omega")


def _micro_params_for_detuning(detuning: float, g1: float, g2: float, omega: float, delta: float) -> MicroParams:
    # Intermediate level sits `detuning` above the ladder midpoint, so
    # omega_ig - omega = +detuning and omega_ei - omega = delta - detuning.
    omega_g = 0.0
    omega_i = omega + detuning
    omega_e = 2.0 * omega + delta
    return MicroParams(
        omega_e=omega_e, omega_i=omega_i, omega_g=omega_g, omega=omega, g1=g1, g2=g2
    )


def run_validate(config_path: str | Path, out_dir: str | Path | None = None) -> ValidationReport:
    """Compare effective against full dynamics per the validation config.

    Returns the report; writes ``validation_report.json`` when ``out_dir``
    is given.  ``report.passed`` is False when the deviation bound is
    exceeded or the deviation fails to shrink along the detuning ladder.
    """
    raw = parse_kv_file(config_path)
    known = {
        "coupling", "g1", "g2", "detunings", "omega", "delta", "gt_max",
        "gt_points", "n0", "cutoff", "max_dev",
        "omega_e", "omega_i", "omega_g",
    }
    for key in raw:
        if key not in known:
            raise ConfigError(f"unknown config key '{key}'")

    def get_float(key: str, default: float) -> float:
        try:
            return float(raw[key]) if key in raw else default
        except ValueError:
            raise ConfigError(f"invalid value for {key}: {raw[key]!r}") from None

    def get_int(key: str, default: int) -> int:
        try:
            return int(raw[key]) if key in raw else default
        except ValueError:
            raise ConfigError(f"invalid value for {key}: {raw[key]!r}") from None

    coupling = get_float("coupling", 1.0)
    g1 = get_float("g1", coupling)
    g2 = get_float("g2", coupling)
    gt_max = get_float("gt_max", 3.0)
    gt_points = get_int("gt_points", 61)
    n0 = get_int("n0", 0)
    cutoff = get_int("cutoff", n0 + 4)
    bound = get_float("max_dev", 0.05)
    if gt_points < 2 or gt_max <= 0.0:
        raise ConfigError("gt grid: need gt_points >= 2 and gt_max > 0")
    gt_grid = np.linspace(0.0, gt_max, gt_points)

    explicit = [key for key in _MICRO_EXPLICIT if key in raw]
    cases: list[tuple[float, MicroParams]] = []
    if explicit:
        if len(explicit) != len(_MICRO_EXPLICIT):
            raise ConfigError(
                "explicit mode needs all of omega_e, omega_i, omega_g, omega"
            )
        if "detunings" in raw:
            raise ConfigError("give either explicit omegas or a detuning ladder, not both")
        params = MicroParams(
            omega_e=get_float("omega_e", 0.0),
            omega_i=get_float("omega_i", 0.0),
            omega_g=get_float("omega_g", 0.0),
            omega=get_float("omega", 0.0),
            g1=g1,
            g2=g2,
        )
        cases.append((params.detuning_ig, params))
    else:
        detunings = (
            parse_float_list(raw["detunings"], "detunings")
            if "detunings" in raw
            else (50.0, 100.0, 200.0)
        )
        if any(d <= 0.0 for d in detunings):
            raise ConfigError("detunings: must be > 0")
        delta = get_float("delta", 0.0)
        omega = get_float("omega", 20.0 * max(detunings))
        for detuning in detunings:
            cases.append(
                (detuning, _micro_params_for_detuning(detuning, g1, g2, omega, delta))
            )

    rows = []
    for detuning, params in sorted(cases, key=lambda item: item[0]):
        report = compare_effective_vs_full(params, gt_grid, n0=n0, cutoff=cutoff)
        g_eff = 0.5 * g1 * g2 * (1.0 / params.detuning_ei - 1.0 / params.detuning_ig)
        rows.append(
            ValidationRow(
                detuning=detuning,
                g_eff=g_eff,
                max_abs_diff=report.max_abs_diff,
                mean_abs_diff=report.mean_abs_diff,
                peak_leakage=report.peak_leakage,
            )
        )

    failures = []
    for row in rows:
        if row.max_abs_diff > bound:
            failures.append(
                f"detuning {row.detuning:g}: max |dE_F| {row.max_abs_diff:.4e} exceeds {bound:g}"
            )
    for earlier, later in zip(rows, rows[1:]):
        if later.max_abs_diff > earlier.max_abs_diff:
            failures.append(
                f"deviation grew from detuning {earlier.detuning:g} to {later.detuning:g}"
            )
    result = ValidationReport(
        rows=tuple(rows), bound=bound, passed=not failures, failures=tuple(failures)
    )
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "validation_report.json").write_text(
            json.dumps(result.to_json_dict(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
    return result
