"""Command-line front end: sweep, preset and validate subcommands.

Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 numerical
validation failure.  The STARKQED_OUT environment variable supplies the
default output directory.
"""

from __future__ import annotations

import argparse
import sys

from ._version import __version__
from .config import ConfigError, parse_float_list
from .sweep import (
    PRESETS,
    run_preset,
    run_sweep,
    run_validate,
    sweep_config_from_sources,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_VALIDATION = 4


def _float_list(text: str) -> tuple[float, ...]:
    return parse_float_list(text, "flag")


def _add_grid_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--gt-min", type=float, default=None, help="first Rabi angle")
    parser.add_argument("--gt-max", type=float, default=None, help="last Rabi angle")
    parser.add_argument("--gt-step", type=float, default=None, help="Rabi-angle step")
    parser.add_argument("--tail-tol", type=float, default=None, help="thermal tail mass kept below this")
    parser.add_argument(
        "--renormalize-thermal",
        action="store_true",
        default=None,
        help="rescale truncated thermal states to unit trace",
    )
    parser.add_argument("--workers", type=int, default=None, help="parallel worker count")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--config", default=None, help="flat key=value config file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starkqed",
        description="Two-atom entanglement under a Stark-shifted two-photon cavity interaction",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run (delta/g, beta/g, nbar) x gt sweeps to CSV")
    sweep.add_argument("--delta-over-g", type=_float_list, default=None, help="comma-separated list")
    sweep.add_argument("--beta-over-g", type=_float_list, default=None, help="comma-separated list")
    sweep.add_argument("--nbar", type=_float_list, default=None, help="comma-separated list; 0 = Fock input")
    sweep.add_argument("--n0", type=int, default=None, help="initial Fock index used when nbar = 0")
    _add_grid_flags(sweep)

    preset = sub.add_parser("preset", help="run a figure preset and write its manifest")
    preset.add_argument("name", choices=sorted(PRESETS), help="figure preset id")
    preset.add_argument(
        "--nbar", type=float, default=0.1, help="default nbar for presets that leave it open"
    )
    _add_grid_flags(preset)

    validate = sub.add_parser("validate", help="compare the effective model against the full three-level one")
    validate.add_argument("--config", required=True, help="validation config file")
    validate.add_argument("--out", default=None, help="directory for validation_report.json")
    return parser


def _overrides_from_args(args: argparse.Namespace) -> dict:
    keys = (
        "delta_over_g", "beta_over_g", "nbar", "n0", "gt_min", "gt_max",
        "gt_step", "tail_tol", "renormalize_thermal", "out", "workers",
    )
    out = {}
    for key in keys:
        value = getattr(args, key, None)
        if value is not None:
            out[key] = value
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            cfg = sweep_config_from_sources(args.config, _overrides_from_args(args))
            for path in run_sweep(cfg):
                print(path)
        elif args.command == "preset":
            overrides = _overrides_from_args(args)
            overrides.pop("nbar", None)  # preset --nbar is the fig6 default, not a sweep list
            cfg = sweep_config_from_sources(args.config, overrides)
            out_dir = args.out if args.out is not None else default_output_dir()
            manifest = run_preset(args.name, out_dir, cfg=cfg, default_nbar=args.nbar)
            print(manifest)
        elif args.command == "validate":
            out_dir = args.out if args.out is not None else None
            report = run_validate(args.config, out_dir)
            print(report.format_table())
            if not report.passed:
                return EXIT_VALIDATION
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
