"""starkqed-plot: render a preset manifest into a figure image."""

from __future__ import annotations

import argparse
import sys

from .manifest import ManifestError, load_manifest
from .render import render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starkqed-plot",
        description="Render a starkqed preset manifest (CSV series) to an image",
    )
    parser.add_argument("manifest", help="path to a <figure>_manifest.json file")
    parser.add_argument("--out", default=".", help="output directory for the image")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        manifest = load_manifest(args.manifest)
        target = render(manifest, args.out)
    except ManifestError as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    print(target)
    return 0


if __name__ == "__main__":
    sys.exit(main())
