"""Command-line interface.

Subcommands::

    scatterstats nominal        unperturbed field + far-field data files
    scatterstats uq             full sampling pipeline with statistics
    scatterstats farfield-stats sampling pipeline, far-field outputs only
    scatterstats table-ranks    low-rank ranks over an (R, kappa) grid
    scatterstats oracle-dump    frozen circle reference values

Configuration comes from an optional INI file (--config) overlaid with
``--set key=value`` assignments; see :mod:`scatterstats.config` for keys.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

from .config import RunConfig, apply_overrides, load_config
from .errors import ScatterStatsError
from .pipeline import oracle_dump, run_nominal, run_table_ranks, run_uq


def _add_common(parser):
    parser.add_argument("--config", metavar="FILE",
                        help="INI-style configuration file")
    parser.add_argument("--set", metavar="KEY=VALUE", action="append",
                        default=[], dest="overrides",
                        help="override one configuration key (repeatable)")
    parser.add_argument("--deterministic", action="store_true",
                        help="force the sequential, bitwise-reproducible mode")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker count (switches to parallel mode if > 1)")
    parser.add_argument("--out-dir", default=None,
                        help="output directory (default from config)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="scatterstats",
        description="Far-field and near-field statistics of scattering "
                    "from randomly perturbed sound-soft obstacles.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("nominal", "solve the unperturbed problem and write field data"),
            ("uq", "run the sampling pipeline and write statistics"),
            ("farfield-stats", "sampling pipeline, far-field outputs only"),
            ("table-ranks", "low-rank ranks over an (R, kappa) grid"),
            ("oracle-dump", "write frozen circle reference values")):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        if name == "table-ranks":
            p.add_argument("--radii", default="11,12,13,14,15",
                           help="comma-separated interface radii")
            p.add_argument("--wavenumbers", default="1,2,4,8",
                           help="comma-separated wavenumbers")
    return parser


def resolve_config(args):
    config = load_config(args.config) if args.config else RunConfig()
    if args.overrides:
        config = apply_overrides(config, args.overrides)
    if args.out_dir is not None:
        config = replace(config, out_dir=args.out_dir)
    if args.threads is not None:
        mode = "parallel" if args.threads > 1 else "deterministic"
        config = replace(config, threads=args.threads, mode=mode)
    if args.deterministic:
        config = replace(config, mode="deterministic", threads=1)
    return config.validate()


def main(argv=None):
    logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        if args.command == "nominal":
            written = run_nominal(config)
        elif args.command == "uq":
            written = run_uq(config)
        elif args.command == "farfield-stats":
            written = run_uq(config, farfield_only=True)
        elif args.command == "table-ranks":
            radii = [float(v) for v in args.radii.split(",") if v]
            wavenumbers = [float(v) for v in args.wavenumbers.split(",") if v]
            written = [run_table_ranks(config, radii, wavenumbers)]
        elif args.command == "oracle-dump":
            written = [oracle_dump(config)]
        else:  # pragma: no cover - argparse enforces the choices
            raise AssertionError(args.command)
    except ScatterStatsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
