"""Command-line entry point: ``altindex analyze | import | validate``.

Exit codes: 0 success, 1 data error, 2 usage error. Diagnostics go to
stderr; stdout carries only the summary block of ``analyze``.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .domain import DEFAULT_WINDOW, WeightTable, validate
from .errors import DataError
from .ingestion import LoadConfig, import_upstream, load_mapping, read_dataset
from .report import FORMATS, build_bundle, emit_charts, emit_tables, summary_block
from .scoring import load_weights

log = logging.getLogger("altindex")

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    publications: Path
    scholars: Path
    out: Path | None = None
    weights: Path | None = None
    window: tuple[int, int] = DEFAULT_WINDOW
    fmt: str = "csv"
    equal_tolerance: Fraction = Fraction(0)


def cmd_analyze(config: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    weights = load_weights(config.weights) if config.weights else WeightTable.default()
    ds, _ = read_dataset(config.publications, config.scholars, LoadConfig(config.window))
    report = validate(ds)
    if not report.ok:
        raise DataError(f"{config.publications}: {report.violations[0]}")
    bundle = build_bundle(ds, weights, config.equal_tolerance)
    config.out.mkdir(parents=True, exist_ok=True)
    emit_tables(bundle, config.out, config.fmt)
    emit_charts(bundle, config.out)
    stdout.write(summary_block(bundle))
    return EXIT_OK


def cmd_validate(config: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ds, _ = read_dataset(config.publications, config.scholars, LoadConfig(config.window), strict=False)
    report = validate(ds)
    for violation in report:
        stdout.write(f"{violation}\n")
    return EXIT_OK if report.ok else EXIT_DATA


def cmd_import(upstream: Path, mapping: Path, out: Path, upstream_scholars: Path | None = None) -> int:
    pubs, scholars = import_upstream(upstream, load_mapping(mapping), out, upstream_scholars)
    log.info("wrote %s and %s", pubs, scholars)
    return EXIT_OK


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="altindex", description="Social-impact metrics for scholars and publications.")
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def dataset_flags(p):
        p.add_argument("--publications", required=True, type=Path, help="canonical publications CSV")
        p.add_argument("--scholars", required=True, type=Path, help="canonical scholars CSV")
        p.add_argument("--from-year", type=int, default=DEFAULT_WINDOW[0])
        p.add_argument("--to-year", type=int, default=DEFAULT_WINDOW[1])

    analyze = sub.add_parser("analyze", help="compute all tables and charts")
    dataset_flags(analyze)
    analyze.add_argument("--weights", type=Path, help="weight override file (name = value lines)")
    analyze.add_argument("--out", required=True, type=Path, help="output directory")
    analyze.add_argument("--format", choices=FORMATS, default="csv")
    analyze.add_argument("--equal-tolerance", type=_fraction, default=Fraction(0),
                         help="max |social - scholarly| counted as equal (default 0)")

    validate_p = sub.add_parser("validate", help="check dataset invariants")
    dataset_flags(validate_p)

    imp = sub.add_parser("import", help="convert an upstream table to canonical files")
    imp.add_argument("--upstream", required=True, type=Path, help="upstream publications CSV")
    imp.add_argument("--upstream-scholars", type=Path, help="optional upstream scholars CSV")
    imp.add_argument("--mapping", required=True, type=Path, help="canonical_column = source_column file")
    imp.add_argument("--out", required=True, type=Path, help="output directory")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="altindex: %(levelname)s: %(message)s", stream=sys.stderr)
    try:
        if args.command == "import":
            return cmd_import(args.upstream, args.mapping, args.out, args.upstream_scholars)
        if args.from_year > args.to_year:
            parser.error(f"--from-year {args.from_year} is after --to-year {args.to_year}")
        config = RunConfig(
            publications=args.publications,
            scholars=args.scholars,
            out=getattr(args, "out", None),
            weights=getattr(args, "weights", None),
            window=(args.from_year, args.to_year),
            fmt=getattr(args, "format", "csv"),
            equal_tolerance=getattr(args, "equal_tolerance", Fraction(0)),
        )
        if args.command == "analyze":
            return cmd_analyze(config)
        return cmd_validate(config)
    except DataError as exc:
        _fail("data", exc)
    except OSError as exc:
        _fail("io", exc)
    return EXIT_DATA


def _fail(kind: str, exc: Exception) -> None:
    message = " ".join(str(exc).split())
    print(f"altindex: error: {kind}: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
