"""Command-line frontend: every run option as a flag, results to stdout or files.

Exit codes: 0 success, 1 invalid input, 2 seek exhausted without a hit.
Relative output paths resolve under $QUANTICIPATE_OUTPUT_DIR when set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import signal
import sys
import threading
from pathlib import Path

from .errors import QuanticipateError
from .exports import (
    CsvStatsRow,
    PlotKind,
    append_stats,
    export_series,
    render_plot,
)
from .spectra import PrescribedTarget, SpectrumKind, parse_prescribed
from .sweep import (
    Direction,
    MeasureKind,
    RunConfig,
    SearchMode,
    SeekPredicate,
    StatsAccumulator,
    StepRecord,
    SweepStats,
    run_continuous,
    run_random,
    run_single,
    seek_many,
    show_max,
)

OUTPUT_DIR_ENV = "QUANTICIPATE_OUTPUT_DIR"

# number, "pi", or coefficient*pi, e.g. "0.5", "pi", "2pi", "-1.5pi"
_TERM = re.compile(
    r"^([+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?)?\s*\*?\s*(pi)?$",
    re.IGNORECASE,
)


def _term(text: str) -> float:
    m = _TERM.match(text.strip())
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ValueError(f"not a number: {text!r}")
    value = 1.0 if m.group(1) is None else float(m.group(1))
    if m.group(2):
        value *= math.pi
    return value


def parse_quantity(text: str) -> float:
    """Parse a numeric literal: plain float, `a/b` rational, or pi terms.

    `9/16` divides exactly, `pi/4` and `2pi` work, whitespace is ignored.
    """
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        denominator = _term(den)
        if denominator == 0:
            raise ValueError("denominator must be nonzero")
        return _term(num) / denominator
    return _term(text)


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(parser: argparse.ArgumentParser, mode: SearchMode) -> None:
    parser.add_argument(
        "--spectrum",
        type=SpectrumKind,
        choices=list(SpectrumKind),
        metavar="{" + ",".join(k.value for k in SpectrumKind) + "}",
        default=SpectrumKind.H_ATOM,
        help="spectrum family (default h-atom)",
    )
    parser.add_argument("--dim", "--dimension", dest="dimension", type=int, default=3)
    parser.add_argument("--order", type=int, default=1)
    parser.add_argument("--location", type=parse_quantity, default=-0.5)
    parser.add_argument("--from", dest="t_from", type=parse_quantity, default=0.0)
    if mode in (SearchMode.CONTINUOUS, SearchMode.RANDOM):
        parser.add_argument("--to", dest="t_to", type=parse_quantity, default=72.0)
    if mode is not SearchMode.SINGLE:
        parser.add_argument("--step", dest="step_size", type=parse_quantity, default=0.01)
    parser.add_argument(
        "--measure",
        type=MeasureKind,
        choices=list(MeasureKind),
        metavar="{" + ",".join(k.value for k in MeasureKind) + "}",
        default=MeasureKind.OPTIMUM,
        help="measure source (default optimum)",
    )
    parser.add_argument("--prescribed-spectrum", metavar="VALUES", default=None,
                        help="d eigenvalues, space or comma separated")
    parser.add_argument("--prescribed-measure", metavar="VALUES", default=None,
                        help="d non-negative weights summing to 1")
    parser.add_argument("--previous-measure", metavar="VALUES", default=None,
                        help="weights from an earlier run, reused as-is")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--stats-csv", metavar="PATH", default=None)
    parser.add_argument("--series-csv", metavar="PATH", default=None)
    parser.add_argument("--plot", metavar="PATH", default=None)
    parser.add_argument("--show-max", action="store_true")
    parser.add_argument("--json", action="store_true", dest="as_json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quanticipate", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sweep = sub.add_parser("sweep", help="evaluate every grid point in [from, to)")
    _add_common(sweep, SearchMode.CONTINUOUS)

    rand = sub.add_parser("random", help="one random time draw per grid cell")
    _add_common(rand, SearchMode.RANDOM)

    seek_cmd = sub.add_parser("seek", help="step from 'from' until a predicate holds")
    _add_common(seek_cmd, SearchMode.SEEK_POSITIVE)
    seek_cmd.add_argument(
        "--predicate",
        type=SeekPredicate,
        choices=list(SeekPredicate),
        metavar="{" + ",".join(p.value for p in SeekPredicate) + "}",
        default=SeekPredicate.POSITIVE,
    )
    seek_cmd.add_argument(
        "--direction",
        type=Direction,
        choices=list(Direction),
        metavar="{forward,backward}",
        default=Direction.FORWARD,
    )
    seek_cmd.add_argument("--repeat", type=int, default=1)
    seek_cmd.add_argument("--max-steps", type=int, default=None)

    single = sub.add_parser("single", help="evaluate exactly one time point")
    _add_common(single, SearchMode.SINGLE)

    return parser


_SEEK_MODE = {
    SeekPredicate.POSITIVE: SearchMode.SEEK_POSITIVE,
    SeekPredicate.EQUAL: SearchMode.SEEK_EQUAL,
    SeekPredicate.DIM_CHANGE: SearchMode.SEEK_DIM_CHANGE,
}


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    mode = {
        "sweep": SearchMode.CONTINUOUS,
        "random": SearchMode.RANDOM,
        "single": SearchMode.SINGLE,
    }.get(args.command) or _SEEK_MODE[args.predicate]

    prescribed_spectrum = None
    if args.prescribed_spectrum is not None:
        prescribed_spectrum = parse_prescribed(
            args.prescribed_spectrum, args.dimension, PrescribedTarget.SPECTRUM_VALUES
        ).eigenvalues
    prescribed_measure = None
    if args.prescribed_measure is not None:
        prescribed_measure = parse_prescribed(
            args.prescribed_measure, args.dimension, PrescribedTarget.MEASURE_VALUES
        ).weights
    previous_measure = None
    if args.previous_measure is not None:
        previous_measure = parse_prescribed(
            args.previous_measure, args.dimension, PrescribedTarget.MEASURE_VALUES
        ).weights

    kwargs = dict(
        mode=mode,
        spectrum_kind=args.spectrum,
        dimension=args.dimension,
        order=args.order,
        location=args.location,
        t_from=args.t_from,
        measure_kind=args.measure,
        seed=args.seed,
        prescribed_spectrum=prescribed_spectrum,
        prescribed_measure=prescribed_measure,
        previous_measure=previous_measure,
    )
    if hasattr(args, "t_to"):
        kwargs["t_to"] = args.t_to
    if hasattr(args, "step_size"):
        kwargs["step_size"] = args.step_size
    if getattr(args, "direction", None) is not None:
        kwargs["direction"] = args.direction
    if getattr(args, "max_steps", None) is not None:
        kwargs["max_steps"] = args.max_steps
    return RunConfig(**kwargs)


_BLOCK_ROWS = (
    ("Steps", "steps", None),
    ("Non-narrow", "non_narrow_count", "non_narrow_fraction"),
    ("Degenerate", "degenerate_count", "degenerate_fraction"),
    ("Singular", "singular_count", "singular_fraction"),
    ("Positive", "positive_count", "positive_fraction"),
    ("Zero", "zero_count", "zero_fraction"),
)
_BLOCK_VALUES = (
    ("Non-zero dimension", "avg_nonzero_dimension"),
    ("Max. measure", "max_measure"),
    ("Ave. variance", "avg_variance"),
    ("Ave. probability", "avg_probability"),
    ("Max. probability", "max_probability"),
    ("Ave. anticipation", "avg_anticipation"),
    ("Max. anticipation", "max_anticipation"),
)


def format_stats_block(stats: SweepStats) -> str:
    lines = []
    for label, count_attr, frac_attr in _BLOCK_ROWS:
        count = getattr(stats, count_attr)
        if frac_attr is None:
            lines.append(f"{label:<20}{count}")
        else:
            lines.append(f"{label:<20}{count} ({getattr(stats, frac_attr):.6f})")
    for label, attr in _BLOCK_VALUES:
        lines.append(f"{label:<20}{getattr(stats, attr):.6f}")
    t_max = stats.time_of_maximum
    lines.append(f"{'Time of maximum':<20}{'-' if t_max is None else format(t_max, '.6g')}")
    return "\n".join(lines)


def format_measure_table(rec: StepRecord) -> str:
    """Index / position / weight rows for seek and single results."""
    lines = [f"{'Index':<8}{'Spectrum':<16}Measure"]
    for idx, pos, weight in zip(rec.original_indices, rec.positions, rec.measure):
        lines.append(f"{int(idx):<8}{pos:<16.9f}{weight:.9f}")
    return "\n".join(lines)


def _stats_dict(stats: SweepStats) -> dict:
    return {
        "steps": stats.steps,
        "non_narrow_count": stats.non_narrow_count,
        "non_narrow_fraction": stats.non_narrow_fraction,
        "degenerate_count": stats.degenerate_count,
        "degenerate_fraction": stats.degenerate_fraction,
        "singular_count": stats.singular_count,
        "singular_fraction": stats.singular_fraction,
        "positive_count": stats.positive_count,
        "positive_fraction": stats.positive_fraction,
        "zero_count": stats.zero_count,
        "zero_fraction": stats.zero_fraction,
        "avg_nonzero_dimension": stats.avg_nonzero_dimension,
        "max_measure": stats.max_measure,
        "avg_variance": stats.avg_variance,
        "avg_probability": stats.avg_probability,
        "max_probability": stats.max_probability,
        "avg_anticipation": stats.avg_anticipation,
        "max_anticipation": stats.max_anticipation,
        "time_of_maximum": stats.time_of_maximum,
    }


def _record_dict(rec: StepRecord) -> dict:
    payload = {
        "index": rec.index,
        "T": rec.T,
        "non_narrow": rec.non_narrow,
        "degenerate": rec.degenerate,
        "singular": rec.singular,
        "positive": rec.positive,
        "zero_dim": rec.zero_dim,
        "anticipation": rec.lookahead,
        "probability": rec.total_prob,
        "variance": rec.variance,
        "nonzero_dimension": rec.nonzero_dimension,
        "max_weight": rec.max_weight,
    }
    if rec.measure is not None:
        payload["measure"] = [float(x) for x in rec.measure]
        payload["positions"] = [float(x) for x in rec.positions]
        payload["original_indices"] = [int(x) for x in rec.original_indices]
    return payload


def _resolve_output(path: str) -> Path:
    p = Path(path)
    if p.is_absolute():
        return p
    base = os.environ.get(OUTPUT_DIR_ENV)
    return (Path(base) / p) if base else p


def _write_outputs(
    args: argparse.Namespace,
    config: RunConfig,
    stats: SweepStats,
    series,
    plot_data,
    plot_kind: PlotKind,
) -> list[Path]:
    written = []
    if args.stats_csv:
        target = _resolve_output(args.stats_csv)
        append_stats(target, CsvStatsRow.from_run(config, stats))
        written.append(target)
    if args.series_csv:
        target = _resolve_output(args.series_csv)
        export_series(target, series)
        written.append(target)
    if args.plot:
        target = render_plot(
            plot_data, plot_kind, _resolve_output(args.plot), order=config.order
        )
        written.append(target)
    return written


def _single_step_stats(rec: StepRecord) -> SweepStats:
    acc = StatsAccumulator()
    acc.add(rec)
    return acc.finish()


def _run_range(args: argparse.Namespace, config: RunConfig) -> int:
    cancel = threading.Event()
    previous = signal.signal(signal.SIGINT, lambda *_: cancel.set())
    try:
        runner = run_continuous if config.mode is SearchMode.CONTINUOUS else run_random
        result = runner(config, cancel=cancel)
    finally:
        signal.signal(signal.SIGINT, previous)

    best = show_max(result.series)
    if args.as_json:
        payload = {
            "command": args.command,
            "seed": result.seed,
            "spectrum": [float(x) for x in result.spectrum.eigenvalues],
            "cancelled": result.cancelled,
            "stats": _stats_dict(result.stats),
        }
        if args.show_max:
            payload["max"] = None if best is None else _record_dict(best)
        print(json.dumps(payload, sort_keys=True))
    else:
        if result.cancelled:
            print(f"cancelled after {result.stats.steps} steps; partial statistics:")
        print(format_stats_block(result.stats))
        if args.show_max and best is not None:
            print(f"\nMaximum at T = {best.T:.9g}:")
            print(format_measure_table(best))
    _write_outputs(args, config, result.stats, result.series,
                   result.series, PlotKind.CURVES)
    return 0


def _run_seek(args: argparse.Namespace, config: RunConfig) -> int:
    cancel = threading.Event()
    previous = signal.signal(signal.SIGINT, lambda *_: cancel.set())
    try:
        outcomes = seek_many(config, args.predicate, args.repeat, cancel=cancel)
    finally:
        signal.signal(signal.SIGINT, previous)

    hits = [o for o in outcomes if o.found]
    if args.as_json:
        payload = {
            "command": "seek",
            "predicate": args.predicate.value,
            "seed": outcomes[0].seed,
            "spectrum": [float(x) for x in outcomes[0].spectrum.eigenvalues],
            "found": bool(hits),
            "hits": [
                {
                    "T": o.record.T,
                    "steps_taken": o.steps_taken,
                    "stats": _stats_dict(_single_step_stats(o.record)),
                    "record": _record_dict(o.record),
                }
                for o in hits
            ],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for o in hits:
            print(f"hit at T = {o.record.T:.9g} after {o.steps_taken} steps")
            print(format_stats_block(_single_step_stats(o.record)))
            if o.record.measure is not None:
                print(format_measure_table(o.record))
            print()
    if hits:
        last = hits[-1].record
        _write_outputs(
            args, config, _single_step_stats(last), [last],
            last, PlotKind.SPECTRUM_BARS,
        )
    if len(hits) < max(args.repeat, 1):
        missing = max(args.repeat, 1) - len(hits)
        print(f"no hit within {config.max_steps} steps "
              f"({missing} of {max(args.repeat, 1)} seeks unresolved)", file=sys.stderr)
        return 2
    return 0


def _run_single(args: argparse.Namespace, config: RunConfig) -> int:
    result = run_single(config)
    rec = result.series[0]
    if args.as_json:
        payload = {
            "command": "single",
            "seed": result.seed,
            "spectrum": [float(x) for x in result.spectrum.eigenvalues],
            "stats": _stats_dict(result.stats),
            "record": _record_dict(rec),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(format_stats_block(result.stats))
        if rec.measure is not None:
            print(format_measure_table(rec))
    _write_outputs(args, config, result.stats, result.series,
                   rec, PlotKind.SPECTRUM_BARS)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse signals --help and flag errors by exiting
        return int(exc.code or 0)
    try:
        config = _config_from_args(args)
        if args.command in ("sweep", "random"):
            return _run_range(args, config)
        if args.command == "seek":
            return _run_seek(args, config)
        return _run_single(args, config)
    except (ValueError, QuanticipateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
