"""File exports: statistics CSV, per-step series CSV, and plot images.

The statistics table mirrors the on-screen summary block one row per
run, with counts and their fractions split into separate columns so the
file loads cleanly into spreadsheet tools.  Dialect is fixed: comma
delimiter, dot decimal point, LF line endings, UTF-8.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .anticipation import lookahead_bin
from .sweep import RunConfig, StepRecord, SweepStats

STATS_COLUMNS = (
    "timestamp",
    "search_mode",
    "spectrum_type",
    "measure_type",
    "order",
    "dimension",
    "location",
    "from",
    "to",
    "steps",
    "non_narrow_count",
    "non_narrow_fraction",
    "degenerate_count",
    "degenerate_fraction",
    "singular_count",
    "singular_fraction",
    "positive_count",
    "positive_fraction",
    "zero_count",
    "zero_fraction",
    "avg_nonzero_dimension",
    "max_measure",
    "avg_variance",
    "avg_probability",
    "max_probability",
    "avg_anticipation",
    "max_anticipation",
    "time_of_maximum",
)

SERIES_COLUMNS = (
    "index",
    "T",
    "non_narrow",
    "degenerate",
    "singular",
    "positive",
    "zero_dim",
    "anticipation",
    "probability",
    "variance",
    "nonzero_dimension",
)


def _num(value: float) -> str:
    """Nine significant digits; compact but well past display precision."""
    return format(float(value), ".9g")


def _exact(value: float) -> str:
    # shortest representation that parses back to the identical float
    return repr(float(value))


@dataclass(frozen=True)
class CsvStatsRow:
    """One statistics row, every cell already rendered as text."""

    cells: tuple[str, ...]

    def __post_init__(self):
        if len(self.cells) != len(STATS_COLUMNS):
            raise ValueError(
                f"expected {len(STATS_COLUMNS)} cells, got {len(self.cells)}"
            )

    @classmethod
    def from_run(
        cls,
        config: RunConfig,
        stats: SweepStats,
        timestamp: datetime | None = None,
    ) -> "CsvStatsRow":
        when = timestamp or datetime.now().astimezone()
        cells = (
            when.isoformat(timespec="seconds"),
            config.mode.value,
            config.spectrum_kind.value,
            config.measure_kind.value,
            str(config.order),
            str(config.dimension),
            _num(config.location),
            _num(config.t_from),
            _num(config.t_to),
            str(stats.steps),
            str(stats.non_narrow_count),
            _num(stats.non_narrow_fraction),
            str(stats.degenerate_count),
            _num(stats.degenerate_fraction),
            str(stats.singular_count),
            _num(stats.singular_fraction),
            str(stats.positive_count),
            _num(stats.positive_fraction),
            str(stats.zero_count),
            _num(stats.zero_fraction),
            _num(stats.avg_nonzero_dimension),
            _num(stats.max_measure),
            _num(stats.avg_variance),
            _num(stats.avg_probability),
            _num(stats.max_probability),
            _num(stats.avg_anticipation),
            _num(stats.max_anticipation),
            "" if stats.time_of_maximum is None else _num(stats.time_of_maximum),
        )
        return cls(cells)


def append_stats(path: str | Path, row: CsvStatsRow) -> None:
    """Append one row, writing the header first if the file is empty.

    Each row goes out in a single write call so a cancelled process
    never leaves a torn line behind.
    """
    target = Path(path)
    try:
        with target.open("a", encoding="utf-8", newline="") as fh:
            if fh.tell() == 0:
                fh.write(",".join(STATS_COLUMNS) + "\n")
            fh.write(",".join(row.cells) + "\n")
    except OSError as exc:
        raise OSError(f"cannot append statistics to {target}: {exc}") from exc


def export_series(path: str | Path, series: Sequence[StepRecord]) -> None:
    """Write the per-step series as CSV, one row per step in T order."""
    target = Path(path)
    lines = [",".join(SERIES_COLUMNS)]
    for rec in series:
        lines.append(
            ",".join(
                (
                    str(rec.index),
                    _exact(rec.T),
                    str(int(rec.non_narrow)),
                    str(int(rec.degenerate)),
                    str(int(rec.singular)),
                    str(int(rec.positive)),
                    str(int(rec.zero_dim)),
                    _exact(rec.lookahead),
                    _exact(rec.total_prob),
                    _exact(rec.variance),
                    str(rec.nonzero_dimension),
                )
            )
        )
    try:
        target.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write series to {target}: {exc}") from exc


def read_series(path: str | Path) -> list[StepRecord]:
    """Parse a series CSV back into step records (measure snapshots absent)."""
    target = Path(path)
    text = target.read_text(encoding="utf-8")
    lines = [line for line in text.split("\n") if line]
    if not lines or lines[0] != ",".join(SERIES_COLUMNS):
        raise ValueError(f"{target} is not a series export")
    records = []
    for line in lines[1:]:
        cells = line.split(",")
        records.append(
            StepRecord(
                index=int(cells[0]),
                T=float(cells[1]),
                non_narrow=bool(int(cells[2])),
                degenerate=bool(int(cells[3])),
                singular=bool(int(cells[4])),
                positive=bool(int(cells[5])),
                zero_dim=bool(int(cells[6])),
                lookahead=float(cells[7]),
                total_prob=float(cells[8]),
                variance=float(cells[9]),
                nonzero_dimension=int(cells[10]),
            )
        )
    return records


class PlotKind(str, Enum):
    CURVES = "curves"
    SPECTRUM_BARS = "spectrum-bars"


# classification strips across the top of the curves plot, top-down order
_STRIP_ROWS = (
    ("positive", "black", 0.97),
    ("zero_dim", "red", 0.94),
    ("singular", "green", 0.91),
    ("narrow", "brown", 0.88),
)


def _curves_figure(series: Sequence[StepRecord], order: int) -> plt.Figure:
    times = np.array([rec.T for rec in series])
    probs = np.array([rec.total_prob for rec in series])
    variances = np.array([rec.variance for rec in series])
    lookaheads = np.array([rec.lookahead for rec in series])
    positive = np.array([rec.positive for rec in series], dtype=bool)

    fig, ax = plt.subplots(figsize=(9.0, 5.0))
    ax.xaxis.tick_top()
    ax.xaxis.set_label_position("top")
    ax.set_xlabel("time")
    ax.set_ylabel("probability / variance")
    ax.plot(times, probs, color="black", linewidth=0.8, label="probability")
    ax.plot(times, variances, color="green", linewidth=0.8, label="variance")
    ax.set_xlim(times.min(), times.max() if times.max() > times.min() else times.min() + 1)
    ax.set_ylim(0.0, 1.25)

    right = ax.twinx()
    right.set_ylabel("look-ahead")
    right.plot(times, lookaheads, color="red", linewidth=0.8, label="anticipation")
    right.set_ylim(0.0, max(order, 1))

    flags = {
        "positive": positive,
        "zero_dim": np.array([rec.zero_dim for rec in series], dtype=bool),
        "singular": np.array([rec.singular for rec in series], dtype=bool),
        "narrow": np.array([not rec.non_narrow for rec in series], dtype=bool),
    }
    for name, color, height in _STRIP_ROWS:
        mask = flags[name]
        if mask.any():
            ax.plot(
                times[mask],
                np.full(mask.sum(), height),
                linestyle="none",
                marker="|",
                markersize=6,
                color=color,
                transform=ax.get_xaxis_transform(),
            )

    # distribution of the look-ahead over [0, L], one bin per integer
    n_pos = int(positive.sum())
    if order >= 1 and n_pos:
        bins = np.zeros(order, dtype=int)
        for value in lookaheads[positive]:
            bins[lookahead_bin(float(value), order)] += 1
        for n, count in enumerate(bins):
            right.annotate(
                f"{count / n_pos:.2e}",
                xy=(1.005, n + 0.5),
                xycoords=("axes fraction", "data"),
                fontsize=7,
                color="red",
            )

    ax.legend(loc="lower left", fontsize=8)
    fig.tight_layout()
    return fig


def _bars_figure(positions: np.ndarray, weights: np.ndarray) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.bar(positions, weights, width=0.06, color="steelblue")
    ax.set_xlim(-np.pi, np.pi)
    ax.set_ylim(0.0, max(1.0, float(np.max(weights)) * 1.1))
    ax.set_xlabel("position")
    ax.set_ylabel("measure")
    fig.tight_layout()
    return fig


def _build_figure(data, kind: PlotKind, order: int) -> plt.Figure:
    if kind is PlotKind.CURVES:
        if not data:
            raise ValueError("cannot plot an empty series")
        return _curves_figure(data, order)
    if isinstance(data, StepRecord):
        positions, weights = data.positions, data.measure
    else:
        positions, weights = data
    if positions is None or weights is None or len(positions) == 0:
        raise ValueError("cannot plot an empty measure")
    return _bars_figure(np.asarray(positions), np.asarray(weights))


def render_plot(
    data,
    kind: PlotKind,
    path: str | Path,
    order: int = 1,
    timestamp: datetime | None = None,
) -> Path:
    """Render a plot to `path` with a timestamp suffix on the file name.

    `data` is the step-record series for CURVES, or a single step record
    (alternatively a `(positions, weights)` pair) for SPECTRUM_BARS.
    Returns the path actually written.  Raises ValueError on empty data
    before any file is created.
    """
    fig = _build_figure(data, kind, order)
    target = Path(path)
    when = timestamp or datetime.now()
    stamp = when.strftime("%Y%m%d-%H%M%S")
    suffix = target.suffix or ".png"
    final = target.with_name(f"{target.stem}-{stamp}{suffix}")
    try:
        fig.savefig(final)
    except OSError as exc:
        raise OSError(f"cannot write plot to {final}: {exc}") from exc
    finally:
        plt.close(fig)
    return final


def plot_svg(data, kind: PlotKind, order: int = 1) -> bytes:
    """Render the same plot to an in-memory SVG document."""
    fig = _build_figure(data, kind, order)
    try:
        buffer = io.BytesIO()
        fig.savefig(buffer, format="svg")
        return buffer.getvalue()
    finally:
        plt.close(fig)
