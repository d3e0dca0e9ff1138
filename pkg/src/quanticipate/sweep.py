"""Search modes over time and the per-run statistics.

A run resolves its spectrum once, then walks a time grid (continuous,
random placement per cell, or a directed seek) and pushes every point
through the same pipeline: reduce, width test, measure, solver,
anticipation.  Failures never raise out of a step; they set flags, and
non-positive steps carry zeroed metrics so the statistics denominators
match the classification counts.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .anticipation import amplitudes
from .errors import (
    CyclingError,
    IllConditionedError,
    SingularSpectrumError,
    SymmetryViolationError,
)
from .solver import (
    Classification,
    Solution,
    evaluate_fixed_measure,
    maximize_lookahead,
    solve_unique,
)
from .spectra import (
    RANDOM_KINDS,
    ReducedMeasure,
    ReducedSpectrum,
    SpectralMeasure,
    Spectrum,
    SpectrumKind,
    generate_spectrum,
    is_non_narrow,
    reduce_spectrum,
    variance,
)
from .vandermonde import real_system

GRID_EPS = 1.0e-9          # absorbs float drift in the step count
EQUIDISTANT_TOL = 1.0e-6   # gap deviation for the seek-equal predicate
MAX_SEEK_STEPS = 10_000_000


class SearchMode(str, Enum):
    CONTINUOUS = "continuous"
    RANDOM = "random"
    SEEK_POSITIVE = "seek-positive"
    SEEK_EQUAL = "seek-equal"
    SEEK_DIM_CHANGE = "seek-dim-change"
    SINGLE = "single"


SEEK_MODES = (
    SearchMode.SEEK_POSITIVE,
    SearchMode.SEEK_EQUAL,
    SearchMode.SEEK_DIM_CHANGE,
)
RANGE_MODES = (SearchMode.CONTINUOUS, SearchMode.RANDOM)


class MeasureKind(str, Enum):
    OPTIMUM = "optimum"
    EQUAL = "equal"
    RANDOM = "random"
    PRESCRIBED = "prescribed"
    PREVIOUS = "previous"


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs; validated on construction."""

    mode: SearchMode
    spectrum_kind: SpectrumKind
    dimension: int
    order: int
    location: float = -0.5
    t_from: float = 0.0
    t_to: float = 72.0
    step_size: float = 0.01
    measure_kind: MeasureKind = MeasureKind.OPTIMUM
    seed: int | None = None
    direction: Direction = Direction.FORWARD
    prescribed_spectrum: np.ndarray | None = None
    prescribed_measure: np.ndarray | None = None
    previous_measure: np.ndarray | None = None
    max_steps: int = MAX_SEEK_STEPS

    def __post_init__(self):
        L, d = self.order, self.dimension
        if L < 0:
            raise ValueError("order must satisfy L >= 0")
        if d < 2 * L + 1:
            raise ValueError(
                f"dimension must satisfy d >= 2L + 1; got d={d}, L={L}"
            )
        if d < 2:
            raise ValueError("dimension must be at least 2")
        if not np.isfinite(self.location):
            raise ValueError("location must be finite")
        if self.measure_kind is MeasureKind.OPTIMUM and self.location >= 0:
            raise ValueError(
                "optimum measure requires a negative location; "
                f"got {self.location!r}"
            )
        if self.mode in RANGE_MODES and self.t_to < self.t_from:
            raise ValueError("'to' must not precede 'from'")
        if self.mode is not SearchMode.SINGLE and self.step_size <= 0:
            raise ValueError("step size must be positive")
        if self.spectrum_kind is SpectrumKind.PRESCRIBED and self.prescribed_spectrum is None:
            raise ValueError("prescribed spectrum kind needs eigenvalues")
        if self.measure_kind is MeasureKind.PRESCRIBED and self.prescribed_measure is None:
            raise ValueError("prescribed measure kind needs weights")
        if self.measure_kind is MeasureKind.PREVIOUS and self.previous_measure is None:
            raise ValueError("previous measure kind needs the stored weights")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")


@dataclass(frozen=True)
class StepRecord:
    """One evaluated time point.

    Metrics are zeroed unless the step ended positive, so series and
    statistics agree with the classification flags.  The measure
    snapshot rows are per surviving reduced point: original eigenvalue
    index, display position in [-pi, pi), and weight.
    """

    index: int
    T: float
    non_narrow: bool = False
    degenerate: bool = False
    singular: bool = False
    positive: bool = False
    zero_dim: bool = False
    lookahead: float = 0.0
    total_prob: float = 0.0
    variance: float = 0.0
    nonzero_dimension: int = 0
    max_weight: float = 0.0
    measure: np.ndarray | None = None
    positions: np.ndarray | None = None
    original_indices: np.ndarray | None = None


@dataclass(frozen=True)
class SweepStats:
    """Aggregates in the save-table layout; see field comments for denominators."""

    steps: int = 0
    non_narrow_count: int = 0        # fraction of steps
    non_narrow_fraction: float = 0.0
    degenerate_count: int = 0        # fraction of steps
    degenerate_fraction: float = 0.0
    singular_count: int = 0          # fraction of steps
    singular_fraction: float = 0.0
    positive_count: int = 0          # fraction of non-narrow
    positive_fraction: float = 0.0
    zero_count: int = 0              # fraction of positive
    zero_fraction: float = 0.0
    avg_nonzero_dimension: float = 0.0   # over positive
    max_measure: float = 0.0             # over positive
    avg_variance: float = 0.0            # over all steps
    avg_probability: float = 0.0         # over positive
    avg_anticipation: float = 0.0        # over positive
    max_probability: float = 0.0
    max_anticipation: float = 0.0
    time_of_maximum: float | None = None


class StatsAccumulator:
    """Streaming accumulation of SweepStats over step records."""

    def __init__(self):
        self.steps = 0
        self.non_narrow = 0
        self.degenerate = 0
        self.singular = 0
        self.positive = 0
        self.zero = 0
        self.sum_nonzero = 0
        self.max_measure = 0.0
        self.sum_variance = 0.0
        self.sum_probability = 0.0
        self.sum_anticipation = 0.0
        self.max_probability = 0.0
        self.max_anticipation = 0.0
        self.time_of_maximum: float | None = None

    def add(self, rec: StepRecord) -> None:
        self.steps += 1
        self.non_narrow += rec.non_narrow
        self.degenerate += rec.degenerate
        self.singular += rec.singular
        self.sum_variance += rec.variance
        if rec.positive:
            self.positive += 1
            self.zero += rec.zero_dim
            self.sum_nonzero += rec.nonzero_dimension
            self.max_measure = max(self.max_measure, rec.max_weight)
            self.sum_probability += rec.total_prob
            self.sum_anticipation += rec.lookahead
            self.max_probability = max(self.max_probability, rec.total_prob)
            # strictly-greater keeps the earliest step on ties
            if self.time_of_maximum is None or rec.lookahead > self.max_anticipation:
                self.max_anticipation = rec.lookahead
                self.time_of_maximum = rec.T

    def finish(self) -> SweepStats:
        steps = self.steps
        pos = self.positive
        return SweepStats(
            steps=steps,
            non_narrow_count=self.non_narrow,
            non_narrow_fraction=self.non_narrow / steps if steps else 0.0,
            degenerate_count=self.degenerate,
            degenerate_fraction=self.degenerate / steps if steps else 0.0,
            singular_count=self.singular,
            singular_fraction=self.singular / steps if steps else 0.0,
            positive_count=pos,
            positive_fraction=pos / self.non_narrow if self.non_narrow else 0.0,
            zero_count=self.zero,
            zero_fraction=self.zero / pos if pos else 0.0,
            avg_nonzero_dimension=self.sum_nonzero / pos if pos else 0.0,
            max_measure=self.max_measure,
            avg_variance=self.sum_variance / steps if steps else 0.0,
            avg_probability=self.sum_probability / pos if pos else 0.0,
            avg_anticipation=self.sum_anticipation / pos if pos else 0.0,
            max_probability=self.max_probability,
            max_anticipation=self.max_anticipation,
            time_of_maximum=self.time_of_maximum,
        )


@dataclass(frozen=True)
class RunResult:
    """A finished (or cancelled) run: resolved inputs, series, statistics."""

    config: RunConfig
    spectrum: Spectrum
    seed: int
    series: tuple[StepRecord, ...]
    stats: SweepStats
    cancelled: bool = False


@dataclass(frozen=True)
class SeekResult:
    """Outcome of one seek: the hit (if any) and the scan effort."""

    config: RunConfig
    spectrum: Spectrum
    seed: int
    found: bool
    record: StepRecord | None
    steps_taken: int
    baseline_dimension: int | None = None


ProgressCallback = Callable[[int, float, StepRecord], None]


def resolve_spectrum(config: RunConfig) -> Spectrum:
    """Generate (or adopt) the run's spectrum; random kinds honor the seed."""
    if config.spectrum_kind is SpectrumKind.PRESCRIBED:
        return Spectrum(np.asarray(config.prescribed_spectrum, dtype=float))
    return generate_spectrum(config.spectrum_kind, config.dimension, seed=config.seed)


def _effective_seed(config: RunConfig, spectrum: Spectrum) -> int:
    if config.seed is not None:
        return int(config.seed)
    if spectrum.seed is not None:
        return int(spectrum.seed)
    return int(np.random.SeedSequence().entropy % (2**32))


def _resolve_measure(
    config: RunConfig, rng: np.random.Generator | None
) -> SpectralMeasure | None:
    """Fixed-measure kinds only; None means the solver optimizes."""
    kind = config.measure_kind
    d = config.dimension
    if kind is MeasureKind.OPTIMUM:
        return None
    if kind is MeasureKind.EQUAL:
        return SpectralMeasure(np.full(d, 1.0 / d))
    if kind is MeasureKind.RANDOM:
        if rng is None:
            raise ValueError("random measure needs a per-step RNG")
        draws = rng.uniform(0.0, 1.0, d)
        total = draws.sum()
        if total <= 0:  # all-zero draw is measure-zero but guard anyway
            draws = np.full(d, 1.0)
            total = float(d)
        return SpectralMeasure(draws / total)
    weights = (
        config.prescribed_measure
        if kind is MeasureKind.PRESCRIBED
        else config.previous_measure
    )
    return SpectralMeasure(np.asarray(weights, dtype=float))


def _record_from_solution(
    index: int,
    T: float,
    red: ReducedSpectrum,
    sol: Solution,
    delta: float,
    L: int,
) -> StepRecord:
    order = red.display_order()
    snapshot = dict(
        measure=sol.mu[order],
        positions=red.display_kappas(),
        original_indices=red.survivor_indices()[order],
    )
    if sol.classification is Classification.POSITIVE:
        nu = ReducedMeasure(sol.mu)
        result = amplitudes(red, nu, delta, L)
        return StepRecord(
            index=index,
            T=T,
            non_narrow=True,
            degenerate=red.degenerate,
            positive=True,
            zero_dim=sol.nonzero_dimension < 2 * L + 1,
            lookahead=result.lookahead,
            total_prob=result.total_prob,
            variance=variance(red, nu),
            nonzero_dimension=sol.nonzero_dimension,
            max_weight=float(sol.mu.max()),
            **snapshot,
        )
    return StepRecord(
        index=index,
        T=T,
        non_narrow=True,
        degenerate=red.degenerate,
        singular=sol.classification is Classification.SINGULAR,
        **snapshot,
    )


def evaluate_point(
    config: RunConfig,
    spectrum: Spectrum,
    T: float,
    index: int = 0,
    rng: np.random.Generator | None = None,
) -> StepRecord:
    """Run the whole pipeline at one time point; failures become flags."""
    L, delta = config.order, config.location
    red = reduce_spectrum(spectrum, T)
    if red.actual_dimension < 2 * L + 1:
        return StepRecord(index=index, T=T, degenerate=red.degenerate, singular=True)
    if not is_non_narrow(red, L):
        return StepRecord(index=index, T=T, degenerate=red.degenerate)
    try:
        measure = _resolve_measure(config, rng)
        if measure is None:
            system = real_system(red, L)
            if system.n_structural == 0:
                sol = solve_unique(system, red, delta, L)
            else:
                sol = maximize_lookahead(system, red, delta, L)
        else:
            sol = evaluate_fixed_measure(measure, red, delta, L)
    except (
        SingularSpectrumError,
        IllConditionedError,
        SymmetryViolationError,
        CyclingError,
    ):
        return StepRecord(
            index=index, T=T, non_narrow=True, degenerate=red.degenerate, singular=True
        )
    return _record_from_solution(index, T, red, sol, delta, L)


def planned_steps(config: RunConfig) -> int:
    span = config.t_to - config.t_from
    return max(int(np.floor(span / config.step_size + GRID_EPS)), 0)


def _run_grid(
    config: RunConfig,
    random_placement: bool,
    progress: ProgressCallback | None,
    cancel: threading.Event | None,
) -> RunResult:
    spectrum = resolve_spectrum(config)
    seed = _effective_seed(config, spectrum)
    total = planned_steps(config)
    needs_rng = random_placement or config.measure_kind is MeasureKind.RANDOM
    acc = StatsAccumulator()
    series: list[StepRecord] = []
    cancelled = False
    for j in range(total):
        if cancel is not None and cancel.is_set():
            cancelled = True
            break
        rng = np.random.default_rng([seed, j]) if needs_rng else None
        T = config.t_from + j * config.step_size
        if random_placement:
            T += float(rng.uniform(0.0, config.step_size))
        rec = evaluate_point(config, spectrum, T, index=j, rng=rng)
        series.append(rec)
        acc.add(rec)
        if progress is not None:
            progress(j, T, rec)
    return RunResult(
        config=config,
        spectrum=spectrum,
        seed=seed,
        series=tuple(series),
        stats=acc.finish(),
        cancelled=cancelled,
    )


def run_continuous(
    config: RunConfig,
    progress: ProgressCallback | None = None,
    cancel: threading.Event | None = None,
) -> RunResult:
    """Evaluate the half-open grid from + j*step for j = 0..steps-1."""
    return _run_grid(config, False, progress, cancel)


def run_random(
    config: RunConfig,
    progress: ProgressCallback | None = None,
    cancel: threading.Event | None = None,
) -> RunResult:
    """One uniformly placed evaluation per grid cell; seed-reproducible."""
    return _run_grid(config, True, progress, cancel)


def run_single(config: RunConfig) -> RunResult:
    """A single evaluation at 'from'; stats reflect that one step."""
    spectrum = resolve_spectrum(config)
    seed = _effective_seed(config, spectrum)
    rng = (
        np.random.default_rng([seed, 0])
        if config.measure_kind is MeasureKind.RANDOM
        else None
    )
    rec = evaluate_point(config, spectrum, config.t_from, index=0, rng=rng)
    acc = StatsAccumulator()
    acc.add(rec)
    return RunResult(
        config=config,
        spectrum=spectrum,
        seed=seed,
        series=(rec,),
        stats=acc.finish(),
    )


class SeekPredicate(str, Enum):
    POSITIVE = "positive"
    EQUAL = "equal"
    DIM_CHANGE = "dim-change"


def _is_equidistant(red: ReducedSpectrum) -> bool:
    """Cleaned spectrum equidistant on the circle within the gap tolerance.

    A single surviving point is not considered equidistant; otherwise
    every T = 0 neighborhood would hit immediately.
    """
    m = red.actual_dimension
    if m < 2:
        return False
    s = np.sort(red.kappas)
    gaps = np.diff(np.concatenate([s, [s[0] + 2 * np.pi]]))
    return bool(np.abs(gaps - 2 * np.pi / m).max() <= EQUIDISTANT_TOL)


def seek(
    config: RunConfig,
    predicate: SeekPredicate,
    baseline_dimension: int | None = None,
    progress: ProgressCallback | None = None,
    cancel: threading.Event | None = None,
) -> SeekResult:
    """Step from 'from' until the predicate holds, up to max_steps.

    The starting point itself is evaluated first, so a seek over the
    continuous grid finds the first grid point at or after 'from'.
    For dimension-change, the first positive evaluation establishes
    the baseline; it counts as the hit when no baseline was given.
    """
    spectrum = resolve_spectrum(config)
    seed = _effective_seed(config, spectrum)
    sign = 1.0 if config.direction is Direction.FORWARD else -1.0
    needs_rng = config.measure_kind is MeasureKind.RANDOM
    baseline = baseline_dimension
    for i in range(config.max_steps):
        if cancel is not None and cancel.is_set():
            break
        T = config.t_from + sign * i * config.step_size
        if predicate is SeekPredicate.EQUAL:
            # cheap spectral test; full evaluation only on a hit
            if _is_equidistant(reduce_spectrum(spectrum, T)):
                rng = np.random.default_rng([seed, i]) if needs_rng else None
                rec = evaluate_point(config, spectrum, T, index=i, rng=rng)
                return SeekResult(config, spectrum, seed, True, rec, i + 1, baseline)
            continue
        rng = np.random.default_rng([seed, i]) if needs_rng else None
        rec = evaluate_point(config, spectrum, T, index=i, rng=rng)
        if progress is not None:
            progress(i, T, rec)
        if predicate is SeekPredicate.POSITIVE:
            if rec.positive:
                return SeekResult(config, spectrum, seed, True, rec, i + 1, baseline)
        else:  # DIM_CHANGE
            if rec.positive and (baseline is None or rec.nonzero_dimension != baseline):
                return SeekResult(
                    config, spectrum, seed, True, rec, i + 1, rec.nonzero_dimension
                )
    return SeekResult(config, spectrum, seed, False, None, config.max_steps, baseline)


def seek_many(
    config: RunConfig,
    predicate: SeekPredicate,
    repeat: int,
    progress: ProgressCallback | None = None,
    cancel: threading.Event | None = None,
) -> list[SeekResult]:
    """Chained seeks; each continues one step past the previous hit."""
    results: list[SeekResult] = []
    current = config
    baseline = None
    for _ in range(max(repeat, 1)):
        outcome = seek(current, predicate, baseline, progress, cancel)
        results.append(outcome)
        if not outcome.found:
            break
        baseline = outcome.baseline_dimension
        sign = 1.0 if current.direction is Direction.FORWARD else -1.0
        current = replace(current, t_from=outcome.record.T + sign * current.step_size)
    return results


def show_max(series: Sequence[StepRecord]) -> StepRecord | None:
    """The positive step with maximal look-ahead; earliest wins ties."""
    best: StepRecord | None = None
    for rec in series:
        if rec.positive and (best is None or rec.lookahead > best.lookahead):
            best = rec
    return best
