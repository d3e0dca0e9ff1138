"""Numerical explorer for orthogonal evolution of spectral measures.

Decide whether a point spectrum admits a non-negative measure with
orthogonal evolution of a given order at a step size T, search for the
measure maximizing the anticipation look-ahead, and sweep or seek over
time ranges with aggregate statistics, CSV export, plots, a CLI, and an
HTTP service.
"""

from .anticipation import AnticipationResult, amplitudes, lookahead_bin
from .errors import (
    CyclingError,
    IllConditionedError,
    InvalidDimensionError,
    PrescribedInputError,
    QuanticipateError,
    SingularSpectrumError,
    SymmetryViolationError,
)
from .exports import (
    CsvStatsRow,
    PlotKind,
    append_stats,
    export_series,
    plot_svg,
    read_series,
    render_plot,
)
from .solver import (
    Classification,
    Solution,
    equation_residual,
    evaluate_fixed_measure,
    interpolate,
    lookahead_gradient,
    maximize_lookahead,
    simplex_feasible,
    solve_unique,
)
from .spectra import (
    PrescribedTarget,
    ReducedMeasure,
    ReducedSpectrum,
    SpectralMeasure,
    Spectrum,
    SpectrumKind,
    generate_spectrum,
    is_non_narrow,
    parse_prescribed,
    reduce_measure,
    reduce_spectrum,
    spectral_width,
    variance,
)
from .sweep import (
    Direction,
    MeasureKind,
    RunConfig,
    RunResult,
    SearchMode,
    SeekPredicate,
    SeekResult,
    StepRecord,
    SweepStats,
    evaluate_point,
    planned_steps,
    run_continuous,
    run_random,
    run_single,
    seek,
    seek_many,
    show_max,
)
from .vandermonde import (
    ExponentialMatrix,
    MatrixRole,
    ReducedSystem,
    build_system,
    exponential_matrix,
    parker_invert,
    real_system,
    reduce_to_real,
)

__version__ = "0.1.0"

__all__ = [
    "AnticipationResult",
    "amplitudes",
    "lookahead_bin",
    "QuanticipateError",
    "InvalidDimensionError",
    "PrescribedInputError",
    "SingularSpectrumError",
    "IllConditionedError",
    "SymmetryViolationError",
    "CyclingError",
    "CsvStatsRow",
    "PlotKind",
    "append_stats",
    "export_series",
    "read_series",
    "render_plot",
    "plot_svg",
    "Classification",
    "Solution",
    "equation_residual",
    "evaluate_fixed_measure",
    "interpolate",
    "lookahead_gradient",
    "maximize_lookahead",
    "simplex_feasible",
    "solve_unique",
    "PrescribedTarget",
    "ReducedMeasure",
    "ReducedSpectrum",
    "SpectralMeasure",
    "Spectrum",
    "SpectrumKind",
    "generate_spectrum",
    "is_non_narrow",
    "parse_prescribed",
    "reduce_measure",
    "reduce_spectrum",
    "spectral_width",
    "variance",
    "Direction",
    "MeasureKind",
    "RunConfig",
    "RunResult",
    "SearchMode",
    "SeekPredicate",
    "SeekResult",
    "StepRecord",
    "SweepStats",
    "evaluate_point",
    "planned_steps",
    "run_continuous",
    "run_random",
    "run_single",
    "seek",
    "seek_many",
    "show_max",
    "ExponentialMatrix",
    "MatrixRole",
    "ReducedSystem",
    "build_system",
    "exponential_matrix",
    "parker_invert",
    "real_system",
    "reduce_to_real",
    "__version__",
]
