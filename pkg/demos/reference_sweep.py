"""
Sweep a small spectrum over a long time range
=============================================

The canonical starting point: three hydrogen-like levels, order one,
step sizes T from 0 up to 72.  At each grid point the run looks for the
non-negative measure with orthogonal evolution that maximizes the
anticipation look-ahead, then aggregates the results.
"""

from quanticipate import (
    MeasureKind,
    PlotKind,
    RunConfig,
    SearchMode,
    SpectrumKind,
    render_plot,
    run_continuous,
    show_max,
)

# One run description carries everything: which spectrum, which order,
# where to look, and how to pick the measure at each step.
config = RunConfig(
    mode=SearchMode.CONTINUOUS,
    spectrum_kind=SpectrumKind.H_ATOM,
    dimension=3,
    order=1,
    location=-0.5,
    t_from=0.0,
    t_to=72.0,
    step_size=0.01,
    measure_kind=MeasureKind.OPTIMUM,
)

result = run_continuous(config)
stats = result.stats

print(f"evaluated {stats.steps} step sizes on [0, 72)")
print(f"non-narrow spectra: {stats.non_narrow_count} "
      f"({100 * stats.non_narrow_fraction:.1f}% of all steps)")
print(f"positive solutions: {stats.positive_count} "
      f"({100 * stats.positive_fraction:.1f}% of non-narrow)")

# Nearly every step that passes the width test admits a positive
# measure, and the best look-ahead comfortably beats the order.
print(f"max anticipation {stats.max_anticipation:.4f} "
      f"at T = {stats.time_of_maximum:.2f}")
print(f"average forward probability {stats.avg_probability:.4f}")

# The record behind the maximum is a full snapshot: measure weights,
# reduced positions, and the per-step flags.
best = show_max(result.series)
print(f"measure at the maximum: {[round(float(w), 4) for w in best.measure]}")
print(f"nonzero dimension there: {best.nonzero_dimension}")

# Two stacked panels: anticipation and total probability curves on top,
# classification bands underneath.
path = render_plot(result.series, PlotKind.CURVES, "reference_sweep.png",
                   order=config.order)
print(f"curves written to {path}")
