"""
Classification census at a wide spectrum
========================================

Thirty hydrogen-like levels crowd the unit circle, so almost every step
size passes the width test and the feasible polytope has plenty of
corners.  A short fine-grained sweep shows how the step classifications
and the look-ahead distribution behave in that regime.
"""

from collections import Counter

from quanticipate import (
    MeasureKind,
    RunConfig,
    SearchMode,
    SpectrumKind,
    run_continuous,
)

config = RunConfig(
    mode=SearchMode.CONTINUOUS,
    spectrum_kind=SpectrumKind.H_ATOM,
    dimension=30,
    order=1,
    location=-0.5,
    t_from=0.0,
    t_to=7.2,
    step_size=0.001,
    measure_kind=MeasureKind.OPTIMUM,
)

result = run_continuous(config)
stats = result.stats

print(f"steps: {stats.steps}")
print(f"non-narrow: {stats.non_narrow_count}   "
      f"positive: {stats.positive_count}   "
      f"degenerate: {stats.degenerate_count}   "
      f"singular: {stats.singular_count}")

# A positive step whose optimal measure keeps fewer than 2L+1 weights
# above the presence threshold counts as a zero-dimension event; they
# cluster where a corner weight crosses zero as T moves.
print(f"zero-dimension events: {stats.zero_count} "
      f"({100 * stats.zero_fraction:.2f}% of positives)")
print(f"average nonzero dimension: {stats.avg_nonzero_dimension:.3f}")

# How many weights does the optimum actually use?  The basic solutions
# of the simplex live on 2L+1 = 3 vertices of the polytope, so the
# census concentrates there no matter how large d grows.
dims = Counter(rec.nonzero_dimension for rec in result.series
               if rec.positive)
for nd in sorted(dims):
    print(f"nonzero dimension {nd}: {dims[nd]} steps")

# The largest single weight any optimal measure assigns stays well
# below 1 once the spectrum is this rich.
top = max(rec.max_weight for rec in result.series if rec.positive)
print(f"largest weight seen in any positive measure: {top:.4f}")
print(f"max anticipation {stats.max_anticipation:.4f} "
      f"at T = {stats.time_of_maximum:.3f}")
