"""
Where positivity first appears
==============================

For hydrogen-like eigenvalues the first step size T admitting a
positive measure has a clean closed form.  Below T = 1 no phase wraps,
so the reduced spectrum spans 2*pi*T*(1 - 1/d^2); order-one solutions
appear once that span reaches pi, i.e. at

    T_onset(d) = d^2 / (2 * (d^2 - 1))

which drops toward 1/2 as the dimension d grows.  This script measures
the onset with the seek mode and compares it with the formula.
"""

import numpy as np

from quanticipate import (
    MeasureKind,
    RunConfig,
    SearchMode,
    SeekPredicate,
    SpectrumKind,
    seek,
)


def measured_onset(dimension, step):
    config = RunConfig(
        mode=SearchMode.SEEK_POSITIVE,
        spectrum_kind=SpectrumKind.H_ATOM,
        dimension=dimension,
        order=1,
        location=-0.5,
        t_from=0.0,
        step_size=step,
        measure_kind=MeasureKind.OPTIMUM,
    )
    hit = seek(config, SeekPredicate.POSITIVE)
    return hit.record.T


dims = np.array([3, 4, 6, 10, 20, 30])
step = 1.0e-4

print(f"{'d':>4} {'measured':>10} {'predicted':>10} {'gap':>9}")
for d in dims:
    found = measured_onset(int(d), step)
    predicted = d * d / (2.0 * (d * d - 1.0))
    # the seek lands on the first grid point past the true onset
    print(f"{d:>4} {found:>10.6f} {predicted:>10.6f} "
          f"{found - predicted:>9.2e}")

# Refining the grid at fixed dimension homes in on the formula value,
# not on the limit 1/2; only growing d closes the remaining gap.
print()
for step in (1.0e-3, 1.0e-4, 1.0e-5):
    found = measured_onset(4, step)
    print(f"d=4, step {step:g}: first positive at T = {found:.6f} "
          f"(formula gives {8 / 15:.6f})")
