"""
Anatomy of a single solution
============================

One time step, taken apart by hand: reduce the spectrum, build the
linear system, maximize the look-ahead over the feasible polytope, and
inspect what the winning measure looks like.  Convexity of the solution
set is then checked directly by blending the optimum with another
feasible corner.
"""

import numpy as np

from quanticipate import (
    Classification,
    ReducedMeasure,
    Solution,
    SpectrumKind,
    amplitudes,
    equation_residual,
    generate_spectrum,
    interpolate,
    maximize_lookahead,
    real_system,
    reduce_spectrum,
    simplex_feasible,
)

T = 11.3
L = 1
delta = -0.5

spectrum = generate_spectrum(SpectrumKind.H_ATOM, 6)
print(f"eigenvalues: {np.round(spectrum.eigenvalues, 4)}")

# Reduction folds lambda*T into [0, 2*pi) and merges near-coincident
# phases; the reduced dimension is what the solver actually sees.
reduced = reduce_spectrum(spectrum, T)
print(f"reduced phases at T={T}: {np.round(reduced.kappas, 4)}")

system = real_system(reduced, L)
print(f"structural degrees of freedom: {system.n_structural}")

best = maximize_lookahead(system, reduced, delta, L)
print(f"classification: {best.classification.value}")
print(f"optimal weights: {np.round(best.mu, 6)}")
print(f"look-ahead at the optimum: {best.objective:.6f}")

# The forward amplitudes say how much of the wave the measure pushes
# past the current moment.
forward = amplitudes(reduced, ReducedMeasure(best.mu), delta, L)
print(f"anticipation {forward.lookahead:.6f}, "
      f"total probability {forward.total_prob:.6f}")

# A plain feasible corner solves the same equations.  Wrap it as a
# second Solution (measuring its own residual and look-ahead) so it can
# be blended with the optimum through the public interpolation helper.
corner = simplex_feasible(system)
look = amplitudes(reduced, ReducedMeasure(corner), delta, L).lookahead
other = Solution(
    mu=corner,
    classification=Classification.POSITIVE,
    nonzero_dimension=int(np.count_nonzero(corner > 1.0e-4)),
    residual=equation_residual(corner, reduced, L),
    objective=look,
)
print(f"corner look-ahead: {other.objective:.6f} "
      f"(residual {other.residual:.2e})")

# Solutions form an affine family: every convex blend still solves the
# equations, so the defect stays at rounding level throughout.
for t in (0.25, 0.5, 0.75):
    blend = interpolate(best, other, t, reduced, delta, L)
    print(f"blend t={t}: residual "
          f"{equation_residual(blend.mu, reduced, L):.2e}, "
          f"look-ahead {blend.objective:.6f}")
