"""Feasibility and look-ahead maximization over the measure polytope.

The real canonical system (I|A)mu = b fixes the leading 2L+1 (slack)
components of mu once the structural ones are chosen, and the k = 0
equation pins the total weight to one, so the feasible set {mu >= 0}
is a bounded polytope.  Feasibility and linear subproblems run on a
dense two-phase tableau; the quadratic look-ahead is maximized by
alternating its gradient with a simplex step until the objective gain
drops to the cutoff.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import CyclingError, IllConditionedError
from .spectra import ReducedSpectrum, SpectralMeasure, reduce_measure
from .vandermonde import ReducedSystem

# Classification cutoffs.
RESIDUAL_TOL = 1.0e-3     # Euclidean defect above this is not a solution
PROB_CAP = 1.001          # total probability beyond this is numerically bad
NONZERO_TOL = 1.0e-4      # weight counts as present above this
NEG_CLAMP = 1.0e-10       # rounding noise vs genuine negativity
# Optimizer loop.
IMPROVEMENT_TOL = 1.0e-3
MAX_OUTER_DEFAULT = 100
# Tableau numerics.
PIVOT_TOL = 1.0e-9
FEASIBILITY_TOL = 1.0e-9


class Classification(str, Enum):
    POSITIVE = "positive"
    SINGULAR = "singular"
    NON_POSITIVE = "non-positive"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Solution:
    """Solver outcome for one evaluation point.

    ``mu`` lives on the reduced spectrum in working (conditioned)
    order; it is a plain vector because non-positive outcomes carry
    genuinely negative entries.
    """

    mu: np.ndarray
    classification: Classification
    nonzero_dimension: int
    residual: float
    objective: float

    @property
    def is_positive(self) -> bool:
        return self.classification is Classification.POSITIVE


def equation_residual(mu: np.ndarray, reduced: ReducedSpectrum, L: int) -> float:
    """Euclidean norm of the evolution defect over k = -L..L."""
    ks = np.arange(-L, L + 1)
    defect = np.exp(-1j * np.outer(ks, reduced.kappas)) @ mu
    defect[L] -= 1.0
    return float(np.linalg.norm(defect))


def _forward_moments(mu: np.ndarray, reduced: ReducedSpectrum, delta: float, L: int):
    """Look-ahead A and total probability P of a raw weight vector.

    Built on the unwrapped phases: the fractional frequencies k - delta
    see the 2pi multiples that the wrapped kappas drop.
    """
    shifted = np.arange(L + 1) - delta
    alphas = np.exp(-1j * np.outer(shifted, reduced.phases)) @ mu
    probs = np.abs(alphas) ** 2
    return float(np.dot(shifted, probs)), float(probs.sum())


def lookahead_gradient(
    mu: np.ndarray, reduced: ReducedSpectrum, delta: float, L: int
) -> np.ndarray:
    """Gradient of the quadratic look-ahead in the full weight space."""
    shifted = np.arange(L + 1) - delta
    E = np.exp(-1j * np.outer(shifted, reduced.phases))
    alphas = E @ mu
    return 2.0 * np.real(E.T @ (shifted * np.conj(alphas)))


def reduced_gradient(system: ReducedSystem, full_gradient: np.ndarray) -> np.ndarray:
    """Gradient in structural variables after eliminating the slack block.

    With mu_slack = b - A_struct mu_struct the chain rule gives
    g_struct - A_struct^T g_slack.
    """
    m = system.n_slack
    return full_gradient[m:] - system.a_struct.T @ full_gradient[:m]


def _clamp_noise(mu: np.ndarray) -> np.ndarray:
    out = mu.copy()
    noise = (out < 0) & (out >= -NEG_CLAMP)
    out[noise] = 0.0
    return out


def _classify(
    mu: np.ndarray,
    reduced: ReducedSpectrum,
    delta: float,
    L: int,
    on_residual_failure: Classification,
) -> Solution:
    """Shared classification: residual and probability window checks."""
    residual = equation_residual(mu, reduced, L)
    objective, total_prob = _forward_moments(mu, reduced, delta, L)
    nonzero = int(np.count_nonzero(mu > NONZERO_TOL))
    if abs(mu.sum() - 1.0) > 1.0e-9:
        cls = Classification.SINGULAR
    elif residual > RESIDUAL_TOL:
        cls = on_residual_failure
    elif not (0.0 <= total_prob <= PROB_CAP):
        cls = Classification.SINGULAR
    else:
        cls = Classification.POSITIVE
    return Solution(mu, cls, nonzero, residual, objective)


def solve_unique(
    system: ReducedSystem, reduced: ReducedSpectrum, delta: float, L: int
) -> Solution:
    """Exactly determined case: the measure is the right-hand side."""
    if system.n_structural:
        raise ValueError("system has structural freedom, not uniquely solvable")
    mu = system.b.copy()
    if mu.min() < -NEG_CLAMP:
        residual = equation_residual(mu, reduced, L)
        objective, _ = _forward_moments(mu, reduced, delta, L)
        nonzero = int(np.count_nonzero(mu > NONZERO_TOL))
        return Solution(mu, Classification.NON_POSITIVE, nonzero, residual, objective)
    mu = _clamp_noise(mu)
    return _classify(mu, reduced, delta, L, Classification.SINGULAR)


class _Tableau:
    """Dense two-phase simplex for max c.x s.t. Mx = b, x >= 0.

    Rows with negative right-hand side are flipped, which breaks their
    unit slack column, so phase 1 introduces one artificial per flipped
    row and drives their sum to zero.  Dantzig pricing by default;
    after 3 * n_rows consecutive degenerate pivots the entering and
    leaving rules switch to Bland's to rule out cycling.  A hard pivot
    cap reports instead of hanging.
    """

    def __init__(self, M: np.ndarray, b: np.ndarray):
        M = np.array(M, dtype=float)
        b = np.array(b, dtype=float)
        self.m, self.n = M.shape
        flip = b < 0
        M[flip] *= -1.0
        b[flip] *= -1.0
        art_rows = np.flatnonzero(flip)
        self.n_art = art_rows.size
        self.table = np.zeros((self.m, self.n + self.n_art + 1))
        self.table[:, : self.n] = M
        for slot, row in enumerate(art_rows):
            self.table[row, self.n + slot] = 1.0
        self.table[:, -1] = b
        # initial basis: own slack column where intact, artificial otherwise
        self.basis = np.arange(self.m)
        for slot, row in enumerate(art_rows):
            self.basis[row] = self.n + slot
        self.pivot_cap = 200 * (self.n + self.n_art) + 500
        self._feasible = None

    def _pivot(self, row: int, col: int) -> None:
        self.table[row] /= self.table[row, col]
        factors = self.table[:, col].copy()
        factors[row] = 0.0
        self.table -= np.outer(factors, self.table[row])
        self.basis[row] = col

    def _run(self, cost: np.ndarray, allowed: int) -> None:
        """Pivot to optimality for ``cost`` over columns [0, allowed)."""
        degenerate_streak = 0
        bland = False
        for _ in range(self.pivot_cap):
            body = self.table[:, :allowed]
            reduced_cost = cost[:allowed] - cost[self.basis] @ body
            reduced_cost[self.basis] = 0.0
            improving = np.flatnonzero(reduced_cost > PIVOT_TOL)
            if improving.size == 0:
                return
            col = improving[0] if bland else int(improving[np.argmax(reduced_cost[improving])])
            column = self.table[:, col]
            rows = np.flatnonzero(column > PIVOT_TOL)
            if rows.size == 0:
                raise IllConditionedError(
                    "unbounded improving direction in a bounded problem"
                )
            ratios = self.table[rows, -1] / column[rows]
            best = ratios.min()
            ties = rows[ratios <= best + 1e-12]
            row = int(ties[np.argmin(self.basis[ties])]) if bland else int(ties[0])
            if best <= PIVOT_TOL:
                degenerate_streak += 1
                if degenerate_streak > 3 * self.m:
                    bland = True
            else:
                degenerate_streak = 0
            self._pivot(row, col)
        raise CyclingError("simplex pivot cap exceeded")

    def find_feasible(self) -> np.ndarray | None:
        """Phase 1; returns a basic feasible point or None."""
        if self._feasible is None:
            if self.n_art:
                cost = np.zeros(self.n + self.n_art)
                cost[self.n :] = -1.0
                self._run(cost, self.n + self.n_art)
                if self.table[:, -1][self.basis >= self.n].sum() > FEASIBILITY_TOL:
                    self._feasible = False
                    return None
                self._expel_artificials()
            self._feasible = True
        return self.extract() if self._feasible else None

    def _expel_artificials(self) -> None:
        for row in np.flatnonzero(self.basis >= self.n):
            candidates = np.flatnonzero(np.abs(self.table[row, : self.n]) > PIVOT_TOL)
            if candidates.size == 0:
                # structurally impossible here: the slack block has full rank
                raise IllConditionedError("degenerate row blocks phase-1 cleanup")
            self._pivot(int(row), int(candidates[0]))

    def maximize(self, cost: np.ndarray) -> np.ndarray:
        """Phase 2 from the current basic feasible point."""
        if self.find_feasible() is None:
            raise ValueError("maximize called on an infeasible system")
        self._run(np.asarray(cost, dtype=float), self.n)
        return self.extract()

    def extract(self) -> np.ndarray:
        x = np.zeros(self.n)
        keep = self.basis < self.n
        x[self.basis[keep]] = self.table[keep, -1]
        return _clamp_noise(x)


def _system_tableau(system: ReducedSystem) -> _Tableau:
    m = system.n_slack
    M = np.hstack([np.eye(m), system.a_struct])
    return _Tableau(M, system.b)


def simplex_feasible(system: ReducedSystem) -> np.ndarray | None:
    """A basic feasible measure for the canonical system, or None."""
    return _system_tableau(system).find_feasible()


def maximize_lookahead(
    system: ReducedSystem,
    reduced: ReducedSpectrum,
    delta: float,
    L: int,
    max_outer: int = MAX_OUTER_DEFAULT,
) -> Solution:
    """Iterated gradient/simplex maximization of the look-ahead.

    The objective is a positive semidefinite quadratic in mu for
    delta < 0, so following the supporting gradient to a new corner
    never decreases it.  After the initial maximization a candidate
    corner replaces the current one only when it improves the
    look-ahead by more than 1e-3; the first sub-tolerance round ends
    the loop at the corner already held.  Exhausting the iteration
    budget or tripping the cycling guard demotes the result to
    Singular.
    """
    if delta >= 0:
        raise ValueError(
            "look-ahead maximization requires a negative location; "
            f"got {delta!r}"
        )
    if system.n_structural == 0:
        return solve_unique(system, reduced, delta, L)

    tableau = _system_tableau(system)
    # phase-1 pathologies propagate: there is no point to report yet
    mu = tableau.find_feasible()
    if mu is None:
        empty = np.zeros(system.dimension)
        residual = equation_residual(empty, reduced, L)
        return Solution(empty, Classification.INFEASIBLE, 0, residual, 0.0)
    demote = False
    try:
        gradient = lookahead_gradient(mu, reduced, delta, L)
        mu = tableau.maximize(gradient)
        current, _ = _forward_moments(mu, reduced, delta, L)
        for _ in range(max_outer):
            gradient = lookahead_gradient(mu, reduced, delta, L)
            candidate = tableau.maximize(gradient)
            value, _ = _forward_moments(candidate, reduced, delta, L)
            if value - current <= IMPROVEMENT_TOL:
                break
            mu, current = candidate, value
        else:
            demote = True
    except (CyclingError, IllConditionedError):
        demote = True
    solution = _classify(mu, reduced, delta, L, Classification.SINGULAR)
    if demote:
        solution = replace(solution, classification=Classification.SINGULAR)
    return solution


def evaluate_fixed_measure(
    measure: SpectralMeasure,
    reduced: ReducedSpectrum,
    delta: float,
    L: int,
) -> Solution:
    """Classify a prescribed/generated measure against the evolution.

    A residual above the cutoff means the measure simply is not a
    solution (NonPositive); a probability outside [0, 1.001] on an
    otherwise valid solution is a numeric pathology (Singular).
    """
    nu = reduce_measure(measure, reduced)
    return _classify(nu.weights, reduced, delta, L, Classification.NON_POSITIVE)


def interpolate(
    sol1: Solution,
    sol2: Solution,
    t: float,
    reduced: ReducedSpectrum,
    delta: float,
    L: int,
) -> Solution:
    """Convex combination (1-t) mu1 + t mu2, reclassified.

    Solutions of the evolution equations form an affine family, so the
    blend stays one; its non-zero dimension may exceed 2L+1.
    """
    if not (sol1.is_positive and sol2.is_positive):
        raise ValueError("interpolation requires two positive solutions")
    if sol1.mu.size != sol2.mu.size:
        raise ValueError("solutions live on different reduced spectra")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"interpolation parameter {t!r} outside [0, 1]")
    mu = (1.0 - t) * sol1.mu + t * sol2.mu
    return _classify(mu, reduced, delta, L, Classification.NON_POSITIVE)
