"""Point spectra, spectral measures, and the reduced spectrum pipeline.

A point spectrum is a list of d mutually distinct eigenvalues (angular
frequencies).  At evaluation time T every eigenvalue is wrapped onto the
unit circle, near-coincident points are merged, and the survivors are
reordered so that the leading ones are as far apart as possible.  All
downstream linear algebra works on that reduced, reordered spectrum.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidDimensionError, PrescribedInputError

TWO_PI = 2.0 * np.pi

# Circular distance below which two reduced eigenvalues merge.
DEDUP_TOL = 1.0e-6
# Maximum allowed |sum(weights) - 1| for a prescribed measure.
MEASURE_SUM_TOL = 1.0e-10
# Random eigenvalue draws closer than this are redrawn.
COLLISION_TOL = 1.0e-12
# Display phases this close to +pi fold onto -pi (half-open range).
SEAM_TOL = 1.0e-10


class SpectrumKind(str, Enum):
    H_ATOM = "h-atom"
    EQUIDISTANT = "equidistant"
    EQUIDISTANT_ALTERNATING = "equidistant-alternating"
    RANDOM = "random"
    RANDOM_ALTERNATING = "random-alternating"
    PRESCRIBED = "prescribed"


RANDOM_KINDS = (SpectrumKind.RANDOM, SpectrumKind.RANDOM_ALTERNATING)


def circular_distance(a, b):
    """Distance between two phases on the circle, min(|a-b|, 2pi-|a-b|)."""
    d = np.abs(np.asarray(a) - np.asarray(b)) % TWO_PI
    return np.minimum(d, TWO_PI - d)


def to_display_range(kappa):
    """Map phases from [0, 2pi) to the display range [-pi, pi).

    A phase sitting on the seam belongs to -pi; without the snap the
    rounding of the wrap would drop it on either side at random.
    """
    display = np.mod(np.asarray(kappa) + np.pi, TWO_PI) - np.pi
    return np.where(display >= np.pi - SEAM_TOL, -np.pi, display)


@dataclass(frozen=True)
class Spectrum:
    """d mutually distinct eigenvalues, with the generator kind and RNG seed."""

    eigenvalues: np.ndarray
    kind: SpectrumKind = SpectrumKind.PRESCRIBED
    seed: int | None = None

    def __post_init__(self):
        values = np.asarray(self.eigenvalues, dtype=float)
        object.__setattr__(self, "eigenvalues", values)
        if values.ndim != 1 or values.size < 2:
            raise InvalidDimensionError(
                f"spectrum needs at least 2 eigenvalues, got {values.size}"
            )
        if not np.all(np.isfinite(values)):
            raise PrescribedInputError("eigenvalues must be finite")
        diffs = np.abs(values[:, None] - values[None, :])
        np.fill_diagonal(diffs, np.inf)
        if diffs.min() <= COLLISION_TOL:
            raise PrescribedInputError("eigenvalues must be mutually distinct")

    @property
    def dimension(self) -> int:
        return int(self.eigenvalues.size)


@dataclass(frozen=True)
class SpectralMeasure:
    """Non-negative weights over the original spectrum, summing to one."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if w.ndim != 1 or w.size < 1:
            raise PrescribedInputError("measure must be a non-empty vector")
        if np.any(w < 0):
            raise PrescribedInputError("measure values must be non-negative")
        if abs(w.sum() - 1.0) > MEASURE_SUM_TOL:
            raise PrescribedInputError(
                f"measure must sum to 1 within {MEASURE_SUM_TOL:g}, "
                f"got deviation {abs(w.sum() - 1.0):.3e}"
            )

    @property
    def dimension(self) -> int:
        return int(self.weights.size)


@dataclass(frozen=True)
class ReducedSpectrum:
    """Eigenvalues wrapped mod 2pi at time T, deduplicated and reordered.

    ``kappas`` is stored in conditioning (working) order: the leading
    entries are pairwise far apart on the circle so the exponential
    system stays well-conditioned.  ``origin_map[i]`` gives the working
    slot that original eigenvalue i merged into, and ``permutation[j]``
    the pre-permutation (survivor-order) index of working slot j.
    ``phases`` keeps each survivor's unwrapped lambda_n * T, which
    differs from kappa by a multiple of 2pi; anticipation amplitudes
    need the unwrapped value because fractional frequencies k - delta
    are not 2pi-periodic in it.
    """

    kappas: np.ndarray
    phases: np.ndarray
    origin_map: np.ndarray
    permutation: np.ndarray
    degenerate: bool
    T: float

    @property
    def actual_dimension(self) -> int:
        return int(self.kappas.size)

    @property
    def original_dimension(self) -> int:
        return int(self.origin_map.size)

    def display_order(self) -> np.ndarray:
        """Working-slot indices sorted back into original (survivor) order."""
        return np.argsort(self.permutation)

    def display_kappas(self) -> np.ndarray:
        """Surviving phases in original order, mapped into [-pi, pi)."""
        return to_display_range(self.kappas[self.display_order()])

    def survivor_indices(self) -> np.ndarray:
        """Original eigenvalue index of each surviving point, working order."""
        idx = np.full(self.actual_dimension, -1, dtype=int)
        for i, slot in enumerate(self.origin_map):
            if idx[slot] < 0:
                idx[slot] = i
        return idx


@dataclass(frozen=True)
class ReducedMeasure:
    """Weights over the reduced spectrum, in working order."""

    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))


def generate_spectrum(kind: SpectrumKind, d: int, seed: int | None = None) -> Spectrum:
    """Build a spectrum of dimension d from one of the stock generators.

    Random kinds draw a fresh seed when none is given and record it on
    the result, so any run can be reproduced later.
    """
    kind = SpectrumKind(kind)
    if d < 2:
        raise InvalidDimensionError(f"dimension must be >= 2, got {d}")
    n = np.arange(1, d + 1, dtype=float)

    if kind is SpectrumKind.H_ATOM:
        return Spectrum(-TWO_PI / n**2, kind)
    if kind is SpectrumKind.EQUIDISTANT:
        return Spectrum(TWO_PI * n / d, kind)
    if kind is SpectrumKind.EQUIDISTANT_ALTERNATING:
        return Spectrum(TWO_PI * (n / d + (n - 1) % 2), kind)
    if kind in RANDOM_KINDS:
        if seed is None:
            seed = int(np.random.SeedSequence().entropy % (2**32))
        rng = np.random.default_rng(seed)
        values = _draw_distinct(rng, kind, d)
        return Spectrum(values, kind, seed)
    raise PrescribedInputError("prescribed spectra are built via parse_prescribed")


def _draw_distinct(rng, kind, d):
    values = np.empty(d)
    for i in range(d):
        if kind is SpectrumKind.RANDOM:
            lo, hi = 0.0, 2 * TWO_PI
        else:  # alternating: odd-numbered lines low, even-numbered high
            lo, hi = (0.0, TWO_PI) if i % 2 == 0 else (TWO_PI, 2 * TWO_PI)
        while True:
            x = rng.uniform(lo, hi)
            if i == 0 or np.abs(values[:i] - x).min() > COLLISION_TOL:
                break
        values[i] = x
    return values


_TOKEN_SPLIT = re.compile(r"[,\s]+")


class PrescribedTarget(str, Enum):
    SPECTRUM_VALUES = "spectrum"
    MEASURE_VALUES = "measure"


def parse_prescribed(text: str, d: int, target: PrescribedTarget):
    """Parse d numbers separated by spaces, commas or tabs.

    Returns a Spectrum or SpectralMeasure depending on ``target``;
    enforces distinctness for spectra and non-negativity plus unit sum
    (within 1e-10) for measures.
    """
    if d < 2:
        raise InvalidDimensionError(f"dimension must be >= 2, got {d}")
    tokens = [t for t in _TOKEN_SPLIT.split(text.strip()) if t]
    if len(tokens) != d:
        raise PrescribedInputError(
            f"expected {d} values, got {len(tokens)}"
        )
    try:
        values = np.array([float(t) for t in tokens])
    except ValueError as exc:
        raise PrescribedInputError(f"could not parse value: {exc}") from exc

    if PrescribedTarget(target) is PrescribedTarget.MEASURE_VALUES:
        return SpectralMeasure(values)
    return Spectrum(values, SpectrumKind.PRESCRIBED)


def conditioning_order(kappas) -> np.ndarray:
    """Greedy ordering of reduced eigenvalues by circular separation.

    Starting from the first point, repeatedly appends the point whose
    minimum distance to the already-chosen ones is largest (ties broken
    by original index).  Near-duplicates therefore sink to the end of
    the list, keeping the leading block well separated.
    """
    kappas = np.asarray(kappas, dtype=float)
    m = kappas.size
    if m <= 1:
        return np.arange(m)
    order = np.empty(m, dtype=int)
    order[0] = 0
    chosen = np.zeros(m, dtype=bool)
    chosen[0] = True
    min_dist = circular_distance(kappas, kappas[0])
    for j in range(1, m):
        masked = np.where(chosen, -np.inf, min_dist)
        pick = int(np.argmax(masked))
        order[j] = pick
        chosen[pick] = True
        min_dist = np.minimum(min_dist, circular_distance(kappas, kappas[pick]))
    return order


def reduce_spectrum(spectrum: Spectrum, T: float) -> ReducedSpectrum:
    """Wrap eigenvalues mod 2pi at time T, merge near-duplicates, reorder.

    Any pair of reduced points closer than 1e-6 on the circle merges
    (the later one is removed and recorded in the origin map); the
    survivors are then permuted by :func:`conditioning_order`.
    """
    if not np.isfinite(T):
        raise ValueError("evaluation time must be finite")
    full = spectrum.eigenvalues * T
    raw = np.mod(full, TWO_PI)
    raw[raw >= TWO_PI] -= TWO_PI  # guard against rounding at the seam
    return reduce_phases(raw, T, full)


def reduce_phases(raw: np.ndarray, T: float, full: np.ndarray | None = None) -> ReducedSpectrum:
    """Deduplicate and reorder an already-wrapped phase vector.

    ``full`` carries the unwrapped phases when the caller has them;
    a merged point keeps the survivor's unwrapped value.
    """
    if full is None:
        full = raw
    d = raw.size
    survivors: list[int] = []
    clean_index = np.empty(d, dtype=int)
    for i in range(d):
        merged = False
        for slot, s in enumerate(survivors):
            if circular_distance(raw[i], raw[s]) < DEDUP_TOL:
                clean_index[i] = slot
                merged = True
                break
        if not merged:
            clean_index[i] = len(survivors)
            survivors.append(i)

    clean = raw[survivors]
    perm = conditioning_order(clean)
    inverse_perm = np.argsort(perm)
    return ReducedSpectrum(
        kappas=clean[perm],
        phases=np.asarray(full, dtype=float)[survivors][perm],
        origin_map=inverse_perm[clean_index],
        permutation=perm,
        degenerate=len(survivors) < d,
        T=float(T),
    )


def spectral_width(reduced: ReducedSpectrum) -> float:
    """Largest circular gap between adjacent reduced eigenvalues."""
    return phase_width(reduced.kappas)


def phase_width(kappas: np.ndarray) -> float:
    kappas = np.asarray(kappas, dtype=float)
    if kappas.size == 0:
        raise InvalidDimensionError("width of an empty spectrum is undefined")
    if kappas.size == 1:
        return TWO_PI
    s = np.sort(kappas)
    gaps = np.diff(s)
    wrap = s[0] + TWO_PI - s[-1]
    return float(max(gaps.max(), wrap))


def is_non_narrow(reduced: ReducedSpectrum, L: int) -> bool:
    """Width test necessary for positive solutions of the evolution system.

    For order L the spectrum reduced at every multiple n*T (n = 1..L)
    must have width at most 2pi/(L+1); at L = 1 this is the exact
    half-circle criterion (necessary and sufficient).
    """
    if L < 0:
        raise ValueError("order must be non-negative")
    if L == 0:
        return True
    # boundary slack: width exactly at the bound qualifies, and the wrap
    # arithmetic perturbs such widths by a few ulp on grid-aligned times
    bound = TWO_PI / (L + 1) + 1.0e-9
    for n in range(1, L + 1):
        # reduced spectrum at time n*T equals n*kappa mod 2pi
        scaled = np.mod(reduced.kappas * n, TWO_PI)
        if phase_width(scaled) > bound:
            return False
    return True


def reduce_measure(measure: SpectralMeasure, reduced: ReducedSpectrum) -> ReducedMeasure:
    """Cumulate original weights onto the surviving reduced points."""
    w = measure.weights
    if w.size != reduced.original_dimension:
        raise InvalidDimensionError(
            f"measure has {w.size} weights for a spectrum of dimension "
            f"{reduced.original_dimension}"
        )
    out = np.zeros(reduced.actual_dimension)
    np.add.at(out, reduced.origin_map, w)
    return ReducedMeasure(out)


def variance(reduced: ReducedSpectrum, nu: ReducedMeasure) -> float:
    """Normalized spread of the reduced measure around its mean phase.

    Phases are taken in the display range [-pi, pi); the result is
    pi^-1 * sqrt(sum nu_n (kappa_n - mean)^2).
    """
    kappa = to_display_range(reduced.kappas)
    w = nu.weights
    mean = float(np.dot(w, kappa))
    return float(np.sqrt(np.dot(w, (kappa - mean) ** 2)) / np.pi)
