"""Anticipation amplitudes and the derived look-ahead statistics.

Given a reduced spectrum, a measure on it, and a measurement location
delta, the amplitudes are alpha_k = sum_n nu_n e^{-i(k-delta)theta_n}
for k = -L..L, with theta_n the unwrapped phase lambda_n T.  For
integer frequencies the wrapped kappa_n would do, but k - delta is
fractional, so the 2pi multiples dropped by wrapping matter.  The
look-ahead A and total probability P are moments of p_k = |alpha_k|^2
over the forward half k = 0..L.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectra import ReducedMeasure, ReducedSpectrum

MEASURE_SUM_TOL = 1.0e-9


@dataclass(frozen=True)
class AnticipationResult:
    """Amplitudes alpha_k for k = -L..L plus derived scalars."""

    alphas: np.ndarray
    probs: np.ndarray
    lookahead: float
    total_prob: float
    delta: float

    @property
    def order(self) -> int:
        return (self.alphas.size - 1) // 2

    def prob(self, k: int) -> float:
        """Probability for frequency index k in -L..L."""
        return float(self.probs[k + self.order])


def amplitudes(
    reduced: ReducedSpectrum,
    nu: ReducedMeasure,
    delta: float,
    L: int,
) -> AnticipationResult:
    weights = nu.weights
    total = float(weights.sum())
    if abs(total - 1.0) > MEASURE_SUM_TOL:
        raise ValueError(f"measure sums to {total!r}, expected 1")
    ks = np.arange(-L, L + 1)
    phases = np.exp(-1j * np.outer(ks - delta, reduced.phases))
    alphas = phases @ weights
    probs = np.abs(alphas) ** 2
    forward = probs[L:]  # k = 0..L
    lookahead = float(np.dot(np.arange(L + 1) - delta, forward))
    total_prob = float(forward.sum())
    return AnticipationResult(alphas, probs, lookahead, total_prob, float(delta))


def lookahead_bin(A: float, L: int) -> int:
    """Unit-width histogram bin of the look-ahead over [0, L]."""
    if L < 1:
        return 0
    return int(np.floor(np.clip(A, 0.0, L - 1e-12)))
