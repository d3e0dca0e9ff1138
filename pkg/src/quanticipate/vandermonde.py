"""Exponential system matrices and their structured inversion.

The evolution equations couple the measure to complex exponentials
e^{-ik*kappa_n} over k = -L..L.  The square block over the leading
2L+1 reduced points is inverted through its Vandermonde factorization
(nodes on the unit circle), which costs O(L^2) for the whole inverse
and preserves the row/column symmetry that makes the reduced system
purely real.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import IllConditionedError, SingularSpectrumError, SymmetryViolationError
from .spectra import ReducedSpectrum, circular_distance

# Nodes closer than this on the circle make the inversion unreliable.
NODE_SEPARATION_TOL = 1.0e-9
# Imaginary residue allowed when casting the reduced system to reals.
IMAG_RESIDUE_TOL = 1.0e-8


class MatrixRole(str, Enum):
    OMEGA = "omega"  # square block, leading 2L+1 points
    PSI = "psi"      # rectangular block, remaining points


@dataclass(frozen=True)
class ExponentialMatrix:
    """Matrix of e^{-i k kappa_n}, rows k = -L..L, columns by point."""

    entries: np.ndarray
    kappas: np.ndarray
    order: int
    role: MatrixRole

    def row(self, k: int) -> np.ndarray:
        """Row for frequency index k in -L..L."""
        return self.entries[k + self.order]


@dataclass(frozen=True)
class ReducedSystem:
    """Real canonical form (I|A) mu = b of the evolution equations.

    The identity block acts on the leading 2L+1 (slack) components of
    mu, ``a_struct`` on the remaining structural ones; mu is ordered by
    the conditioning permutation of the reduced spectrum.
    """

    a_struct: np.ndarray
    b: np.ndarray

    @property
    def n_slack(self) -> int:
        return int(self.b.size)

    @property
    def n_structural(self) -> int:
        return int(self.a_struct.shape[1])

    @property
    def dimension(self) -> int:
        return self.n_slack + self.n_structural


def exponential_matrix(kappas: np.ndarray, L: int, role: MatrixRole) -> ExponentialMatrix:
    ks = np.arange(-L, L + 1)
    entries = np.exp(-1j * np.outer(ks, kappas))
    return ExponentialMatrix(entries, np.asarray(kappas, dtype=float), L, role)


def build_system(reduced: ReducedSpectrum, L: int) -> tuple[ExponentialMatrix, ExponentialMatrix]:
    """Split the reduced spectrum into the square and rectangular blocks."""
    m = 2 * L + 1
    if reduced.actual_dimension < m:
        raise SingularSpectrumError(
            f"reduced spectrum has {reduced.actual_dimension} points, "
            f"need at least {m} for order {L}"
        )
    omega = exponential_matrix(reduced.kappas[:m], L, MatrixRole.OMEGA)
    psi = exponential_matrix(reduced.kappas[m:], L, MatrixRole.PSI)
    return omega, psi


def parker_invert(omega: ExponentialMatrix) -> np.ndarray:
    """Invert the square exponential block via its Vandermonde form.

    With nodes x_n = e^{-i kappa_n} the transposed block row-scaled by
    x_n^L is the Vandermonde matrix, whose inverse columns are the
    Lagrange basis coefficients: master polynomial, one synthetic
    division per node, then the scaling folded back.  The result is
    symmetrized across mirrored frequency columns, which the exact
    inverse satisfies identically.
    """
    L = omega.order
    m = 2 * L + 1
    kappas = omega.kappas
    if kappas.size != m:
        raise ValueError("parker_invert expects the square block")
    if m > 1:
        pair = circular_distance(kappas[:, None], kappas[None, :])
        np.fill_diagonal(pair, np.inf)
        if pair.min() < NODE_SEPARATION_TOL:
            raise IllConditionedError(
                f"node separation {pair.min():.3e} below {NODE_SEPARATION_TOL:g}"
            )

    nodes = np.exp(-1j * kappas)
    # master polynomial prod(x - x_n), ascending coefficients
    master = np.array([1.0 + 0j])
    for x in nodes:
        master = np.concatenate(([0.0 + 0j], master))
        master[:-1] -= x * master[1:]

    inv = np.empty((m, m), dtype=complex)
    for n in range(m):
        x = nodes[n]
        # synthetic division: numerator poly of the n-th Lagrange basis
        num = np.empty(m, dtype=complex)
        num[m - 1] = master[m]
        for j in range(m - 2, -1, -1):
            num[j] = master[j + 1] + x * num[j + 1]
        denom = np.dot(num, x ** np.arange(m))
        inv[n] = (x**L / denom) * num

    # exact inverse is column-symmetric: entry(n,-k) = conj(entry(n,k))
    return 0.5 * (inv + np.conj(inv[:, ::-1]))


def reduce_to_real(omega_inv: np.ndarray, psi: ExponentialMatrix, L: int) -> ReducedSystem:
    """Multiply through by the inverse block and drop the imaginary parts.

    The right-hand side is the unit vector at k = 0, so b is the centre
    column of the inverse; the structural block is inverse times the
    rectangular matrix.  Both are real up to rounding because the
    blocks are row-symmetric; residues above 1e-8 raise.
    """
    b_complex = omega_inv[:, L]
    a_complex = omega_inv @ psi.entries if psi.entries.shape[1] else np.zeros((2 * L + 1, 0))
    worst = max(
        float(np.abs(b_complex.imag).max()),
        float(np.abs(a_complex.imag).max()) if a_complex.size else 0.0,
    )
    if worst > IMAG_RESIDUE_TOL:
        raise SymmetryViolationError(
            f"imaginary residue {worst:.3e} exceeds {IMAG_RESIDUE_TOL:g}"
        )
    return ReducedSystem(a_struct=np.real(a_complex), b=np.real(b_complex))


def real_system(reduced: ReducedSpectrum, L: int) -> ReducedSystem:
    """Reduced spectrum straight to the real canonical system."""
    omega, psi = build_system(reduced, L)
    return reduce_to_real(parker_invert(omega), psi, L)
