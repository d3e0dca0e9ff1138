"""Exponential block construction, structured inversion, real reduction."""

import numpy as np
import pytest

from quanticipate.errors import (
    IllConditionedError,
    SingularSpectrumError,
    SymmetryViolationError,
)
from quanticipate.spectra import (
    Spectrum,
    SpectrumKind,
    generate_spectrum,
    reduce_spectrum,
)
from quanticipate.vandermonde import (
    MatrixRole,
    build_system,
    exponential_matrix,
    parker_invert,
    real_system,
    reduce_to_real,
)


def _separated_kappas(rng, m, min_gap=1e-2):
    """Random circle points with a guaranteed pairwise gap."""
    while True:
        kappas = np.sort(rng.uniform(0.0, 2 * np.pi, m))
        gaps = np.diff(np.concatenate([kappas, [kappas[0] + 2 * np.pi]]))
        if gaps.min() > min_gap:
            return rng.permutation(kappas)


class TestExponentialMatrix:
    def test_entries_and_row_lookup(self):
        kappas = np.array([0.3, 1.1, 2.9])
        mat = exponential_matrix(kappas, 1, MatrixRole.OMEGA)
        assert mat.entries.shape == (3, 3)
        np.testing.assert_allclose(mat.row(0), np.ones(3), atol=1e-15)
        np.testing.assert_allclose(mat.row(1), np.exp(-1j * kappas), atol=1e-15)
        np.testing.assert_allclose(mat.row(-1), np.exp(1j * kappas), atol=1e-15)

    def test_build_system_splits_blocks(self):
        spec = generate_spectrum(SpectrumKind.RANDOM, 7, seed=1)
        red = reduce_spectrum(spec, 1.3)
        omega, psi = build_system(red, 1)
        assert omega.entries.shape == (3, 3)
        assert psi.entries.shape == (3, red.actual_dimension - 3)

    def test_build_system_requires_minimum_dimension(self):
        spec = Spectrum(np.array([0.1, 0.2]))
        red = reduce_spectrum(spec, 1.0)
        with pytest.raises(SingularSpectrumError):
            build_system(red, 1)


class TestParkerInversion:
    def test_against_dense_solve_many_instances(self):
        # oracle: dense LU solve of the same block; absolute agreement
        # needs well-separated nodes (0.2 rad) because the comparison
        # itself inherits the conditioning of the dense factorization
        rng = np.random.default_rng(20260815)
        worst = 0.0
        for _ in range(1000):
            L = int(rng.integers(1, 6))
            m = 2 * L + 1
            kappas = _separated_kappas(rng, m, min_gap=0.2)
            omega = exponential_matrix(kappas, L, MatrixRole.OMEGA)
            inv = parker_invert(omega)
            e0 = np.zeros(m)
            e0[L] = 1.0
            x_dense = np.linalg.solve(omega.entries, e0)
            worst = max(worst, float(np.abs(inv[:, L] - x_dense).max()))
            rhs = rng.normal(size=m) + 1j * rng.normal(size=m)
            x_rand = np.linalg.solve(omega.entries, rhs)
            worst = max(worst, float(np.abs(inv @ rhs - x_rand).max()))
        assert worst < 1e-8

    def test_relative_accuracy_at_tight_gaps(self):
        # at 1e-2 separation the inverse entries grow large; the
        # structured inversion stays relatively accurate throughout
        rng = np.random.default_rng(99)
        for _ in range(200):
            L = int(rng.integers(1, 6))
            kappas = _separated_kappas(rng, 2 * L + 1, min_gap=1e-2)
            omega = exponential_matrix(kappas, L, MatrixRole.OMEGA)
            inv = parker_invert(omega)
            dense = np.linalg.inv(omega.entries)
            scale = float(np.abs(dense).max())
            assert float(np.abs(inv - dense).max()) / scale < 1e-7

    def test_identity_product(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            L = int(rng.integers(1, 5))
            m = 2 * L + 1
            kappas = _separated_kappas(rng, m)
            omega = exponential_matrix(kappas, L, MatrixRole.OMEGA)
            inv = parker_invert(omega)
            np.testing.assert_allclose(inv @ omega.entries, np.eye(m), atol=1e-9)

    def test_column_symmetry(self):
        # entry(n, -k) equals the conjugate of entry(n, k)
        rng = np.random.default_rng(11)
        for _ in range(50):
            L = int(rng.integers(1, 5))
            kappas = _separated_kappas(rng, 2 * L + 1)
            inv = parker_invert(exponential_matrix(kappas, L, MatrixRole.OMEGA))
            np.testing.assert_allclose(inv, np.conj(inv[:, ::-1]), atol=1e-10)

    def test_near_coincident_nodes_raise(self):
        kappas = np.array([0.5, 0.5 + 1e-10, 2.0])
        with pytest.raises(IllConditionedError):
            parker_invert(exponential_matrix(kappas, 1, MatrixRole.OMEGA))

    def test_close_but_valid_nodes_stay_accurate_relatively(self):
        # a 1e-3 gap amplifies conditioning; relative accuracy holds
        kappas = np.array([0.5, 0.5 + 1e-3, 2.0, 3.5, 5.0])
        omega = exponential_matrix(kappas, 2, MatrixRole.OMEGA)
        inv = parker_invert(omega)
        dense = np.linalg.inv(omega.entries)
        scale = np.abs(dense).max()
        assert np.abs(inv - dense).max() / scale < 1e-9


class TestRealReduction:
    def test_reduced_system_is_real_and_consistent(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            L = int(rng.integers(1, 4))
            m = 2 * L + 1
            d = m + int(rng.integers(0, 4))
            kappas = _separated_kappas(rng, d)
            spec = Spectrum(kappas)
            red = reduce_spectrum(spec, 1.0)
            system = real_system(red, L)
            assert system.n_slack == m
            assert system.n_structural == red.actual_dimension - m
            # any mu satisfying the real system satisfies the complex one
            if system.n_structural:
                struct = rng.uniform(0, 1, system.n_structural)
            else:
                struct = np.zeros(0)
            mu = np.concatenate([system.b - system.a_struct @ struct, struct])
            ks = np.arange(-L, L + 1)
            defect = np.exp(-1j * np.outer(ks, red.kappas)) @ mu
            defect[L] -= 1.0
            assert np.abs(defect).max() < 1e-8

    def test_square_case_b_solves_system(self):
        spec = generate_spectrum(SpectrumKind.H_ATOM, 3)
        red = reduce_spectrum(spec, 9 / 16)
        system = real_system(red, 1)
        assert system.n_structural == 0
        ks = np.arange(-1, 2)
        defect = np.exp(-1j * np.outer(ks, red.kappas)) @ system.b
        defect[1] -= 1.0
        assert np.abs(defect).max() < 1e-10

    def test_imaginary_residue_guard(self):
        # a deliberately asymmetric "inverse" trips the realness check
        rng = np.random.default_rng(5)
        kappas = _separated_kappas(rng, 5)
        omega = exponential_matrix(kappas[:3], 1, MatrixRole.OMEGA)
        psi = exponential_matrix(kappas[3:], 1, MatrixRole.PSI)
        bogus = np.linalg.inv(omega.entries) + 1e-3j
        with pytest.raises(SymmetryViolationError, match="imaginary"):
            reduce_to_real(bogus, psi, 1)
