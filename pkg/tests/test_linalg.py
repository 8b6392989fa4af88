import numpy as np
import pytest

from paraunit import (
    DimensionMismatch,
    NotHermitian,
    NotIsometric,
    NotSchurStable,
    SizeLimitExceeded,
    hermitian_eig,
    solve_stein,
    spectral_radius,
    unitary_completion,
)
from conftest import random_unitary


def stein_series(a, q, side, terms=200):
    """Truncated power-series solution, independent of the dense solver."""
    if side == "obs":
        a = a.conj().T
    total = np.zeros_like(q)
    power = np.eye(a.shape[0], dtype=complex)
    for _ in range(terms + 1):
        total = total + power @ q @ power.conj().T
        power = a @ power
    return total


class TestUnitaryCompletion:
    def test_standard_basis_column(self):
        v = np.array([[1.0], [0.0]], dtype=complex)
        w = unitary_completion(v)
        assert w.shape == (2, 1)
        assert abs(w[0, 0]) < 1e-14
        assert abs(abs(w[1, 0]) - 1.0) < 1e-14
        full = np.hstack([v, w])
        assert np.linalg.norm(full.conj().T @ full - np.eye(2)) < 1e-12

    def test_full_unitary_needs_nothing(self):
        w = unitary_completion(np.eye(4))
        assert w.shape == (4, 0)

    def test_empty_input_gives_identity(self):
        w = unitary_completion(np.zeros((3, 0)))
        assert np.array_equal(w, np.eye(3))

    def test_split_and_recomplete(self):
        rng = np.random.default_rng(7)
        for k in range(2, 11):
            r = int(rng.integers(1, k + 1))
            u = random_unitary(rng, k)
            v = u[:, :r]
            w = unitary_completion(v)
            full = np.hstack([v, w])
            assert np.linalg.norm(full.conj().T @ full - np.eye(k)) <= 1e-12
            assert np.linalg.norm(w.conj().T @ v) <= 1e-12

    def test_rejects_non_isometry(self):
        with pytest.raises(NotIsometric, match="residual"):
            unitary_completion(np.array([[0.9], [0.0]]))


class TestSolveStein:
    def test_scalar_closed_form(self):
        w = solve_stein(np.array([[0.5]]), np.array([[0.75]]), side="cont")
        assert abs(w[0, 0] - 1.0) < 1e-12

    def test_zero_dynamics(self):
        rng = np.random.default_rng(3)
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        q = g @ g.conj().T
        w = solve_stein(np.zeros((3, 3)), q, side="cont")
        assert np.linalg.norm(w - q) < 1e-12

    @pytest.mark.parametrize("side", ["cont", "obs"])
    def test_matches_series_oracle(self, side):
        rng = np.random.default_rng(11)
        for _ in range(20):
            n = int(rng.integers(1, 7))
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            a *= 0.85 / max(spectral_radius(a), 1e-9)
            g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            q = g @ g.conj().T
            w = solve_stein(a, q, side=side)
            assert np.linalg.norm(w - stein_series(a, q, side)) <= 1e-8
            if side == "cont":
                residual = w - a @ w @ a.conj().T - q
            else:
                residual = w - a.conj().T @ w @ a - q
            assert np.linalg.norm(residual) <= 1e-10 * (1 + np.linalg.norm(q))
            assert np.linalg.norm(w - w.conj().T) < 1e-12

    def test_rejects_unstable(self):
        with pytest.raises(NotSchurStable):
            solve_stein(np.array([[1.0]]), np.array([[1.0]]))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            solve_stein(np.array([[0.5, 0.1], [0.0, 0.4]]), np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_oversize(self):
        n = 65
        with pytest.raises(SizeLimitExceeded):
            solve_stein(np.zeros((n, n)), np.eye(n))

    def test_rejects_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            solve_stein(np.zeros((2, 2)), np.eye(3))


class TestHermitianEig:
    def test_identity(self):
        values, vectors = hermitian_eig(np.eye(3))
        assert np.allclose(values, [1.0, 1.0, 1.0])
        assert np.linalg.norm(vectors.conj().T @ vectors - np.eye(3)) < 1e-12

    def test_symmetric_two_by_two(self):
        values, _ = hermitian_eig(np.array([[2.0, 1.0], [1.0, 2.0]]))
        assert np.allclose(values, [1.0, 3.0])

    def test_construct_then_recover(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = int(rng.integers(1, 8))
            u = random_unitary(rng, n)
            lam = np.sort(rng.normal(size=n))
            m = u @ np.diag(lam) @ u.conj().T
            values, vectors = hermitian_eig(m)
            assert np.max(np.abs(values - lam)) <= 1e-9
            assert abs(np.trace(m).real - values.sum()) <= 1e-9 * max(1, abs(values).max())
            rebuilt = vectors @ np.diag(values) @ vectors.conj().T
            assert np.linalg.norm(rebuilt - m) <= 1e-8
            for i in range(n):
                residual = m @ vectors[:, i] - values[i] * vectors[:, i]
                assert np.linalg.norm(residual) <= 1e-9 * max(1.0, np.linalg.norm(m))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestSpectralRadius:
    def test_diagonal(self):
        assert abs(spectral_radius(np.diag([0.5, -0.2])) - 0.5) < 1e-12

    def test_nilpotent(self):
        assert spectral_radius(np.array([[0.0, 1.0], [0.0, 0.0]])) < 1e-9

    def test_companion_matrix(self):
        # z^2 - 1.5 z + 0.56 has roots 0.7 and 0.8
        companion = np.array([[1.5, -0.56], [1.0, 0.0]])
        assert abs(spectral_radius(companion) - 0.8) <= 1e-9 * 0.8

    def test_rejects_empty_and_oversize(self):
        with pytest.raises(DimensionMismatch):
            spectral_radius(np.zeros((0, 0)))
        with pytest.raises(SizeLimitExceeded):
            spectral_radius(np.zeros((65, 65)))
