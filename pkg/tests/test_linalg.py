import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steroid.exceptions import NumericError, ShapeError, SymmetryError
from steroid.linalg import EPS, EigResult, lstsq, numerical_zero_mask, sym_eig
from steroid.oracle import jacobi_eigenvalues

B = np.array([[24, 18, 18, 12], [18, 12, 12, 6], [18, 12, 12, 6], [12, 6, 6, 0]], dtype=float)


def random_sym(m, rng):
    a = rng.standard_normal((m, m))
    return a + a.T


class TestSymEig:
    def test_example1_spectrum(self):
        eig = sym_eig(B)
        np.testing.assert_allclose(eig.eigenvalues[:2], [53.3939, -5.3939], atol=1e-3)
        assert numerical_zero_mask(eig).tolist() == [False, False, True, True]

    def test_identity(self):
        eig = sym_eig(np.eye(5))
        np.testing.assert_array_equal(eig.eigenvalues, np.ones(5))
        np.testing.assert_allclose(eig.eigenvectors.T @ eig.eigenvectors, np.eye(5), atol=1e-15)

    def test_reconstruction(self, rng):
        A = random_sym(6, rng)
        eig = sym_eig(A)
        V, w = eig.eigenvectors, eig.eigenvalues
        assert np.abs(V @ np.diag(w) @ V.T - A).max() <= 1e-10 * np.abs(A).max()

    def test_sorted_by_magnitude_and_sign_convention(self, rng):
        eig = sym_eig(random_sym(8, rng))
        mags = np.abs(eig.eigenvalues)
        assert np.all(np.diff(mags) <= 0)
        lead = np.argmax(np.abs(eig.eigenvectors), axis=0)
        assert np.all(eig.eigenvectors[lead, np.arange(8)] > 0)

    @pytest.mark.parametrize("seed", range(10))
    def test_invariants(self, seed):
        rng = np.random.default_rng(seed)
        m = int(rng.integers(2, 12))
        A = random_sym(m, rng)
        eig = sym_eig(A)
        V, w = eig.eigenvectors, eig.eigenvalues
        np.testing.assert_allclose(np.linalg.norm(V, axis=0), 1.0, atol=1e-12)
        assert np.abs(V.T @ V - np.eye(m)).max() <= 1e-10
        assert w.sum() == pytest.approx(np.trace(A), rel=1e-10, abs=1e-10)
        # A v = λ v with residual bounded by c * m * eps * max(1, |λ_max|), c = 10
        resid = np.abs(A @ V - V * w).max()
        assert resid <= 10 * m * EPS * max(1.0, np.abs(w).max())

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_jacobi_oracle(self, seed):
        A = random_sym(4, np.random.default_rng(100 + seed))
        np.testing.assert_allclose(np.sort(sym_eig(A).eigenvalues), jacobi_eigenvalues(A), atol=1e-8)

    def test_deterministic(self, rng):
        A = random_sym(7, rng)
        e1, e2 = sym_eig(A), sym_eig(A.copy())
        assert e1.eigenvalues.tobytes() == e2.eigenvalues.tobytes()
        assert e1.eigenvectors.tobytes() == e2.eigenvectors.tobytes()

    def test_round_off_asymmetry_tolerated(self, rng):
        A = random_sym(5, rng)
        A[0, 1] += 1e-13
        sym_eig(A)

    def test_asymmetric_rejected(self):
        with pytest.raises(SymmetryError):
            sym_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_non_finite(self):
        with pytest.raises(NumericError):
            sym_eig(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    def test_non_square(self):
        with pytest.raises(ShapeError):
            sym_eig(np.zeros((2, 3)))


class TestZeroMask:
    def test_all_zero(self):
        assert numerical_zero_mask(sym_eig(np.zeros((3, 3)))).all()

    def test_tiny_diagonal(self):
        # default tol = 2 * eps * 1 = 4.4e-16 > 1e-20
        eig = sym_eig(np.diag([1.0, 1e-20]))
        assert eig.zero_tol == pytest.approx(2 * EPS)
        assert numerical_zero_mask(eig).tolist() == [False, True]

    def test_override(self):
        eig = EigResult(np.array([3.0, 1e-3]), np.eye(2), 0.0)
        assert numerical_zero_mask(eig).tolist() == [False, False]
        assert numerical_zero_mask(eig, tol=1e-2).tolist() == [False, True]


class TestLstsq:
    def test_identity(self, rng):
        b = rng.standard_normal(4)
        res = lstsq(np.eye(4), b)
        np.testing.assert_allclose(res.solution, b, rtol=1e-15)
        assert res.residual_norm == pytest.approx(0.0, abs=1e-15)
        assert res.numerical_rank == 4

    def test_duplicate_columns_split_evenly(self):
        x = np.array([1.0, 2.0, 3.0])
        X = np.column_stack([x, x])
        res = lstsq(X, 4 * x)
        np.testing.assert_allclose(res.solution, [2.0, 2.0], rtol=1e-12)
        assert res.numerical_rank == 1

    def test_matches_normal_equations(self, rng):
        X = rng.standard_normal((30, 6))
        b = rng.standard_normal(30)
        res = lstsq(X, b)
        ref = np.linalg.solve(X.T @ X, X.T @ b)
        np.testing.assert_allclose(res.solution, ref, rtol=1e-8)
        assert res.residual_norm == pytest.approx(np.linalg.norm(b - X @ res.solution), rel=1e-10)

    @pytest.mark.parametrize("shape,rank", [((10, 6), 3), ((5, 12), 4), ((8, 8), 5)])
    def test_minimum_norm_matches_pseudoinverse(self, rng, shape, rank):
        X = rng.standard_normal((shape[0], rank)) @ rng.standard_normal((rank, shape[1]))
        b = rng.standard_normal(shape[0])
        res = lstsq(X, b)
        assert res.numerical_rank == rank
        np.testing.assert_allclose(res.solution, np.linalg.pinv(X) @ b, rtol=1e-8, atol=1e-10)
        assert res.numerical_rank <= min(shape)

    def test_zero_columns(self):
        res = lstsq(np.zeros((3, 0)), np.array([1.0, 2.0, 2.0]))
        assert res.solution.shape == (0,)
        assert res.residual_norm == 3.0
        assert res.numerical_rank == 0

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            lstsq(np.eye(3), np.ones(4))

    def test_non_finite(self):
        with pytest.raises(NumericError):
            lstsq(np.eye(2), np.array([np.inf, 0.0]))

    def test_deterministic(self, rng):
        X = rng.standard_normal((20, 30))
        b = rng.standard_normal(20)
        assert lstsq(X, b).solution.tobytes() == lstsq(X, b).solution.tobytes()

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 8), st.integers(1, 8))
    def test_residual_is_recomputable(self, seed, rows, cols):
        rng = np.random.default_rng(seed)
        X = rng.standard_normal((rows, cols))
        b = rng.standard_normal(rows)
        res = lstsq(X, b)
        direct = np.linalg.norm(b - X @ res.solution)
        assert res.residual_norm == pytest.approx(direct, rel=1e-10, abs=1e-14)
        assert res.numerical_rank <= min(rows, cols)
