"""Symmetric eigendecomposition and minimum-norm least squares.

Both kernels sit on LAPACK (``numpy.linalg.eigh`` and ``scipy.linalg.qr``);
this module adds the conventions the decomposition relies on: eigenpairs
sorted by magnitude with a fixed sign, a scale-relative numerical-zero test,
and a complete orthogonal factorization for rank-deficient fits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import NumericError, ShapeError, SymmetryError

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EigResult:
    """Eigenpairs of a dense symmetric matrix.

    Attributes
    ----------
    eigenvalues : ndarray of shape (m,)
        Sorted by decreasing absolute value.
    eigenvectors : ndarray of shape (m, m)
        Orthonormal columns aligned with ``eigenvalues``. The entry of largest
        magnitude in each column is positive (lowest index wins ties).
    zero_tol : float
        Threshold under which an eigenvalue counts as numerically zero.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    zero_tol: float

    @property
    def nonzero(self) -> np.ndarray:
        return ~numerical_zero_mask(self)


@dataclass(frozen=True)
class LsqResult:
    """Minimum-norm least-squares solution of ``X @ l ≈ b``."""

    solution: np.ndarray
    residual_norm: float
    numerical_rank: int
    rank_tol: float


def _as_finite(a, name):
    a = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(a)):
        raise NumericError(f"{name} contains non-finite entries")
    return a


def default_zero_tol(eigenvalues) -> float:
    """``m * eps * max|λ|``, the singular-value style rank tolerance."""
    eigenvalues = np.asarray(eigenvalues)
    if eigenvalues.size == 0:
        return 0.0
    return eigenvalues.size * EPS * float(np.max(np.abs(eigenvalues)))


def sign_normalize(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so their largest-magnitude entry is positive."""
    vectors = np.array(vectors, dtype=float)
    if vectors.size == 0:
        return vectors
    lead = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[lead, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def sym_eig(A, zero_tol: float | None = None) -> EigResult:
    """Eigendecomposition of a real symmetric matrix.

    The matrix is symmetrized by averaging with its transpose before the
    LAPACK call, so round-off asymmetry is harmless. Asymmetry beyond
    ``1e-8`` relative is rejected.

    Parameters
    ----------
    A : array_like of shape (m, m)
    zero_tol : float, optional
        Absolute numerical-zero threshold stored on the result. Defaults to
        :func:`default_zero_tol` of the computed eigenvalues.
    """
    A = _as_finite(A, "matrix")
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    asym = float(np.max(np.abs(A - A.T))) if A.size else 0.0
    if asym > 1e-8 * scale:
        raise SymmetryError(f"matrix is not symmetric (max |A - A^T| = {asym:.3g})", asym)
    w, V = np.linalg.eigh(0.5 * (A + A.T))
    order = np.argsort(-np.abs(w), kind="stable")
    w, V = w[order], sign_normalize(V[:, order])
    tol = default_zero_tol(w) if zero_tol is None else float(zero_tol)
    return EigResult(w, V, tol)


def numerical_zero_mask(eig: EigResult, tol: float | None = None) -> np.ndarray:
    """Boolean mask of eigenvalues with ``|λ| <= tol`` (default ``eig.zero_tol``)."""
    tol = eig.zero_tol if tol is None else tol
    return np.abs(eig.eigenvalues) <= tol


def lstsq(X, b, rank_tol: float | None = None) -> LsqResult:
    """Minimum-norm least-squares solution via a complete orthogonal factorization.

    ``X P = Q R`` (Householder QR with column pivoting) reveals the numerical
    rank ``r`` as the number of diagonal entries of ``R`` with magnitude above
    ``rank_tol``; the leading ``r`` rows of ``R`` are then factored once more
    from the right, ``R[:r] = T' Z'``, so that the minimum-norm solution is
    ``P Z T'^{-1} Q[:, :r]' b``.

    Parameters
    ----------
    X : array_like of shape (rows, cols)
    b : array_like of shape (rows,)
    rank_tol : float, optional
        Absolute threshold on ``|R_kk|``. Defaults to
        ``max(rows, cols) * eps * |R_00|``; ``|R_00|`` is the largest column
        norm of ``X``.
    """
    X = _as_finite(X, "design matrix")
    b = _as_finite(b, "right-hand side")
    if X.ndim != 2 or b.ndim != 1 or X.shape[0] != b.shape[0]:
        raise ShapeError(f"incompatible shapes X{X.shape} and b{b.shape}")
    rows, cols = X.shape
    if cols == 0 or rows == 0 or not np.any(X):
        return LsqResult(np.zeros(cols), float(np.linalg.norm(b)), 0,
                         0.0 if rank_tol is None else float(rank_tol))

    Q, R, piv = scipy.linalg.qr(X, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if rank_tol is None:
        rank_tol = max(rows, cols) * EPS * float(diag[0])
    r = int(np.count_nonzero(diag > rank_tol))

    c = Q[:, :r].T @ b
    if r == cols:
        y = scipy.linalg.solve_triangular(R[:r, :r], c)
    else:
        Z, T = scipy.linalg.qr(R[:r, :].T, mode="economic")
        y = Z @ scipy.linalg.solve_triangular(T, c, trans="T")
    sol = np.empty(cols)
    sol[piv] = y
    res = float(np.linalg.norm(b - X @ sol))
    return LsqResult(sol, res, r, float(rank_tol))
