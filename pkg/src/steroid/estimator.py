"""scikit-learn style front-end for the symmetric tensor decomposition."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .decomposition import (
    HEAD_MODES,
    Decomposition,
    _expand,
    check_symmetric_input,
    decompose,
    orbit_design,
)
from .exceptions import ShapeError
from .linalg import lstsq
from .symtensor import SYM_TOL, orbit_map, orbit_values


def check_symmetric_tensor(X, sym_tol: float = SYM_TOL) -> np.ndarray:
    """Validate ``X`` as a finite, cubical, symmetric float tensor.

    Runs sklearn's ``check_array`` (any number of dimensions, finite values,
    float64) before the symmetry test.
    """
    X = check_array(X, ensure_2d=False, allow_nd=True, dtype=np.float64,
                    ensure_min_samples=1)
    return check_symmetric_input(X, sym_tol)


class SteroidDecomposition(TransformerMixin, BaseEstimator):
    """Decompose a symmetric tensor into symmetric unit-norm rank-1 terms.

    ``fit`` takes a single dense symmetric tensor of shape ``(n,) * d`` and
    learns ``X ≈ sum_k coef_[k] * components_[k]^{∘d}``. ``transform`` then
    expresses any tensor of the same shape in the learned pure-power basis
    (minimum-norm least squares), and ``inverse_transform`` maps coefficients
    back to a tensor.

    Parameters
    ----------
    tau : float, default=1e-10
        Relative residual at which tail iterations stop.
    max_tail_iters : int, default=10
        Maximum number of tail harvests.
    zero_tol : float or None, default=None
        Relative numerical-zero threshold for eigenvalues.
    rank_tol : float or None, default=None
        Absolute rank threshold of the least-squares fit.
    dedup_tol : float, default=1e-10
        Threshold for merging parallel pure powers.
    head : {"ls", "eigenproduct"}, default="ls"
        How the tail tensor is formed between passes.
    sym_tol : float, default=1e-12
        Relative tolerance of the input symmetry check.

    Attributes
    ----------
    coef_ : ndarray of shape (n_terms,)
    components_ : ndarray of shape (n_terms, n)
        Unit vectors of the rank-1 terms.
    residual_norm_ : float
        Frobenius norm of ``X - inverse_transform(coef_)``.
    n_iter_ : int
        Number of tail passes performed.
    converged_ : bool
    report_ : SteroidReport
    decomposition_ : Decomposition
    order_ : int
    n_features_in_ : int
        Tensor dimension ``n``.

    Examples
    --------
    >>> from steroid import SteroidDecomposition, new_symmetric
    >>> t = new_symmetric(3, 2, {(1, 1, 1): -1, (2, 2, 1): 1})
    >>> est = SteroidDecomposition().fit(t)
    >>> len(est.coef_)
    3
    """

    def __init__(self, tau=1e-10, max_tail_iters=10, zero_tol=None, rank_tol=None,
                 dedup_tol=1e-10, head="ls", sym_tol=SYM_TOL):
        self.tau = tau
        self.max_tail_iters = max_tail_iters
        self.zero_tol = zero_tol
        self.rank_tol = rank_tol
        self.dedup_tol = dedup_tol
        self.head = head
        self.sym_tol = sym_tol

    def _validate_params(self):
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau!r}")
        if int(self.max_tail_iters) < 0:
            raise ValueError("max_tail_iters must be non-negative")
        if self.head not in HEAD_MODES:
            raise ValueError(f"head must be one of {HEAD_MODES}, got {self.head!r}")

    def fit(self, X, y=None):
        """Decompose the symmetric tensor ``X``. ``y`` is ignored."""
        self._validate_params()
        X = check_symmetric_tensor(X, self.sym_tol)
        dec = decompose(
            X,
            tau=self.tau,
            max_tail_iters=int(self.max_tail_iters),
            zero_tol=self.zero_tol,
            rank_tol=self.rank_tol,
            dedup_tol=self.dedup_tol,
            head=self.head,
            sym_tol=self.sym_tol,
        )
        self.decomposition_ = dec
        self.coef_ = dec.coefficients
        self.components_ = dec.vectors
        self.residual_norm_ = dec.residual_norm
        self.n_iter_ = dec.iterations
        self.converged_ = dec.converged
        self.report_ = dec.report
        self.order_ = dec.order
        self.n_features_in_ = dec.dim
        return self

    def _check_shape(self, X):
        expected = (self.n_features_in_,) * self.order_
        if X.shape != expected:
            raise ShapeError(f"expected a tensor of shape {expected}, got {X.shape}")

    def transform(self, X):
        """Minimum-norm coefficients of ``X`` in the fitted pure-power basis."""
        check_is_fitted(self)
        X = check_symmetric_tensor(X, self.sym_tol)
        self._check_shape(X)
        om = orbit_map(self.n_features_in_, self.order_)
        w = np.sqrt(om.counts)
        design = w[:, None] * orbit_design(self.components_, self.order_)
        return lstsq(design, w * orbit_values(X)).solution

    def inverse_transform(self, coef):
        """Dense tensor ``sum_k coef[k] * components_[k]^{∘d}``."""
        check_is_fitted(self)
        coef = np.asarray(coef, dtype=float)
        if coef.shape != self.coef_.shape:
            raise ShapeError(f"expected {self.coef_.shape} coefficients, got {coef.shape}")
        return _expand(coef, self.components_, self.order_, self.n_features_in_)

    def reconstruct(self):
        """Reconstruction of the fitted tensor."""
        return self.inverse_transform(self.coef_)

    def score(self, X, y=None):
        """Negative relative residual of projecting ``X`` on the fitted basis."""
        X = check_symmetric_tensor(X, self.sym_tol)
        approx = self.inverse_transform(self.transform(X))
        return -float(np.linalg.norm(X - approx) / max(1.0, np.linalg.norm(X)))

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.two_d_array = False
        tags.requires_fit = True
        return tags


__all__ = ["SteroidDecomposition", "check_symmetric_tensor", "Decomposition"]
