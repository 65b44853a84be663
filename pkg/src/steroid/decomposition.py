"""Symmetric tensor decomposition by recursive eigendecomposition (STEROID).

A symmetric ``d``-way tensor ``A`` of dimension ``n`` is written as

    A = sum_k coef_k * v_k ∘ v_k ∘ ... ∘ v_k,    ||v_k|| = 1.

Candidate vectors ("pure powers") are harvested by reshaping the tensor into a
square symmetric matrix, eigendecomposing it, and recursively reshaping and
eigendecomposing every eigenvector whose eigenvalue is not numerically zero,
until eigenvectors have length ``n``. The coefficients then follow from a
minimum-norm least-squares fit. If the fit leaves a residual, the same harvest
is applied to the residual (tail) tensor and the fit is repeated with the
enlarged set. Tensors whose order is not a power of two are embedded into one
that is before harvesting; the fit is always done at the original order.

The least-squares system is solved on orbit-compressed rows: every distinct
entry of a symmetric tensor appears once, weighted by the square root of its
multiplicity. The objective, and therefore the minimum-norm solution, is the
same as for the full ``n**d``-row system.
"""

from __future__ import annotations

import logging
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .exceptions import NumericError, OrderError, ShapeError, SteroidError, SymmetryError
from .linalg import EPS, lstsq, sym_eig
from .symtensor import (
    SYM_TOL,
    embed,
    embedded_order,
    from_orbit_values,
    frobenius_norm,
    kron_power,
    orbit_map,
    orbit_values,
    reshape_square,
    reshape_tensor_to_matrix,
    symmetry_violation,
)

logger = logging.getLogger(__name__)

HEAD_MODES = ("ls", "eigenproduct")


def r_max(order: int, dim: int) -> int:
    """Number of distinct degree-``order`` monomials in ``dim`` variables.

    This bounds the rank of any matrix whose columns are pure powers
    ``v^{⊗order}`` with ``v`` of length ``dim``.
    """
    if order < 1 or dim < 1:
        raise ValueError(f"order and dim must be positive, got {order}, {dim}")
    value = math.comb(order + dim - 1, dim - 1)
    if value > sys.maxsize:
        raise OverflowError(f"r_max({order}, {dim}) exceeds the integer range")
    return value


@dataclass
class PurePowerSet:
    """Harvested leaf eigenvectors.

    Attributes
    ----------
    vectors : ndarray of shape (count, n)
        Unit vectors, one per row, pairwise non-parallel.
    provenance : list of tuple
        For each vector, the ``(level, eigenvalue)`` pairs of the branch that
        produced it, outermost level first.
    head_weights : ndarray of shape (count,)
        Coefficient of each vector in the eigenvalue-product head
        (``λ_1 * λ_2**2 * λ_3**4 * ...`` along the branch, summed over merged
        duplicates).
    """

    vectors: np.ndarray
    provenance: list = field(default_factory=list)
    head_weights: np.ndarray | None = None

    def __len__(self):
        return len(self.vectors)


@dataclass(frozen=True)
class IterationRecord:
    harvested: int
    columns: int
    rank: int
    residual: float
    time_s: float


@dataclass
class SteroidReport:
    """Per-pass diagnostics. Pass 0 is the initial harvest, later ones tail passes."""

    r_max: int
    embedded_order: int
    records: list = field(default_factory=list)

    def rows(self) -> list[str]:
        return [
            f"iter={k} cols={r.columns} rank={r.rank} "
            f"residual={r.residual:.6e} time_s={r.time_s:.6f}"
            for k, r in enumerate(self.records)
        ]


@dataclass
class Decomposition:
    """``A ≈ sum_k coefficients[k] * vectors[k]^{∘order}``."""

    order: int
    dim: int
    coefficients: np.ndarray
    vectors: np.ndarray
    residual_norm: float
    iterations: int = 0
    converged: bool = True
    report: SteroidReport | None = None

    @property
    def terms(self) -> list[tuple[float, np.ndarray]]:
        return [(float(c), v) for c, v in zip(self.coefficients, self.vectors)]

    @property
    def rank(self) -> int:
        return len(self.coefficients)


def _is_power_of_two(k: int) -> bool:
    return k >= 1 and k & (k - 1) == 0


def harvest_pure_powers(
    t,
    zero_tol: float | None = None,
    dedup_tol: float = 1e-10,
) -> PurePowerSet:
    """Collect the leaf eigenvectors of the recursive eigendecomposition.

    Parameters
    ----------
    t : ndarray
        Symmetric tensor whose order is a power of two, at least 2.
    zero_tol : float, optional
        Relative numerical-zero threshold: an eigenvalue is dropped when
        ``|λ| <= zero_tol * max|λ|`` of its matrix. By default each matrix of
        size ``m`` uses ``m * eps``. Applied at every level of the recursion,
        and never below the rounding error inherited from the parent
        eigenvector (about ``m_parent * eps * max|λ_parent| / |λ|``).
    dedup_tol : float
        Vectors ``u, w`` with ``|<u, w>| >= 1 - dedup_tol`` are merged.
    """
    t = np.asarray(t, dtype=float)
    d, n = t.ndim, t.shape[0]
    if d < 2 or not _is_power_of_two(d):
        raise OrderError(f"harvest needs an order that is a power of two >= 2, got {d}")

    leaves, chains, weights = [], [], []
    # depth-first over eigenpairs sorted by |λ|, which keeps leaf order deterministic;
    # `noise` bounds the rounding error carried by a reshaped eigenvector
    stack = [(reshape_tensor_to_matrix(t), 1, (), 1.0, 0.0)]
    while stack:
        M, level, chain, weight, noise = stack.pop()
        try:
            eig = sym_eig(M)
        except SteroidError as exc:
            path = " -> ".join(f"level {lv} λ={lam:.6g}" for lv, lam in chain) or "top level"
            raise type(exc)(f"{exc} (at {path})") from exc
        lams = np.abs(eig.eigenvalues)
        scale = float(lams[0]) if lams.size else 0.0
        if zero_tol is not None:
            keep = lams > max(zero_tol * scale, noise)
        else:
            keep = lams > max(eig.zero_tol, noise)
        children = []
        for lam, vec in zip(eig.eigenvalues[keep], eig.eigenvectors.T[keep]):
            branch = chain + ((level, float(lam)),)
            w = weight * lam ** (2 ** (level - 1))
            if vec.shape[0] == n:
                leaves.append(vec)
                chains.append(branch)
                weights.append(w)
            else:
                child_noise = noise + M.shape[0] * EPS * scale / abs(lam)
                children.append((reshape_square(vec), level + 1, branch, w, child_noise))
        stack.extend(reversed(children))

    if not leaves:
        return PurePowerSet(np.zeros((0, n)), [], np.zeros(0))
    vectors = np.array(leaves)
    kept = dedup_indices(vectors, dedup_tol=dedup_tol)
    owner = _merge_targets(vectors, kept, dedup_tol)
    head = np.zeros(len(kept))
    np.add.at(head, owner, weights)
    return PurePowerSet(vectors[kept], [chains[i] for i in kept], head)


def dedup_indices(vectors, existing=None, dedup_tol: float = 1e-10) -> list[int]:
    """Indices of rows of ``vectors`` kept after greedy parallel-vector removal.

    A row is dropped when it is parallel (up to sign) to an earlier kept row
    or to any row of ``existing``.
    """
    vectors = np.asarray(vectors, dtype=float)
    if len(vectors) == 0:
        return []
    blocked = np.zeros(len(vectors), dtype=bool)
    if existing is not None and len(existing):
        blocked |= np.any(np.abs(vectors @ np.asarray(existing).T) >= 1 - dedup_tol, axis=1)
    gram = np.abs(vectors @ vectors.T) >= 1 - dedup_tol
    kept = []
    for i in range(len(vectors)):
        if blocked[i]:
            continue
        kept.append(i)
        blocked |= gram[i]
    return kept


def _merge_targets(vectors, kept, dedup_tol):
    # which kept vector every raw leaf was merged into
    sims = np.abs(vectors @ vectors[kept].T)
    return np.argmax(sims >= 1 - dedup_tol, axis=1)


def build_x(vectors, order: int) -> np.ndarray:
    """Matrix whose ``j``-th column is ``vectors[j]^{⊗order}``.

    Accepts an array of shape ``(count, n)`` or a :class:`PurePowerSet`.
    """
    if isinstance(vectors, PurePowerSet):
        vectors = vectors.vectors
    vectors = np.asarray(vectors, dtype=float)
    if vectors.ndim != 2:
        raise ShapeError(f"expected a (count, n) array, got shape {vectors.shape}")
    n = vectors.shape[1]
    if len(vectors) == 0:
        return np.zeros((n**order, 0))
    return np.column_stack([kron_power(v, order) for v in vectors])


def orbit_design(vectors, order: int) -> np.ndarray:
    """Pure powers evaluated at orbit representatives, shape ``(n_orbits, count)``."""
    vectors = np.asarray(vectors, dtype=float)
    n = vectors.shape[1]
    reps = orbit_map(n, order).reps
    if len(vectors) == 0:
        return np.zeros((len(reps), 0))
    return np.prod(vectors.T[reps], axis=1)


def reconstruct(dec: Decomposition) -> np.ndarray:
    """Dense tensor ``sum_k coef_k v_k^{∘d}`` of a decomposition."""
    return _expand(dec.coefficients, dec.vectors, dec.order, dec.dim)


def _expand(coefficients, vectors, order, dim):
    vectors = np.asarray(vectors, dtype=float).reshape(-1, dim)
    vals = orbit_design(vectors, order) @ np.asarray(coefficients, dtype=float)
    return from_orbit_values(vals, dim, order)


def check_symmetric_input(t, sym_tol: float = SYM_TOL) -> np.ndarray:
    """Validate a dense symmetric tensor, raising :class:`SymmetryError` with the worst pair."""
    t = np.asarray(t, dtype=float)
    if t.ndim == 0 or any(s != t.shape[0] for s in t.shape):
        raise ShapeError(f"tensor must be cubical, got shape {t.shape}")
    if t.shape[0] == 0:
        raise ShapeError("tensor dimension must be positive")
    if not np.all(np.isfinite(t)):
        raise NumericError("tensor contains non-finite entries")
    violation, pair = symmetry_violation(t)
    scale = max(1.0, float(np.max(np.abs(t))))
    if violation > sym_tol * scale:
        raise SymmetryError(
            f"tensor is not symmetric: entries {pair[0]} and {pair[1]} differ by {violation:.3g}",
            violation,
            pair,
        )
    return t


def _harvest_any_order(t, zero_tol, dedup_tol):
    if t.ndim == 1:
        norm = np.linalg.norm(t)
        vecs = (t / norm)[None, :] if norm > 0 else np.zeros((0, t.shape[0]))
        return PurePowerSet(vecs, [((1, float(norm)),)] * len(vecs), np.full(len(vecs), norm))
    return harvest_pure_powers(embed(t), zero_tol=zero_tol, dedup_tol=dedup_tol)


def decompose(
    t,
    tau: float = 1e-10,
    max_tail_iters: int = 10,
    zero_tol: float | None = None,
    rank_tol: float | None = None,
    dedup_tol: float = 1e-10,
    head: str = "ls",
    sym_tol: float = SYM_TOL,
    prune_tol: float = 1e-12,
) -> Decomposition:
    """Decompose a symmetric tensor into symmetric unit-norm rank-1 terms.

    Parameters
    ----------
    t : array_like
        Symmetric cubical tensor of any order.
    tau : float
        Stop once the residual is at most ``tau * max(1, ||t||_F)``.
    max_tail_iters : int
        Maximum number of harvests from the tail tensor.
    zero_tol : float, optional
        Relative eigenvalue threshold, see :func:`harvest_pure_powers`.
    rank_tol : float, optional
        Absolute rank threshold for the least-squares fit, see
        :func:`steroid.linalg.lstsq`.
    dedup_tol : float
        Parallel-vector merge threshold.
    head : {"ls", "eigenproduct"}
        Tensor subtracted from the current target to form the next tail.
        ``"ls"`` uses the least-squares reconstruction (the tail is then the
        current residual); ``"eigenproduct"`` uses the sum of pure powers
        weighted by eigenvalue products from the harvest of that target.
    sym_tol : float
        Relative tolerance of the input symmetry check.
    prune_tol : float
        Terms with ``|coef| <= prune_tol * max|coef|`` are dropped.

    Returns
    -------
    Decomposition
        ``converged`` is False when the loop stopped above ``tau``; this is
        not an error.
    """
    if head not in HEAD_MODES:
        raise ValueError(f"head must be one of {HEAD_MODES}, got {head!r}")
    t = check_symmetric_input(t, sym_tol)
    d, n = t.ndim, t.shape[0]
    om = orbit_map(n, d)
    weights = np.sqrt(om.counts)
    b = weights * orbit_values(t)
    target_norm = frobenius_norm(t)
    threshold = tau * max(1.0, target_norm)
    report = SteroidReport(r_max(d, n), embedded_order(d))
    top = report.r_max

    vectors = np.zeros((0, n))
    design = np.zeros((len(om.reps), 0))
    source = t
    coef = np.zeros(0)
    residual = target_norm
    converged = False
    tails = 0
    while True:
        start = time.perf_counter()
        pp = _harvest_any_order(source, zero_tol, dedup_tol)
        if tails:
            kept = dedup_indices(pp.vectors, vectors, dedup_tol)
            new_vectors = pp.vectors[kept]
            head_w = pp.head_weights[kept]
        else:
            new_vectors, head_w = pp.vectors, pp.head_weights
        if tails and len(new_vectors) == 0:
            logger.info("tail harvest added no new pure powers; stopping")
            break
        new_design = orbit_design(new_vectors, d)
        vectors = np.vstack([vectors, new_vectors])
        design = np.hstack([design, new_design])
        fit = lstsq(weights[:, None] * design, b, rank_tol=rank_tol)
        coef = fit.solution
        ls_head = from_orbit_values(design @ coef, n, d)
        residual = frobenius_norm(t - ls_head)
        report.records.append(
            IterationRecord(
                len(new_vectors), design.shape[1], fit.numerical_rank,
                residual, time.perf_counter() - start,
            )
        )
        logger.debug(report.rows()[-1])
        if residual <= threshold:
            converged = True
            break
        if tails >= max_tail_iters or fit.numerical_rank >= top:
            break
        tails += 1
        if head == "ls":
            source = t - ls_head
        else:
            # eigenvalue-product head of the current target, read at the original order
            e = embedded_order(d)
            pad = new_vectors[:, 0] ** (e - d) if d > 1 else 1.0
            source = source - from_orbit_values(new_design @ (head_w * pad), n, d)

    return _finalize(t, d, n, coef, vectors, tails, converged, report, prune_tol, threshold)


def _finalize(t, d, n, coef, vectors, tails, converged, report, prune_tol, threshold):
    if len(coef):
        big = float(np.max(np.abs(coef)))
        keep = (np.abs(coef) > prune_tol * big) & (coef != 0)
    else:
        keep = np.zeros(0, dtype=bool)
    coef, vectors = coef[keep], vectors[keep]
    residual = frobenius_norm(t - _expand(coef, vectors, d, n))
    return Decomposition(
        order=d,
        dim=n,
        coefficients=coef,
        vectors=vectors,
        residual_norm=residual,
        iterations=tails,
        converged=converged and residual <= threshold,
        report=report,
    )
