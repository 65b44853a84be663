"""Dense symmetric tensors: construction, symmetry checks, reshaping, embedding.

Tensors are plain :class:`numpy.ndarray` objects of shape ``(n,) * d``. Every
flattening in this package uses the first-index-fastest linearization
(Fortran order): the multi-index ``(i_1, ..., i_d)`` (0-based) maps to the
linear position ``i_1 + n*i_2 + ... + n**(d-1)*i_d``. Under this convention
``vectorize(rank1(1, a, d)) == kron_power(a, d)`` and the square reshape of a
``2k``-way tensor groups the first ``k`` indices into rows.

For the small example in the decomposition literature the printed ``4 x 4``
reshape is symmetric, so it reads the same under C and Fortran ordering.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .exceptions import ConstructionError, OrderError, ShapeError

SYM_TOL = 1e-12


class OrbitMap(NamedTuple):
    """Permutation orbits of the multi-indices of a cubical ``d``-way array.

    Attributes
    ----------
    reps : ndarray of shape (n_orbits, d)
        One 0-based representative per orbit, sorted non-increasingly.
        Orbits are ordered lexicographically by representative.
    inverse : ndarray of shape (n**d,)
        Orbit id of every Fortran-linear position.
    counts : ndarray of shape (n_orbits,)
        Number of positions in each orbit.
    """

    reps: np.ndarray
    inverse: np.ndarray
    counts: np.ndarray


@lru_cache(maxsize=32)
def orbit_map(dim: int, order: int) -> OrbitMap:
    """Group the ``dim**order`` positions into permutation orbits (cached)."""
    if dim < 1 or order < 1:
        raise ShapeError(f"dim and order must be positive, got {dim}, {order}")
    idx = np.indices((dim,) * order).reshape(order, -1, order="F").T
    idx = -np.sort(-idx, axis=1)
    reps, inverse, counts = np.unique(
        idx, axis=0, return_inverse=True, return_counts=True
    )
    inverse = inverse.reshape(-1)
    for a in (reps, inverse, counts):
        a.setflags(write=False)
    return OrbitMap(reps, inverse, counts)


def orbit_of(index: Iterable[int], dim: int) -> int:
    """Orbit id of a 0-based multi-index."""
    index = tuple(index)
    pos = int(np.ravel_multi_index(index, (dim,) * len(index), order="F"))
    return int(orbit_map(dim, len(index)).inverse[pos])


def from_orbit_values(values, dim: int, order: int) -> np.ndarray:
    """Expand one value per orbit into the dense symmetric tensor."""
    om = orbit_map(dim, order)
    values = np.asarray(values, dtype=float)
    if values.shape != (len(om.reps),):
        raise ShapeError(
            f"expected {len(om.reps)} orbit values, got shape {values.shape}"
        )
    return values[om.inverse].reshape((dim,) * order, order="F")


def orbit_values(t: np.ndarray) -> np.ndarray:
    """Value of ``t`` at each orbit representative."""
    t = np.asarray(t)
    d, n = t.ndim, t.shape[0]
    reps = orbit_map(n, d).reps
    return t[tuple(reps.T)]


def new_symmetric(
    order: int,
    dim: int,
    entries: Mapping[tuple, float] | Iterable[tuple[tuple, float]] = (),
) -> np.ndarray:
    """Build a symmetric tensor from one value per permutation orbit.

    Parameters
    ----------
    order, dim : int
        Tensor order ``d`` and dimension ``n``.
    entries : mapping or iterable of (multi-index, value)
        Multi-indices are **1-based**, each with ``order`` components in
        ``[1, dim]``. Every permutation of a supplied index receives the same
        value; orbits not mentioned are zero.

    Raises
    ------
    ConstructionError
        Two supplied indices of one orbit carry different values.
    IndexError
        An index component is out of range.

    Examples
    --------
    >>> t = new_symmetric(2, 2, {(1, 2): 5.0})
    >>> t.tolist()
    [[0.0, 5.0], [5.0, 0.0]]
    """
    if order < 1 or dim < 1:
        raise ShapeError(f"order and dim must be positive, got {order}, {dim}")
    if isinstance(entries, Mapping):
        entries = entries.items()
    seen: dict[tuple, float] = {}
    for index, value in entries:
        index = tuple(int(i) for i in index)
        if len(index) != order:
            raise ShapeError(f"index {index} does not have {order} components")
        if any(i < 1 or i > dim for i in index):
            raise IndexError(f"index {index} out of range [1, {dim}]")
        key = tuple(sorted(index, reverse=True))
        value = float(value)
        if key in seen and seen[key] != value:
            raise ConstructionError(
                f"conflicting values {seen[key]!r} and {value!r} "
                f"on the orbit of {key}"
            )
        seen[key] = value
    vals = np.zeros(len(orbit_map(dim, order).reps))
    for key, value in seen.items():
        vals[orbit_of([i - 1 for i in key], dim)] = value
    return from_orbit_values(vals, dim, order)


def _check_cubical(t: np.ndarray) -> None:
    if t.ndim == 0 or any(s != t.shape[0] for s in t.shape):
        raise ShapeError(f"tensor must be cubical, got shape {t.shape}")


def symmetry_violation(t) -> tuple[float, tuple[tuple[int, ...], tuple[int, ...]]]:
    """Largest spread of values inside one permutation orbit.

    Returns the spread and a pair of 1-based multi-indices realising it.
    """
    t = np.asarray(t, dtype=float)
    _check_cubical(t)
    n, d = t.shape[0], t.ndim
    om = orbit_map(n, d)
    flat = t.reshape(-1, order="F")
    hi = np.full(len(om.reps), -np.inf)
    lo = np.full(len(om.reps), np.inf)
    np.maximum.at(hi, om.inverse, flat)
    np.minimum.at(lo, om.inverse, flat)
    spread = hi - lo
    worst = int(np.argmax(spread))
    members = np.flatnonzero(om.inverse == worst)
    i_hi = members[np.argmax(flat[members])]
    i_lo = members[np.argmin(flat[members])]

    def one_based(pos):
        return tuple(int(i) + 1 for i in np.unravel_index(pos, t.shape, order="F"))

    return float(spread[worst]), (one_based(i_hi), one_based(i_lo))


def is_symmetric(t, tol: float = 0.0) -> bool:
    """True iff every orbit spread is at most ``tol * max(1, max|t|)``.

    Equivalent to comparing ``t`` with all of its index permutations.
    """
    t = np.asarray(t, dtype=float)
    _check_cubical(t)
    if t.size == 0:
        return True
    violation, _ = symmetry_violation(t)
    return violation <= tol * max(1.0, float(np.max(np.abs(t))))


def vectorize(t) -> np.ndarray:
    """Flatten all indices into one (first index fastest)."""
    return np.asarray(t).reshape(-1, order="F")


def unvectorize(v, order: int, dim: int) -> np.ndarray:
    """Inverse of :func:`vectorize`; the result is not checked for symmetry."""
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] != dim**order:
        raise ShapeError(
            f"vector of shape {v.shape} cannot hold a {order}-way tensor of dim {dim}"
        )
    return v.reshape((dim,) * order, order="F")


def reshape_square(v) -> np.ndarray:
    """Reshape a length ``m**2`` vector into an ``m x m`` matrix."""
    v = np.asarray(v)
    m = math.isqrt(v.shape[0]) if v.ndim == 1 else -1
    if m < 0 or m * m != v.shape[0]:
        raise ShapeError(f"length {v.shape} is not a perfect square")
    return v.reshape((m, m), order="F")


def reshape_tensor_to_matrix(t) -> np.ndarray:
    """Square matricization: first ``d/2`` indices are rows, the rest columns."""
    t = np.asarray(t)
    _check_cubical(t)
    d, n = t.ndim, t.shape[0]
    if d % 2:
        raise OrderError(
            f"order {d} is odd; embed the tensor into an even order first"
        )
    m = n ** (d // 2)
    return t.reshape((m, m), order="F")


def kron_power(v, order: int) -> np.ndarray:
    """``v ⊗ v ⊗ ... ⊗ v`` (``order`` factors), the vectorized pure power."""
    v = np.asarray(v, dtype=float)
    out = np.ones(1)
    for _ in range(order):
        out = np.kron(v, out)
    return out


def rank1(coef: float, v, order: int) -> np.ndarray:
    """Dense symmetric tensor ``coef * v∘v∘...∘v``."""
    v = np.asarray(v, dtype=float)
    out = np.asarray(float(coef))
    for _ in range(order):
        out = np.multiply.outer(out, v)
    return out


def embedded_order(order: int) -> int:
    """Smallest power of two that is at least ``order``."""
    if order < 1:
        raise OrderError(f"order must be positive, got {order}")
    return 1 << (order - 1).bit_length()


def embed(t) -> np.ndarray:
    """Embed a symmetric ``d``-way tensor into order ``2**ceil(log2 d)``.

    The result ``B`` is symmetric, ``B[i_1, ..., i_d, 0, ..., 0] == t[i_1, ..., i_d]``
    and every orbit that does not contain such a padded index is zero. Tensors
    whose order is already a power of two are returned unchanged.
    """
    t = np.asarray(t, dtype=float)
    _check_cubical(t)
    d, n = t.ndim, t.shape[0]
    e = embedded_order(d)
    if e == d:
        return t
    reps = orbit_map(n, e).reps
    # reps are sorted non-increasingly, so padding zeros sit at the tail
    padded = np.count_nonzero(reps == 0, axis=1) >= e - d
    vals = np.zeros(len(reps))
    vals[padded] = t[tuple(reps[padded, :d].T)]
    return from_orbit_values(vals, n, e)


def extract_slice(b, order: int) -> np.ndarray:
    """Inverse of :func:`embed`: fix the trailing indices to the first value."""
    b = np.asarray(b)
    _check_cubical(b)
    if order > b.ndim:
        raise OrderError(f"cannot extract order {order} from order {b.ndim}")
    return b[(Ellipsis,) + (0,) * (b.ndim - order)]


def inner_product(a, b) -> float:
    """Sum of elementwise products of two equally shaped tensors."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.dot(a.ravel(), b.ravel()))


def frobenius_norm(t) -> float:
    return float(np.linalg.norm(np.asarray(t, dtype=float).ravel()))
