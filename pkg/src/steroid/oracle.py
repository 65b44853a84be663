"""Slow, independent re-computations used to cross-check the main code paths.

Nothing here imports the rest of the package: Kronecker powers, reconstructions
and ranks are rebuilt with explicit loops so that agreement with the fast path
is evidence rather than tautology.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OracleReport:
    max_symmetry_violation: float
    reconstruction_error: float
    monomial_rank_bound_holds: bool


def naive_kron_power(v, d: int) -> np.ndarray:
    """``v ⊗ ... ⊗ v`` by explicit loops, first factor varying fastest."""
    if d < 1:
        raise ValueError("d must be at least 1")
    v = [float(x) for x in np.asarray(v).ravel()]
    n = len(v)
    out = np.empty(n**d)
    for pos in range(n**d):
        prod, rest = 1.0, pos
        for _ in range(d):
            rest, i = divmod(rest, n)
            prod *= v[i]
        out[pos] = prod
    return out


def count_monomials(n: int, d: int) -> int:
    """Distinct degree-``d`` monomials in ``n`` variables, by enumeration."""
    return sum(1 for _ in itertools.combinations_with_replacement(range(n), d))


def _terms(dec):
    if isinstance(dec, tuple):
        coefs, vectors = dec
    else:
        coefs, vectors = dec.coefficients, dec.vectors
    return np.asarray(coefs, dtype=float), np.asarray(vectors, dtype=float)


def naive_reconstruct(coefs, vectors, n: int, d: int) -> np.ndarray:
    """``sum_k coefs[k] * vectors[k]^{∘d}`` evaluated entry by entry."""
    vectors = np.asarray(vectors, dtype=float).reshape(-1, n)
    out = np.zeros((n,) * d)
    for idx in itertools.product(range(n), repeat=d):
        terms = np.array(coefs, dtype=float)
        for i in idx:
            terms = terms * vectors[:, i]
        out[idx] = terms.sum()
    return out


def max_symmetry_violation(t) -> float:
    """Largest ``|t[i] - t[π(i)]|`` over all indices and permutations."""
    t = np.asarray(t)
    worst = 0.0
    for idx in itertools.product(range(t.shape[0]), repeat=t.ndim):
        ref = t[idx]
        for perm in set(itertools.permutations(idx)):
            worst = max(worst, abs(float(t[perm]) - float(ref)))
    return worst


def gram_rank(vectors, d: int, rel_tol: float = 1e-10) -> int:
    """Rank of the pure-power matrix from its Gram matrix ``(<u, w>)**d``."""
    vectors = np.asarray(vectors, dtype=float)
    if len(vectors) == 0:
        return 0
    gram = (vectors @ vectors.T) ** d
    w = np.linalg.eigvalsh(gram)
    top = max(float(w[-1]), 0.0)
    return int(np.count_nonzero(w > rel_tol * top)) if top > 0 else 0


def verify_decomposition(t, dec) -> OracleReport:
    """Re-check a decomposition of ``t`` without touching the main kernels.

    ``dec`` is a decomposition object (``coefficients`` and ``vectors``
    attributes) or a ``(coefficients, vectors)`` pair.
    """
    t = np.asarray(t, dtype=float)
    n, d = t.shape[0], t.ndim
    coefs, vectors = _terms(dec)
    recon = naive_reconstruct(coefs, vectors, n, d)
    if recon.shape != t.shape:
        raise ValueError(f"shape mismatch {recon.shape} vs {t.shape}")
    err = math.sqrt(float(np.sum((t - recon) ** 2)))
    if n**d <= 4096:
        sym = max_symmetry_violation(recon)
    else:
        # spot-check random index/permutation pairs on large tensors
        rng = np.random.default_rng(0)
        sym = 0.0
        for _ in range(2000):
            idx = tuple(rng.integers(0, n, size=d))
            perm = tuple(idx[j] for j in rng.permutation(d))
            sym = max(sym, abs(float(recon[idx] - recon[perm])))
    bound = gram_rank(vectors, d) <= count_monomials(n, d)
    return OracleReport(sym, err, bound)


def monomial_rank_oracle(n: int, d: int, trials: int = 3, seed: int = 0,
                         return_ranks: bool = False):
    """Check the pure-power rank bound on random unit vectors.

    Every trial draws ``bound + 5`` random unit vectors, stacks their naive
    Kronecker powers as columns and measures the rank from the eigenvalues of
    the explicit Gram matrix.
    """
    if n**d > 10**5:
        raise ValueError(f"n**d = {n**d} is too large to enumerate")
    rng = np.random.default_rng(seed)
    bound = count_monomials(n, d)
    ranks = []
    for _ in range(trials):
        vs = rng.standard_normal((bound + 5, n))
        vs /= np.linalg.norm(vs, axis=1, keepdims=True)
        X = np.column_stack([naive_kron_power(v, d) for v in vs])
        w = jacobi_eigenvalues(X.T @ X)
        ranks.append(int(np.count_nonzero(w > 1e-10 * max(w.max(), 0.0))))
    ok = all(r <= bound for r in ranks)
    return (ok, ranks) if return_ranks else ok


def jacobi_eigenvalues(A, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending."""
    a = [list(map(float, row)) for row in np.asarray(A)]
    m = len(a)
    norm = math.sqrt(sum(x * x for row in a for x in row))
    for _ in range(max_sweeps):
        off = math.sqrt(sum(a[i][j] ** 2 for i in range(m) for j in range(m) if i != j))
        if off <= tol * max(norm, 1e-300):
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                if a[p][q] == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(m):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(m):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
    else:
        raise ArithmeticError(f"Jacobi did not converge in {max_sweeps} sweeps")
    return np.sort([a[i][i] for i in range(m)])
