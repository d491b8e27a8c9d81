"""Exact characteristic polynomials of integer matrices."""

from __future__ import annotations

from typing import List, Sequence

import numpy as np

from .polys import UniPoly

__all__ = ["charpoly", "charpoly_coeffs", "charpoly_batch"]


def charpoly_coeffs(A: Sequence[Sequence[int]]) -> List[int]:
    """Coefficients of det(xI - A), low degree first, by Berkowitz's division-free method."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix is not square")
    if n == 0:
        return [1]
    # c holds det(xI - A_k) for the leading k x k block, highest degree first
    c = [1, -A[0][0]]
    for k in range(1, n):
        a = A[k][k]
        R = [A[k][j] for j in range(k)]
        S = [A[i][k] for i in range(k)]
        M = [row[:k] for row in A[:k]]
        # first column of the Toeplitz matrix: 1, -a, -R S, -R M S, ..., -R M^(k-1) S
        col = [1, -a]
        v = S
        for _ in range(k):
            col.append(-sum(r * x for r, x in zip(R, v)))
            v = [sum(M[i][j] * v[j] for j in range(k)) for i in range(k)]
        # new coefficients: T (k+2 x k+1 lower-triangular Toeplitz) times c
        c = [sum(col[i - j] * c[j] for j in range(min(i, k) + 1)) for i in range(k + 2)]
    return c[::-1]


def charpoly(A: Sequence[Sequence[int]]) -> UniPoly:
    """det(xI - A) as a monic UniPoly with integer coefficients."""
    return UniPoly(charpoly_coeffs(A))


def _int64_safe(n: int, row_norm: int) -> bool:
    # every intermediate of Faddeev-LeVerrier is bounded by n * 2^n * R^n
    return n * (2 ** n) * max(row_norm, 1) ** n < 2 ** 62


def charpoly_batch(mats: np.ndarray) -> np.ndarray:
    """Characteristic polynomials of a stack of integer matrices, shape (B, n, n).

    Returns integer coefficients low degree first, shape (B, n+1). Uses the
    Faddeev-LeVerrier recurrence, whose divisions are exact over the integers.
    Runs in int64 when an a-priori bound rules out overflow, otherwise with
    Python integers.
    """
    mats = np.asarray(mats)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError("expected a stack of square matrices")
    B, n, _ = mats.shape
    if B == 0:
        return np.zeros((0, n + 1), dtype=np.int64)
    row_norm = int(np.abs(mats).sum(axis=2).max()) if n else 0
    dtype = np.int64 if _int64_safe(n, row_norm) else object
    A = mats.astype(dtype)
    out = np.zeros((B, n + 1), dtype=dtype)
    out[:, n] = 1
    eye = np.eye(n, dtype=dtype)
    M = np.zeros((B, n, n), dtype=dtype)
    for k in range(1, n + 1):
        M = A @ M + out[:, n - k + 1][:, None, None] * eye
        tr = np.einsum("bii->b", A @ M)
        if dtype is object:
            out[:, n - k] = np.array([-(t // k) for t in tr], dtype=object)
        else:
            out[:, n - k] = -(tr // k)
    return out
