"""Vectorized numpy implementations of the kernel primitives.

Entries are canonical int64 representatives in [0, p).  Products are
accumulated in float64 through BLAS whenever the worst-case dot product
k*(p-1)^2 stays below 2^53, where every intermediate integer is exact;
otherwise the slower int64 path is used (exact below 2^63).
"""

from __future__ import annotations

import numpy as np

_F64_EXACT = 2**53
_I64_SAFE = 2**62


def _modinv(a: int, p: int) -> int:
    # extended Euclid; a is nonzero mod p
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p for canonical int64 matrices."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    k = a.shape[1]
    bound = k * (p - 1) * (p - 1)
    if bound < _F64_EXACT:
        c = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(c, p).astype(np.int64)
    if bound < _I64_SAFE:
        return (a @ b) % p
    raise OverflowError(f"matmul mod {p} with inner dimension {k} exceeds exact range")


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form over GF(p).

    Returns (r, pivots) where r holds the nonzero rows (rank x n,
    C-contiguous) and pivots the pivot column of each row.  RREF is
    canonical: any matrix with the same row space yields the same r.
    """
    a = np.array(a, dtype=np.int64, order="C")
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    a %= p
    m, n = a.shape
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        v = int(a[r, c])
        if v != 1:
            a[r] = (a[r] * _modinv(v, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows] = (a[rows] - np.outer(col[rows], a[r])) % p
        pivots.append(c)
        r += 1
    return np.ascontiguousarray(a[:r]), np.array(pivots, dtype=np.int64)


def eliminate(rows: np.ndarray, basis: np.ndarray, pivots: np.ndarray, p: int) -> np.ndarray:
    """Reduce rows modulo the row space of an RREF basis.

    Computes rows - rows[:, pivots] @ basis (mod p).  Because basis is
    in RREF with the given pivot columns, the result vanishes on every
    pivot column and is zero exactly for rows inside the span.
    """
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    basis = np.ascontiguousarray(basis, dtype=np.int64)
    if basis.shape[0] == 0:
        return rows.copy()
    coef = rows[:, np.asarray(pivots, dtype=np.int64)]
    return (rows - matmul(coef, basis, p)) % p
