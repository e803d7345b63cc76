# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel primitives: RREF, block elimination and matmul mod p.

Same contracts as hhone._kernel.pyfallback; RREF canonicality makes the
two backends bit-identical.  Entries are canonical int64 in [0, p).
"""

import numpy as np


cdef long long _modinv(long long a, long long p):
    cdef long long t = 0, new_t = 1, r = p, new_r = a % p
    cdef long long q, tmp
    while new_r != 0:
        q = r / new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    t %= p
    if t < 0:
        t += p
    return t


def rref(a_in, long long p):
    a = np.array(a_in, dtype=np.int64, order="C")
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    a %= p
    cdef long long[:, ::1] A = a
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k, piv_row
    cdef long long v, inv, f
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv_row = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv_row = i
                break
        if piv_row < 0:
            continue
        if piv_row != r:
            for j in range(n):
                v = A[r, j]
                A[r, j] = A[piv_row, j]
                A[piv_row, j] = v
        v = A[r, c]
        if v != 1:
            inv = _modinv(v, p)
            for j in range(n):
                A[r, j] = (A[r, j] * inv) % p
        for i in range(m):
            if i == r:
                continue
            f = A[i, c]
            if f == 0:
                continue
            for j in range(n):
                A[i, j] = (A[i, j] - f * A[r, j]) % p
                if A[i, j] < 0:
                    A[i, j] += p
        pivots.append(c)
        r += 1
    return np.ascontiguousarray(a[:r]), np.array(pivots, dtype=np.int64)


def eliminate(rows_in, basis_in, pivots_in, long long p):
    rows = np.array(rows_in, dtype=np.int64, order="C")
    basis = np.ascontiguousarray(basis_in, dtype=np.int64)
    piv = np.ascontiguousarray(pivots_in, dtype=np.int64)
    cdef Py_ssize_t nb = basis.shape[0]
    if nb == 0:
        return rows
    cdef long long[:, ::1] R = rows
    cdef long long[:, ::1] B = basis
    cdef long long[::1] P = piv
    cdef Py_ssize_t m = R.shape[0], n = R.shape[1]
    cdef Py_ssize_t i, j, t
    cdef long long f
    for i in range(m):
        for t in range(nb):
            f = R[i, P[t]]
            if f == 0:
                continue
            for j in range(n):
                R[i, j] = (R[i, j] - f * B[t, j]) % p
                if R[i, j] < 0:
                    R[i, j] += p
    return rows


def matmul(a_in, b_in, long long p):
    a = np.ascontiguousarray(a_in, dtype=np.int64)
    b = np.ascontiguousarray(b_in, dtype=np.int64)
    cdef long long[:, ::1] A = a
    cdef long long[:, ::1] B = b
    cdef Py_ssize_t m = A.shape[0], k = A.shape[1], n = B.shape[1]
    if B.shape[0] != k:
        raise ValueError("matmul shape mismatch")
    out = np.zeros((m, n), dtype=np.int64)
    cdef long long[:, ::1] C = out
    # int64 accumulation is exact while k*(p-1)^2 < 2^62; flush partial
    # sums through mod whenever the running bound would be exceeded.
    cdef long long step = (p - 1) * (p - 1)
    cdef long long limit = (<long long>1) << 62
    cdef Py_ssize_t flush = n + 1
    if step > 0:
        flush = <Py_ssize_t>(limit / step)
        if flush < 1:
            flush = 1
    cdef Py_ssize_t i, j, t, since
    cdef long long acc, av
    for i in range(m):
        for t in range(k):
            av = A[i, t]
            if av == 0:
                continue
            for j in range(n):
                C[i, j] += av * B[t, j]
            # per-row flush counter: values stay below k*(p-1)^2 which is
            # already safe for k <= flush; re-reduce otherwise
            if (t + 1) % flush == 0:
                for j in range(n):
                    C[i, j] %= p
        for j in range(n):
            acc = C[i, j] % p
            if acc < 0:
                acc += p
            C[i, j] = acc
    return out
