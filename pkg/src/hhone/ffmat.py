"""Exact dense linear algebra over prime fields GF(p), 2 <= p <= 65521.

Scalars are canonical int64 representatives in [0, p).  Matrices are
plain numpy arrays; the subspace lattice is handled by the Subspace
class, which keeps its basis in reduced row echelon form so that
equality, hashing and membership are structural.  The row-reduction
primitives are routed through hhone._kernel (compiled core when built,
numpy fallback otherwise).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import _kernel

MAX_PRIME = 65521


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def xgcd_inverse(a: int, p: int) -> int:
    """Inverse of a mod p by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 is not invertible mod {p}")
    t, new_t = 0, 1
    r, new_r = p, a
    while new_r:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


class PrimeField:
    """GF(p) scalar arithmetic on canonical representatives.

    Division uses the extended Euclidean algorithm; for p <= 7 a lookup
    table built once at construction makes inversion branch-free.
    """

    __slots__ = ("p", "_inv_table")

    def __init__(self, p: int):
        if not isinstance(p, (int, np.integer)):
            raise TypeError(f"characteristic must be an integer, got {type(p).__name__}")
        p = int(p)
        if p < 2 or p > MAX_PRIME:
            raise ValueError(f"characteristic {p} outside supported range [2, {MAX_PRIME}]")
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.p = p
        if p <= 7:
            table = np.zeros(p, dtype=np.int64)
            for a in range(1, p):
                table[a] = xgcd_inverse(a, p)
            self._inv_table = table
        else:
            self._inv_table = None

    def canon(self, a: int) -> int:
        return int(a) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 is not invertible mod {self.p}")
        if self._inv_table is not None:
            return int(self._inv_table[a])
        return xgcd_inverse(a, self.p)

    def div(self, a: int, b: int) -> int:
        return (a * self.inv(b)) % self.p

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


def canon(a, p: int) -> np.ndarray:
    """Canonical int64 array of representatives mod p."""
    return np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return _kernel.matmul(canon(a, p), canon(b, p), p)


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    """Canonical RREF (nonzero rows only) and rank."""
    r, piv = _kernel.rref(canon(m, p), p)
    return r, len(piv)


def rref_with_pivots(m: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    return _kernel.rref(canon(m, p), p)


def rank(m: np.ndarray, p: int) -> int:
    return rref(m, p)[1]


def nullspace_from_rref(r: np.ndarray, pivots: np.ndarray, n: int, p: int) -> "Subspace":
    """Kernel of a matrix given by its RREF rows (as row vectors x with x M^T = ...).

    Solves R x = 0 for column vectors x, returned as a Subspace of row
    vectors.  The standard free-column basis is re-echelonized so the
    result is canonical.
    """
    pivots = np.asarray(pivots, dtype=np.int64)
    k = r.shape[0]
    free = np.setdiff1d(np.arange(n, dtype=np.int64), pivots)
    if free.size == 0:
        return Subspace.zero(n, p)
    basis = np.zeros((free.size, n), dtype=np.int64)
    basis[np.arange(free.size), free] = 1
    if k:
        # x[pivot_i] = -R[i, f] for each free column f
        basis[:, pivots] = (-r[:, free].T) % p
    return Subspace.from_rows(basis, n, p)


def kernel(m: np.ndarray, p: int) -> "Subspace":
    """Right nullspace {x : m @ x = 0}, as a subspace of row vectors."""
    m = canon(m, p)
    if m.ndim != 2:
        raise ValueError("kernel expects a 2-d array")
    n = m.shape[1]
    r, piv = _kernel.rref(m, p)
    return nullspace_from_rref(r, piv, n, p)


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix; raises ValueError when singular."""
    m = canon(m, p)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"inverse expects a square matrix, got {m.shape}")
    n = m.shape[0]
    aug = np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = _kernel.rref(aug, p)
    if len(piv) < n or np.any(np.asarray(piv[:n]) != np.arange(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


def solve(m: np.ndarray, b: np.ndarray, p: int):
    """One solution x of m @ x = b, or None if inconsistent.

    Free variables are set to zero, which makes the returned solution
    canonical for a fixed m.
    """
    m = canon(m, p)
    b = canon(b, p)
    if b.ndim != 1 or b.shape[0] != m.shape[0]:
        raise ValueError(f"rhs shape {b.shape} does not match matrix rows {m.shape[0]}")
    n = m.shape[1]
    aug = np.concatenate([m, b[:, None]], axis=1)
    r, piv = _kernel.rref(aug, p)
    piv = np.asarray(piv, dtype=np.int64)
    if piv.size and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    if piv.size:
        x[piv] = r[:, n]
    return x


class Subspace:
    """Subspace of GF(p)^n with canonical RREF basis.

    Equality and hashing are structural: two subspaces are equal exactly
    when they have the same ambient dimension, the same field and the
    same row space.
    """

    __slots__ = ("n", "p", "basis", "pivots")

    def __init__(self, n: int, p: int, basis: np.ndarray, pivots: np.ndarray, _trusted=False):
        if not _trusted:
            raise TypeError("use Subspace.from_rows / zero / full")
        self.n = int(n)
        self.p = int(p)
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def from_rows(cls, rows, n: int | None = None, p: int | None = None) -> "Subspace":
        if p is None:
            raise ValueError("field characteristic required")
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim == 1:
            rows = rows[None, :]
        if n is None:
            n = rows.shape[1]
        if rows.shape[1] != n:
            raise ValueError(f"rows have width {rows.shape[1]}, ambient dimension is {n}")
        basis, piv = _kernel.rref(canon(rows, p), p)
        return cls(n, p, basis, np.asarray(piv, dtype=np.int64), _trusted=True)

    @classmethod
    def zero(cls, n: int, p: int) -> "Subspace":
        return cls(n, p, np.zeros((0, n), dtype=np.int64), np.zeros(0, dtype=np.int64), _trusted=True)

    @classmethod
    def full(cls, n: int, p: int) -> "Subspace":
        return cls(n, p, np.eye(n, dtype=np.int64), np.arange(n, dtype=np.int64), _trusted=True)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.n

    def _check_compatible(self, other: "Subspace"):
        if self.n != other.n or self.p != other.p:
            raise ValueError(
                f"ambient mismatch: GF({self.p})^{self.n} vs GF({other.p})^{other.n}"
            )

    def eliminate(self, rows: np.ndarray) -> np.ndarray:
        """Reduce row vectors modulo this subspace (zero iff contained)."""
        rows = canon(rows, self.p)
        single = rows.ndim == 1
        if single:
            rows = rows[None, :]
        if rows.shape[1] != self.n:
            raise ValueError(f"vector width {rows.shape[1]} != ambient {self.n}")
        out = _kernel.eliminate(rows, self.basis, self.pivots, self.p)
        return out[0] if single else out

    def contains(self, v: np.ndarray) -> bool:
        return not np.any(self.eliminate(v))

    def contains_space(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        if other.dim > self.dim:
            return False
        if other.dim == 0:
            return True
        return not np.any(self.eliminate(other.basis))

    def coords(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of a member vector in the RREF basis.

        For an RREF basis, the coordinate vector is the restriction of v
        to the pivot columns.  Raises if v lies outside the span.
        """
        v = canon(v, self.p)
        if np.any(self.eliminate(v)):
            raise ValueError("vector not in subspace")
        return v[self.pivots].copy()

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.from_rows(
            np.concatenate([self.basis, other.basis], axis=0), self.n, self.p
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rref [[U U],[V 0]]; rows with zero left half carry the intersection."""
        self._check_compatible(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.n, self.p)
        n = self.n
        top = np.concatenate([self.basis, self.basis], axis=1)
        bot = np.concatenate([other.basis, np.zeros_like(other.basis)], axis=1)
        r, _ = _kernel.rref(np.concatenate([top, bot], axis=0), self.p)
        left_zero = ~np.any(r[:, :n], axis=1)
        rows = r[left_zero, n:]
        if rows.size == 0:
            return Subspace.zero(n, self.p)
        return Subspace.from_rows(rows, n, self.p)

    def quotient_reps(self, sub: "Subspace") -> np.ndarray:
        """Rows of this basis completing sub to self (coset representatives).

        Requires sub <= self.  Because pivot columns of sub are a subset
        of those of self, the rows of self whose pivots are not pivots of
        sub form a canonical complement of sub inside self.
        """
        self._check_compatible(sub)
        if not self.contains_space(sub):
            raise ValueError("quotient_reps: argument is not a subspace of this space")
        keep = ~np.isin(self.pivots, sub.pivots)
        return self.basis[keep].copy()

    def membership_rows(self) -> np.ndarray:
        """Matrix C with C @ x == 0 exactly for x in the subspace.

        One row per non-pivot column f: x_f minus the basis combination
        reproducing x at f.  Shape (n - dim, n).
        """
        free = np.setdiff1d(np.arange(self.n, dtype=np.int64), self.pivots)
        c = np.zeros((free.size, self.n), dtype=np.int64)
        c[np.arange(free.size), free] = 1
        if self.dim:
            c[:, self.pivots] = (-self.basis[:, free].T) % self.p
        return c

    def complement_reps(self) -> np.ndarray:
        """Canonical coset representatives of the ambient space modulo self."""
        free = np.setdiff1d(np.arange(self.n, dtype=np.int64), self.pivots)
        reps = np.zeros((free.size, self.n), dtype=np.int64)
        reps[np.arange(free.size), free] = 1
        return reps

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.n == other.n
            and self.p == other.p
            and self.basis.shape == other.basis.shape
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.p, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.n}, p={self.p})"


class RrefAccumulator:
    """Incremental RREF of a row space fed block by block.

    Each block is reduced against the current echelon basis, echelonized
    on its own, and merged; peak memory stays at one block plus the
    basis.  The invariant is that (basis, pivots) always form a reduced
    row echelon matrix, so the final result equals the one-shot RREF of
    the stacked input.
    """

    def __init__(self, ncols: int, p: int):
        self.n = int(ncols)
        self.p = int(p)
        self.basis = np.zeros((0, self.n), dtype=np.int64)
        self.pivots = np.zeros(0, dtype=np.int64)

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    def add_rows(self, rows: np.ndarray) -> bool:
        """Fold a block of rows in; returns True if the rank grew."""
        rows = canon(rows, self.p)
        if rows.ndim != 2 or rows.shape[1] != self.n:
            raise ValueError(f"block shape {rows.shape} incompatible with ambient {self.n}")
        if rows.shape[0] == 0:
            return False
        if self.rank:
            rows = _kernel.eliminate(rows, self.basis, self.pivots, self.p)
        rows = rows[np.any(rows, axis=1)]
        if rows.shape[0] == 0:
            return False
        new_basis, new_piv = _kernel.rref(rows, self.p)
        if new_basis.shape[0] == 0:
            return False
        if self.rank:
            old = _kernel.eliminate(self.basis, new_basis, new_piv, self.p)
        else:
            old = self.basis
        merged = np.concatenate([old, new_basis], axis=0)
        piv = np.concatenate([self.pivots, np.asarray(new_piv, dtype=np.int64)])
        order = np.argsort(piv, kind="stable")
        self.basis = np.ascontiguousarray(merged[order])
        self.pivots = piv[order]
        return True

    def to_subspace(self) -> Subspace:
        return Subspace(self.n, self.p, self.basis.copy(), self.pivots.copy(), _trusted=True)

    def nullspace(self) -> Subspace:
        """Kernel of the accumulated constraint rows."""
        return nullspace_from_rref(self.basis, self.pivots, self.n, self.p)


def spin(seed_rows: np.ndarray, ops: Sequence[np.ndarray] | np.ndarray, p: int) -> Subspace:
    """Smallest op-invariant subspace containing the seed rows.

    ops act on column vectors; row vectors are closed under v -> v @ op^T.
    """
    seed_rows = canon(seed_rows, p)
    if seed_rows.ndim == 1:
        seed_rows = seed_rows[None, :]
    n = seed_rows.shape[1]
    ops = np.asarray(ops, dtype=np.int64)
    if ops.ndim == 2:
        ops = ops[None, :, :]
    if ops.shape[1:] != (n, n):
        raise ValueError(f"operator shape {ops.shape[1:]} does not match ambient {n}")
    acc = RrefAccumulator(n, p)
    acc.add_rows(seed_rows)
    processed: set[int] = set()
    while True:
        fresh = np.array([int(c) not in processed for c in acc.pivots], dtype=bool)
        frontier = acc.basis[fresh]
        if frontier.shape[0] == 0:
            break
        processed.update(int(c) for c in acc.pivots[fresh])
        if acc.rank == n:
            break
        block = np.concatenate([matmul(frontier, op.T, p) for op in ops], axis=0)
        acc.add_rows(block)
    return acc.to_subspace()
