"""Submodule search and composition series for matrix actions over GF(p).

A module here is GF(p)^n as row vectors, acted on from the right by a
family of matrices: v -> v @ op.  A subspace is a submodule when it is
closed under every op.  The chop step looks for a proper nonzero
submodule with the classical meataxe recipe: draw a singular element
theta of the acting algebra, spin its null vectors, and certify
irreducibility through the nullity-one criterion (a full spin on both
the module and its transpose).  Verdicts are never guessed: if the
randomized search and the exhaustive fallback are both unavailable, an
InconclusiveError is raised.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import ffmat
from .errors import InconclusiveError

DEFAULT_MAX_ATTEMPTS = 200
DEFAULT_EXHAUSTIVE_LINES = 2_000_000


def _as_op_stack(ops, n: int | None = None) -> np.ndarray:
    ops = np.asarray(ops, dtype=np.int64)
    if ops.ndim == 2:
        ops = ops[None]
    if ops.ndim != 3 or ops.shape[1] != ops.shape[2]:
        raise ValueError(f"operators must be square matrices, got shape {ops.shape}")
    if n is not None and ops.shape[1] != n:
        raise ValueError(f"operator size {ops.shape[1]} does not match ambient {n}")
    return ops


def spin_rows(rows: np.ndarray, ops, p: int) -> ffmat.Subspace:
    """Smallest subspace containing the rows and closed under v -> v @ op."""
    ops = _as_op_stack(ops)
    return ffmat.spin(rows, ops.transpose(0, 2, 1), p)


def is_invariant(space: ffmat.Subspace, ops, p: int) -> bool:
    ops = _as_op_stack(ops, space.n)
    if space.dim == 0:
        return True
    for op in ops:
        if np.any(space.eliminate(ffmat.matmul(space.basis, op, p))):
            return False
    return True


def module_socle(ops, p: int, n: int | None = None) -> ffmat.Subspace:
    """Common kernel {v : v @ op = 0 for every op}."""
    ops = _as_op_stack(ops, n)
    if ops.shape[0] == 0:
        if n is None:
            raise ValueError("module_socle needs ops or an explicit ambient dimension")
        return ffmat.Subspace.full(n, p)
    stacked = np.concatenate([op.T for op in ops], axis=0)
    return ffmat.kernel(stacked, p)


def _theta_stream(ops: np.ndarray, rng, p: int):
    """Yield random elements of the algebra generated by the ops.

    Pure words in sparse singular generators never gain rank (a product
    is bounded by the rank of its factors), so each draw multiplies two
    random sums from a working pool and adds one more summand.  Both the
    product and the sum feed back into a bounded pool whose generator
    slots are never evicted, which keeps the walk from being absorbed
    into a proper subalgebra.
    """
    g = ops.shape[0]
    pool = [op for op in ops]
    extra_cap = max(8, g)

    def stash(m):
        if not np.any(m):
            return
        if len(pool) < g + extra_cap:
            pool.append(m)
        else:
            pool[g + int(rng.integers(extra_cap))] = m

    while True:
        a, b, c, e, f = (int(x) for x in rng.integers(len(pool), size=5))
        left = (pool[a] + int(rng.integers(1, p)) * pool[b]) % p
        right = (pool[c] + int(rng.integers(1, p)) * pool[e]) % p
        prod = ffmat.matmul(left, right, p)
        theta = (prod + int(rng.integers(1, p)) * pool[f]) % p
        stash(prod)
        stash(theta)
        if np.any(theta):
            yield theta


def _line_representatives(n: int, p: int):
    """All lines of GF(p)^n, one canonical vector each (first nonzero = 1)."""
    for lead in range(n):
        tail_len = n - lead - 1
        for tail in itertools.product(range(p), repeat=tail_len):
            v = np.zeros(n, dtype=np.int64)
            v[lead] = 1
            if tail_len:
                v[lead + 1:] = tail
            yield v


def find_proper_submodule(
    ops,
    p: int,
    seed: int = 0,
    rng=None,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    exhaustive_lines: int = DEFAULT_EXHAUSTIVE_LINES,
):
    """Look for a proper nonzero submodule.

    Returns (subspace, certificate) where subspace is None when the
    module is certified irreducible.  The certificate dict records how
    the verdict was reached and is sufficient to replay it.  Raises
    InconclusiveError when neither the randomized search nor the
    exhaustive fallback can settle the question.
    """
    ops = _as_op_stack(ops)
    n = ops.shape[1]
    if rng is None:
        rng = np.random.default_rng(seed)
    if n <= 1:
        return None, {"method": "dim1"}

    ops_t = ops.transpose(0, 2, 1)
    if not np.any(ops):
        # zero action: every line is a submodule
        v = np.zeros(n, dtype=np.int64)
        v[0] = 1
        return spin_rows(v, ops, p), {"method": "zero_action", "vector": v.tolist()}

    stream = _theta_stream(ops, rng, p)
    for attempt in range(max_attempts):
        theta = next(stream)
        null = ffmat.kernel(theta.T, p)
        nullity = null.dim
        if nullity == 0:
            continue
        candidates = [null.basis[i] for i in range(nullity)]
        if nullity > 1:
            for _ in range(2):
                coeffs = rng.integers(0, p, size=nullity)
                v = (coeffs @ null.basis) % p
                if np.any(v):
                    candidates.append(v)
        spun_full = False
        for v in candidates:
            sub = spin_rows(v, ops, p)
            if 0 < sub.dim < n:
                return sub, {
                    "method": "spin_witness",
                    "attempt": attempt,
                    "theta": theta.tolist(),
                    "vector": v.tolist(),
                }
            if sub.dim == n:
                spun_full = True
        if nullity == 1 and spun_full:
            dual_null = ffmat.kernel(theta, p)
            dual_spin = spin_rows(dual_null.basis, ops_t, p)
            if dual_spin.dim == n:
                return None, {
                    "method": "norton",
                    "attempt": attempt,
                    "theta": theta.tolist(),
                    "vector": candidates[0].tolist(),
                    "dual_vector": dual_null.basis[0].tolist(),
                }
            # a proper invariant subspace of the transpose module; its
            # annihilator is a proper nonzero submodule of the original
            witness = ffmat.kernel(dual_spin.basis, p)
            if not (0 < witness.dim < n):
                raise AssertionError("dual witness produced a degenerate annihilator")
            return witness, {
                "method": "dual_witness",
                "attempt": attempt,
                "theta": theta.tolist(),
            }

    line_count = (p**n - 1) // (p - 1)
    if line_count <= exhaustive_lines:
        for v in _line_representatives(n, p):
            sub = spin_rows(v, ops, p)
            if sub.dim < n:
                return sub, {"method": "exhaustive_witness", "vector": v.tolist()}
        return None, {"method": "exhaustive", "lines": line_count}

    raise InconclusiveError(
        f"no verdict on a dim-{n} module over GF({p}) after {max_attempts} "
        f"randomized attempts; {line_count} lines is beyond the exhaustive budget"
    )


def restrict_ops(ops, sub: ffmat.Subspace, p: int) -> np.ndarray:
    """Action matrices on an invariant subspace, in its RREF-basis coordinates."""
    ops = _as_op_stack(ops, sub.n)
    out = np.empty((ops.shape[0], sub.dim, sub.dim), dtype=np.int64)
    for t, op in enumerate(ops):
        image = ffmat.matmul(sub.basis, op, p)
        if np.any(sub.eliminate(image)):
            raise ValueError("subspace is not invariant under the given operators")
        out[t] = image[:, sub.pivots]
    return out


def quotient_ops(ops, sub: ffmat.Subspace, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Action on the quotient by an invariant subspace.

    Coordinates are the non-pivot columns of sub; returns (ops, columns)
    where columns lists the ambient column index of each coordinate.
    """
    ops = _as_op_stack(ops, sub.n)
    nonpiv = np.setdiff1d(np.arange(sub.n, dtype=np.int64), sub.pivots)
    q = nonpiv.size
    out = np.empty((ops.shape[0], q, q), dtype=np.int64)
    for t, op in enumerate(ops):
        reduced = sub.eliminate(op[nonpiv, :])
        out[t] = reduced[:, nonpiv]
    return out, nonpiv


def composition_series(ops, p: int, seed: int = 0) -> list[ffmat.Subspace]:
    """Ascending chain 0 = V_0 < V_1 < ... < V_k = GF(p)^n with simple quotients."""
    ops = _as_op_stack(ops)
    n = ops.shape[1]
    rng = np.random.default_rng(seed)
    if n == 0:
        return [ffmat.Subspace.zero(0, p)]

    def build(local_ops: np.ndarray) -> list[ffmat.Subspace]:
        m = local_ops.shape[1]
        sub, _ = find_proper_submodule(local_ops, p, rng=rng)
        if sub is None:
            return [ffmat.Subspace.zero(m, p), ffmat.Subspace.full(m, p)]
        lower = build(restrict_ops(local_ops, sub, p))
        upper_ops, nonpiv = quotient_ops(local_ops, sub, p)
        upper = build(upper_ops)
        chain = []
        for piece in lower:
            if piece.dim == 0:
                chain.append(ffmat.Subspace.zero(m, p))
            else:
                chain.append(
                    ffmat.Subspace.from_rows(ffmat.matmul(piece.basis, sub.basis, p), m, p)
                )
        for piece in upper[1:]:
            rows = np.zeros((piece.dim, m), dtype=np.int64)
            rows[:, nonpiv] = piece.basis
            chain.append(
                ffmat.Subspace.from_rows(np.concatenate([rows, sub.basis], axis=0), m, p)
            )
        return chain

    series = build(ops)
    for prev, cur in zip(series, series[1:]):
        if not (cur.contains_space(prev) and cur.dim > prev.dim):
            raise AssertionError("composition series is not strictly ascending")
    if not series[-1].is_full():
        raise AssertionError("composition series does not reach the full module")
    return series
