"""Independent reference implementations used to cross-check the library.

Everything here is deliberately written with plain python ints and
different algorithmic choices (Fermat inverses, last-column pivoting,
exhaustive enumeration) so that agreement with the numpy/Cython paths
is meaningful.
"""

from itertools import product


def rank_oracle(mat, p):
    """Rank over GF(p) by elimination with last-nonzero-column pivots."""
    pivots = []
    rank = 0
    for row in mat:
        r = [int(x) % p for x in row]
        for c, pv in pivots:
            f = r[c]
            if f:
                r = [(a - f * b) % p for a, b in zip(r, pv)]
        nz = [i for i, a in enumerate(r) if a]
        if nz:
            c = nz[-1]
            inv = pow(r[c], p - 2, p)
            r = [(a * inv) % p for a in r]
            pivots.append((c, r))
            rank += 1
    return rank


def span_set(rows, p):
    """All vectors of the span, as a set of tuples. Exponential; keep dims tiny."""
    rows = [tuple(int(x) % p for x in r) for r in rows]
    if not rows:
        return {()}
    n = len(rows[0])
    vecs = set()
    for coeffs in product(range(p), repeat=len(rows)):
        v = tuple(sum(c * r[i] for c, r in zip(coeffs, rows)) % p for i in range(n))
        vecs.add(v)
    return vecs


def dim_of_span_set(vecs, p):
    """log_p of the cardinality of a subspace given as a set of tuples."""
    count = len(vecs)
    d = 0
    while p**d < count:
        d += 1
    assert p**d == count, "not a subspace cardinality"
    return d


def conjugacy_classes_oracle(mult):
    """Brute-force conjugacy classes of a group given by its Cayley table."""
    n = len(mult)
    inv = [None] * n
    identity = next(e for e in range(n) if all(mult[e][x] == x for x in range(n)))
    for g in range(n):
        for h in range(n):
            if mult[g][h] == identity:
                inv[g] = h
    seen = set()
    classes = []
    for x in range(n):
        if x in seen:
            continue
        orbit = {mult[mult[g][x]][inv[g]] for g in range(n)}
        seen |= orbit
        classes.append(sorted(orbit))
    return sorted(classes)


def center_oracle(mult):
    """Indices of central elements of a Cayley table."""
    n = len(mult)
    return [x for x in range(n) if all(mult[x][g] == mult[g][x] for g in range(n))]
