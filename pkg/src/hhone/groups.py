"""Small finite groups as explicit multiplication tables.

Groups of order up to 64 are built from family constructors and carried
around as Cayley tables on element indices 0..n-1.  Construction always
validates the table exhaustively: Latin square property, two-sided
identity, inverses and associativity on all triples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .ffmat import is_prime

MAX_ORDER = 64


class GroupTable:
    """Immutable multiplication table with the identity at a known index."""

    __slots__ = ("order", "mult", "identity", "labels", "name")

    def __init__(self, mult: np.ndarray, labels=None, name: str = "G", check: bool = True):
        mult = np.ascontiguousarray(np.asarray(mult, dtype=np.int64))
        n = mult.shape[0]
        if mult.shape != (n, n):
            raise ValueError(f"multiplication table must be square, got {mult.shape}")
        if n < 1 or n > MAX_ORDER:
            raise ValueError(f"group order {n} outside supported range [1, {MAX_ORDER}]")
        self.order = n
        self.mult = mult
        self.labels = list(labels) if labels is not None else [f"g{i}" for i in range(n)]
        if len(self.labels) != n:
            raise ValueError("label count does not match order")
        self.name = name
        self.identity = self._find_identity()
        if check:
            self._validate()

    def _find_identity(self) -> int:
        n = self.order
        idx = np.arange(n)
        for e in range(n):
            if np.array_equal(self.mult[e], idx) and np.array_equal(self.mult[:, e], idx):
                return e
        raise ValueError("table has no two-sided identity")

    def _validate(self):
        n = self.order
        m = self.mult
        if m.min() < 0 or m.max() >= n:
            raise ValueError("table entries out of range")
        idx = np.arange(n)
        for i in range(n):
            if not np.array_equal(np.sort(m[i]), idx) or not np.array_equal(np.sort(m[:, i]), idx):
                raise ValueError(f"row/column {i} is not a permutation")
        # inverses: identity must appear in every row (holds for any latin
        # square with identity, checked explicitly for the error message)
        if not np.all(np.any(m == self.identity, axis=1)):
            raise ValueError("some element has no inverse")
        # associativity on all triples, vectorized: (ij)k == i(jk)
        left = m[m, :]            # left[i, j, k] = m[m[i, j], k]
        right = m[:, m]           # right[i, j, k] = m[i, m[j, k]]
        if not np.array_equal(left, right):
            raise ValueError("table is not associative")

    def inverse(self, i: int) -> int:
        return int(np.nonzero(self.mult[i] == self.identity)[0][0])

    def power(self, i: int, k: int) -> int:
        k = int(k)
        if k < 0:
            return self.power(self.inverse(i), -k)
        acc = self.identity
        base = i
        while k:
            if k & 1:
                acc = int(self.mult[acc, base])
            base = int(self.mult[base, base])
            k >>= 1
        return acc

    def element_order(self, i: int) -> int:
        acc = i
        k = 1
        while acc != self.identity:
            acc = int(self.mult[acc, i])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return np.array_equal(self.mult, self.mult.T)

    def center_elements(self) -> list[int]:
        return [
            x for x in range(self.order)
            if np.array_equal(self.mult[x], self.mult[:, x])
        ]

    def conjugacy_classes(self) -> list[list[int]]:
        """Classes as sorted index lists, ordered by their smallest member."""
        n = self.order
        inv = [self.inverse(g) for g in range(n)]
        seen = set()
        classes = []
        for x in range(n):
            if x in seen:
                continue
            orbit = {int(self.mult[int(self.mult[g, x]), inv[g]]) for g in range(n)}
            seen |= orbit
            classes.append(sorted(orbit))
        return sorted(classes)

    def subgroup_closure(self, gens) -> frozenset[int]:
        """Subgroup generated by the given element indices."""
        members = {self.identity}
        frontier = [self.identity]
        gens = set(int(g) for g in gens) | {self.identity}
        for g in gens:
            if g not in members:
                members.add(g)
                frontier.append(g)
        while frontier:
            x = frontier.pop()
            for g in gens | members:
                for y in (int(self.mult[x, g]), int(self.mult[g, x])):
                    if y not in members:
                        members.add(y)
                        frontier.append(y)
        return frozenset(members)

    def is_p_group(self) -> tuple[bool, int | None]:
        n = self.order
        if n == 1:
            return True, None
        for p in range(2, n + 1):
            if is_prime(p) and n % p == 0:
                temp = n
                while temp % p == 0:
                    temp //= p
                return (temp == 1), p
        return False, None

    def frattini(self) -> frozenset[int]:
        """Frattini subgroup of a p-group: closure of p-th powers and commutators."""
        ok, p = self.is_p_group()
        if not ok:
            raise ValueError("Frattini computation requires a p-group")
        if self.order == 1:
            return frozenset({self.identity})
        gens = set()
        for x in range(self.order):
            gens.add(self.power(x, p))
        for x in range(self.order):
            for y in range(self.order):
                xy = int(self.mult[x, y])
                yx = int(self.mult[y, x])
                gens.add(int(self.mult[xy, self.inverse(yx)]))
        return self.subgroup_closure(gens)

    def is_elementary_abelian(self) -> bool:
        """Abelian with every non-identity element of the same prime order.

        The trivial group counts as elementary abelian (vacuously).
        """
        if self.order == 1:
            return True
        if not self.is_abelian():
            return False
        ok, p = self.is_p_group()
        if not ok:
            return False
        return all(
            self.element_order(x) == p for x in range(self.order) if x != self.identity
        )

    def quotient(self, normal: frozenset[int]) -> tuple["GroupTable", list[int]]:
        """Quotient by a normal subgroup; returns (table, coset index per element)."""
        normal = frozenset(int(x) for x in normal)
        if self.identity not in normal:
            raise ValueError("subgroup must contain the identity")
        for h in normal:
            for g in range(self.order):
                conj = int(self.mult[int(self.mult[g, h]), self.inverse(g)])
                if conj not in normal:
                    raise ValueError("subgroup is not normal")
        coset_of = [-1] * self.order
        reps = []
        for x in range(self.order):
            if coset_of[x] >= 0:
                continue
            idx = len(reps)
            reps.append(x)
            for h in normal:
                coset_of[int(self.mult[x, h])] = idx
        q = len(reps)
        table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                table[a, b] = coset_of[int(self.mult[reps[a], reps[b]])]
        return GroupTable(table, name=f"{self.name}/N"), coset_of

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, order={self.order})"


def _mult_from_elements(elements, op) -> np.ndarray:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    mult = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            mult[i, j] = index[op(a, b)]
    return mult


@dataclass(frozen=True)
class GroupSpec:
    """Declarative description of a group, buildable into a GroupTable.

    Families: cyclic(n), elem_abelian(p, rank), dihedral(order),
    quaternion8(), semidirect_cp_cm(p, m, d), extraspecial_p3(p), and
    product(*specs).
    """

    family: str
    params: tuple[int, ...] = ()
    factors: tuple["GroupSpec", ...] = ()

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls("cyclic", (int(n),))

    @classmethod
    def elem_abelian(cls, p: int, rank: int) -> "GroupSpec":
        return cls("elem_abelian", (int(p), int(rank)))

    @classmethod
    def dihedral(cls, order: int) -> "GroupSpec":
        return cls("dihedral", (int(order),))

    @classmethod
    def quaternion8(cls) -> "GroupSpec":
        return cls("quaternion8", ())

    @classmethod
    def semidirect_cp_cm(cls, p: int, m: int, d: int) -> "GroupSpec":
        return cls("semidirect_cp_cm", (int(p), int(m), int(d)))

    @classmethod
    def extraspecial_p3(cls, p: int) -> "GroupSpec":
        return cls("extraspecial_p3", (int(p),))

    @classmethod
    def product(cls, *specs: "GroupSpec") -> "GroupSpec":
        if len(specs) < 2:
            raise ValueError("product needs at least two factors")
        return cls("product", (), tuple(specs))

    @property
    def label(self) -> str:
        f, q = self.family, self.params
        if f == "cyclic":
            return f"C{q[0]}"
        if f == "elem_abelian":
            return f"(C{q[0]})^{q[1]}"
        if f == "dihedral":
            return f"D{q[0]}"
        if f == "quaternion8":
            return "Q8"
        if f == "semidirect_cp_cm":
            return f"C{q[0]}:C{q[1]}"
        if f == "extraspecial_p3":
            return f"E{q[0] ** 3}"
        if f == "product":
            return "x".join(s.label for s in self.factors)
        raise ValueError(f"unknown family {f!r}")

    def to_dict(self) -> dict:
        d: dict = {"family": self.family}
        if self.params:
            d["params"] = list(self.params)
        if self.factors:
            d["factors"] = [s.to_dict() for s in self.factors]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GroupSpec":
        return cls(
            d["family"],
            tuple(int(x) for x in d.get("params", ())),
            tuple(cls.from_dict(s) for s in d.get("factors", ())),
        )

    def build(self) -> GroupTable:
        f, q = self.family, self.params
        if f == "cyclic":
            (n,) = q
            if n < 1:
                raise ValueError(f"cyclic order must be positive, got {n}")
            elements = list(range(n))
            mult = _mult_from_elements(elements, lambda a, b: (a + b) % n)
        elif f == "elem_abelian":
            p, rank = q
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if rank < 0:
                raise ValueError("rank must be nonnegative")
            elements = list(itertools.product(range(p), repeat=rank))
            mult = _mult_from_elements(
                elements, lambda a, b: tuple((x + y) % p for x, y in zip(a, b))
            )
        elif f == "dihedral":
            (order,) = q
            if order < 2 or order % 2:
                raise ValueError(f"dihedral order must be even and >= 2, got {order}")
            n = order // 2
            elements = list(itertools.product(range(n), range(2)))

            def op(a, b):
                i1, j1 = a
                i2, j2 = b
                sign = -1 if j1 else 1
                return ((i1 + sign * i2) % n, (j1 + j2) % 2)

            mult = _mult_from_elements(elements, op)
        elif f == "quaternion8":
            # elements (axis, sign): axis 0 is the scalar 1, axes 1..3 are
            # the three imaginary units
            table = {
                (1, 1): (0, -1), (2, 2): (0, -1), (3, 3): (0, -1),
                (1, 2): (3, 1), (2, 1): (3, -1),
                (2, 3): (1, 1), (3, 2): (1, -1),
                (3, 1): (2, 1), (1, 3): (2, -1),
            }
            elements = [(axis, s) for axis in range(4) for s in (1, -1)]

            def op(a, b):
                ax1, s1 = a
                ax2, s2 = b
                if ax1 == 0:
                    return (ax2, s1 * s2)
                if ax2 == 0:
                    return (ax1, s1 * s2)
                ax, s = table[(ax1, ax2)]
                return (ax, s * s1 * s2)

            mult = _mult_from_elements(elements, op)
        elif f == "semidirect_cp_cm":
            p, m, d = q
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if m < 1 or d < 1 or d >= p:
                raise ValueError(f"invalid action parameters m={m}, d={d} for p={p}")
            if pow(d, m, p) != 1:
                raise ValueError(f"action d={d} does not have order dividing m={m} mod {p}")
            ordd = 1
            acc = d % p
            while acc != 1:
                acc = (acc * d) % p
                ordd += 1
            if ordd != m:
                raise ValueError(f"action d={d} has order {ordd} mod {p}, expected {m}")
            elements = list(itertools.product(range(p), range(m)))

            def op(a, b):
                a1, b1 = a
                a2, b2 = b
                return ((a1 + pow(d, b1, p) * a2) % p, (b1 + b2) % m)

            mult = _mult_from_elements(elements, op)
        elif f == "extraspecial_p3":
            (p,) = q
            if not is_prime(p) or p == 2:
                raise ValueError("extraspecial exponent-p construction needs an odd prime")
            elements = list(itertools.product(range(p), repeat=3))

            def op(a, b):
                return (
                    (a[0] + b[0]) % p,
                    (a[1] + b[1]) % p,
                    (a[2] + b[2] + a[0] * b[1]) % p,
                )

            mult = _mult_from_elements(elements, op)
        elif f == "product":
            tables = [s.build() for s in self.factors]
            order = 1
            for t in tables:
                order *= t.order
            if order > MAX_ORDER:
                raise ValueError(f"product order {order} exceeds {MAX_ORDER}")
            elements = list(itertools.product(*[range(t.order) for t in tables]))

            def op(a, b):
                return tuple(int(t.mult[x, y]) for t, x, y in zip(tables, a, b))

            mult = _mult_from_elements(elements, op)
        else:
            raise ValueError(f"unknown family {f!r}")
        labels = [f"g{i}" for i in range(mult.shape[0])]
        return GroupTable(mult, labels=labels, name=self.label)
