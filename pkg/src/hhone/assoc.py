"""Finite-dimensional unital associative algebras over GF(p).

An algebra is a dense structure-constant tensor sc with
b_i b_j = sum_k sc[i, j, k] b_k, together with the coordinates of the
unit.  Construction validates associativity and the unit law on all
basis triples.  Group algebras, centers, radicals, socles, ideals,
idempotent lifting, block decompositions and symmetric forms are all
computed exactly.

Row conventions: elements are coefficient row vectors; left
multiplication by x is v -> v @ L(x) with L(x)[j, k] = sum_i x_i sc[i,j,k],
right multiplication is v -> v @ R(x) with R(x)[j, k] = sum_i sc[j,i,k] x_i.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass

import numpy as np

from . import ffmat, modchop
from .errors import InconclusiveError, NotSplitError
from .ffmat import PrimeField, Subspace
from .groups import GroupTable


@dataclass(frozen=True, eq=False)
class IdealSubspace:
    """A verified two-sided ideal of a parent algebra."""

    parent: "AssocAlgebra"
    space: Subspace

    def __post_init__(self):
        if self.space.n != self.parent.dim:
            raise ValueError("ideal ambient dimension does not match the algebra")
        if not self.parent.is_ideal(self.space):
            raise ValueError("subspace is not a two-sided ideal")

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass(frozen=True, eq=False)
class SubalgebraWithEmbedding:
    """A subalgebra carried with the matrix embedding into its parent.

    The rows of `embedding` are the images of the sub-basis in parent
    coordinates.  When `unital` is true the sub-unit maps to the parent
    unit; corner algebras e A e set it to false.
    """

    algebra: "AssocAlgebra"
    parent: "AssocAlgebra"
    embedding: np.ndarray
    unital: bool = True

    def __post_init__(self):
        emb = np.ascontiguousarray(self.embedding, dtype=np.int64)
        object.__setattr__(self, "embedding", emb)
        sub, par = self.algebra, self.parent
        if emb.shape != (sub.dim, par.dim):
            raise ValueError(f"embedding shape {emb.shape} does not match ({sub.dim}, {par.dim})")
        if ffmat.rank(emb, par.p) != sub.dim:
            raise ValueError("embedding is not injective")
        # multiplication commutes with the embedding
        images = par.products_of_rows(emb, emb)
        expected = np.tensordot(sub.sc, emb, axes=(2, 0)) % par.p
        if not np.array_equal(images, expected):
            raise ValueError("embedding does not respect multiplication")
        if self.unital and not np.array_equal(self.embed(sub.unit), par.unit):
            raise ValueError("embedding does not send unit to unit")

    def embed(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        if v.ndim == 1:
            return ffmat.matmul(v[None, :], self.embedding, self.parent.p)[0]
        return ffmat.matmul(v, self.embedding, self.parent.p)

    @property
    def space(self) -> Subspace:
        return Subspace.from_rows(self.embedding, self.parent.dim, self.parent.p)


@dataclass(frozen=True, eq=False)
class QuotientAlgebra:
    """A quotient A/I with the projection matrix and a section.

    projection: (dim A, dim A/I), acting on row vectors from the right.
    lift: (dim A/I, dim A) rows mapping quotient coordinates back to
    canonical coset representatives; projection o lift = identity.
    """

    algebra: "AssocAlgebra"
    parent: "AssocAlgebra"
    ideal: Subspace
    projection: np.ndarray
    lift: np.ndarray

    def project(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        if v.ndim == 1:
            return ffmat.matmul(v[None, :], self.projection, self.parent.p)[0]
        return ffmat.matmul(v, self.projection, self.parent.p)

    def lift_vec(self, c: np.ndarray) -> np.ndarray:
        c = np.asarray(c, dtype=np.int64)
        if c.ndim == 1:
            return ffmat.matmul(c[None, :], self.lift, self.parent.p)[0]
        return ffmat.matmul(c, self.lift, self.parent.p)


class AssocAlgebra:
    """Unital associative algebra by structure constants over GF(p)."""

    __slots__ = ("field", "dim", "sc", "unit", "meta", "labels", "_memo", "_lock")

    def __init__(self, sc, unit, p: int, meta: dict | None = None, labels=None, check: bool = True):
        self.field = PrimeField(p)
        sc = ffmat.canon(np.asarray(sc, dtype=np.int64), p)
        if sc.ndim != 3 or len(set(sc.shape)) != 1:
            raise ValueError(f"structure constants must be a cubic tensor, got {sc.shape}")
        d = sc.shape[0]
        if d < 1:
            raise ValueError("algebra dimension must be at least 1")
        self.dim = d
        self.sc = sc
        self.unit = ffmat.canon(np.asarray(unit, dtype=np.int64), p)
        if self.unit.shape != (d,):
            raise ValueError(f"unit must be a length-{d} vector")
        self.meta = dict(meta) if meta else {}
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(d)]
        if len(self.labels) != d:
            raise ValueError("label count does not match dimension")
        self._memo: dict = {}
        self._lock = threading.RLock()
        if check:
            self._validate()

    @property
    def p(self) -> int:
        return self.field.p

    def _validate(self):
        d, p, sc = self.dim, self.p, self.sc
        flat = sc.reshape(d * d, d)
        for i in range(d):
            # (b_i b_j) b_k vs b_i (b_j b_k), batched over (j, k)
            left = ffmat.matmul(sc[i], flat.reshape(d, d * d), p).reshape(d, d, d)
            right = ffmat.matmul(flat, sc[i], p).reshape(d, d, d)
            if not np.array_equal(left, right):
                raise ValueError(f"structure constants are not associative (basis index {i})")
        eye = np.eye(d, dtype=np.int64)
        if not np.array_equal(self.left_mult_matrix(self.unit), eye):
            raise ValueError("unit is not a left identity")
        if not np.array_equal(self.right_mult_matrix(self.unit), eye):
            raise ValueError("unit is not a right identity")

    # ------------------------------------------------------------------
    # arithmetic

    def left_mult_matrix(self, x: np.ndarray) -> np.ndarray:
        x = ffmat.canon(np.asarray(x, dtype=np.int64), self.p)
        return ffmat.matmul(x[None, :], self.sc.reshape(self.dim, -1), self.p).reshape(
            self.dim, self.dim
        )

    def right_mult_matrix(self, x: np.ndarray) -> np.ndarray:
        x = ffmat.canon(np.asarray(x, dtype=np.int64), self.p)
        # swapped[i, j, k] = sc[j, i, k], so contracting x over the first
        # axis yields R(x)[j, k] = sum_i sc[j, i, k] x_i
        swapped = self.sc.transpose(1, 0, 2)
        return ffmat.matmul(x[None, :], swapped.reshape(self.dim, -1), self.p).reshape(
            self.dim, self.dim
        )

    def products_of_rows(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """All pairwise products: out[r, s] = u_r * v_s, shape (r, s, dim)."""
        d, p = self.dim, self.p
        u = np.atleast_2d(np.asarray(u, dtype=np.int64))
        v = np.atleast_2d(np.asarray(v, dtype=np.int64))
        t = ffmat.matmul(u, self.sc.reshape(d, d * d), p).reshape(u.shape[0], d, d)
        t = t.transpose(1, 0, 2).reshape(d, u.shape[0] * d)
        out = ffmat.matmul(v, t, p).reshape(v.shape[0], u.shape[0], d)
        return out.transpose(1, 0, 2)

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.products_of_rows(x, y)[0, 0]

    def element_power(self, x: np.ndarray, k: int) -> np.ndarray:
        if k < 0:
            raise ValueError("negative powers are not supported")
        acc = self.unit.copy()
        base = ffmat.canon(np.asarray(x, dtype=np.int64), self.p)
        while k:
            if k & 1:
                acc = self.multiply(acc, base)
            base = self.multiply(base, base)
            k >>= 1
        return acc

    def is_commutative(self) -> bool:
        return np.array_equal(self.sc, self.sc.transpose(1, 0, 2))

    # ------------------------------------------------------------------
    # caching

    def _cached(self, key, builder):
        with self._lock:
            if key not in self._memo:
                self._memo[key] = builder()
            return self._memo[key]

    # ------------------------------------------------------------------
    # ideals

    def is_ideal(self, space: Subspace, sides: str = "two") -> bool:
        if space.n != self.dim:
            raise ValueError("ambient dimension mismatch")
        if space.dim == 0:
            return True
        w = space.basis
        right_images = np.tensordot(w, self.sc, axes=(1, 0)) % self.p
        left_images = np.tensordot(w, self.sc, axes=(1, 1)) % self.p
        rows_right = right_images.reshape(-1, self.dim)
        rows_left = left_images.reshape(-1, self.dim)
        if sides == "left":
            return not np.any(space.eliminate(rows_left))
        if sides == "right":
            return not np.any(space.eliminate(rows_right))
        return not (np.any(space.eliminate(rows_left)) or np.any(space.eliminate(rows_right)))

    def ideal_from(self, seed: Subspace) -> IdealSubspace:
        """Smallest two-sided ideal containing the seed subspace."""
        if seed.n != self.dim:
            raise ValueError("seed ambient dimension does not match the algebra")
        if seed.dim == 0:
            return IdealSubspace(self, Subspace.zero(self.dim, self.p))
        ops = np.concatenate([self.sc, self.sc.transpose(1, 0, 2)], axis=0)
        space = modchop.spin_rows(seed.basis, ops, self.p)
        return IdealSubspace(self, space)

    def _ideal_space(self, i) -> Subspace:
        return i.space if isinstance(i, IdealSubspace) else i

    def ideal_product(self, i, k) -> IdealSubspace:
        si, sk = self._ideal_space(i), self._ideal_space(k)
        if si.dim == 0 or sk.dim == 0:
            return IdealSubspace(self, Subspace.zero(self.dim, self.p))
        prods = self.products_of_rows(si.basis, sk.basis).reshape(-1, self.dim)
        return IdealSubspace(self, Subspace.from_rows(prods, self.dim, self.p))

    def ideal_power(self, i, n: int) -> IdealSubspace:
        if n < 1:
            raise ValueError("ideal powers start at 1")
        si = self._ideal_space(i)
        acc = IdealSubspace(self, si)
        for _ in range(n - 1):
            acc = self.ideal_product(acc, si)
        return acc

    def nilpotency_index(self, i) -> int:
        """Smallest e with I^e = 0; raises if the ideal is not nilpotent."""
        si = self._ideal_space(i)
        if si.dim == 0:
            return 1
        prev = si
        for e in range(2, self.dim + 2):
            cur = self.ideal_product(prev, si).space
            if cur.dim == 0:
                return e
            if cur.dim == prev.dim:
                raise ValueError("ideal is not nilpotent")
            prev = cur
        raise ValueError("ideal is not nilpotent")

    # ------------------------------------------------------------------
    # center

    def center(self) -> SubalgebraWithEmbedding:
        return self._cached("center", self._center)

    def _center(self) -> SubalgebraWithEmbedding:
        d, p = self.dim, self.p
        # z b_i = b_i z for all i:  z @ (R(e_i) - L(e_i)) = 0
        diff = self.sc.transpose(1, 0, 2) - self.sc  # diff[i] = R(e_i) - L(e_i), axes (j, k)
        m = diff.transpose(1, 0, 2).reshape(d, d * d) % p
        space = ffmat.kernel(m.T, p)
        return self.subalgebra_on(space)

    def subalgebra_on(self, space: Subspace) -> SubalgebraWithEmbedding:
        """Induced algebra structure on a multiplicatively closed subspace
        containing the unit."""
        if space.dim == 0:
            raise ValueError("a unital subalgebra cannot be zero-dimensional")
        basis = space.basis
        prods = self.products_of_rows(basis, basis)
        flat = prods.reshape(-1, self.dim)
        if np.any(space.eliminate(flat)):
            raise ValueError("subspace is not multiplicatively closed")
        sub_sc = flat[:, space.pivots].reshape(space.dim, space.dim, space.dim)
        sub_unit = space.coords(self.unit)
        sub = AssocAlgebra(sub_sc, sub_unit, self.p, meta={"construction": "subalgebra"})
        return SubalgebraWithEmbedding(sub, self, basis.copy(), unital=True)

    # ------------------------------------------------------------------
    # radical

    def radical(self, seed: int = 0) -> IdealSubspace:
        return self._cached("radical", lambda: self._radical(seed))

    def _radical(self, seed: int) -> IdealSubspace:
        hint = self.meta.get("radical_hint")
        space = None
        if hint == "augmentation":
            space = self._augmentation_ideal()
            if not (self.is_ideal(space) and space.dim == self.dim - 1 and self._is_nilpotent_space(space)):
                space = None
        if space is None:
            if self.is_commutative():
                space = self._radical_frobenius()
            else:
                space = self._radical_chop(seed)
        out = IdealSubspace(self, space)
        self._assert_radical(out)
        return out

    def radical_generic(self, seed: int = 0) -> IdealSubspace:
        """Radical via the composition-series method, ignoring fast paths."""
        out = IdealSubspace(self, self._radical_chop(seed))
        self._assert_radical(out)
        return out

    def radical_frobenius(self) -> IdealSubspace:
        """Radical of a commutative algebra as the kernel of x -> x^(p^m)."""
        if not self.is_commutative():
            raise ValueError("the Frobenius-kernel method needs a commutative algebra")
        return IdealSubspace(self, self._radical_frobenius())

    def _augmentation_ideal(self) -> Subspace:
        idx = self.meta.get("identity_index")
        if idx is None:
            raise ValueError("augmentation hint without a group identity index")
        d = self.dim
        rows = np.zeros((d - 1, d), dtype=np.int64)
        others = [j for j in range(d) if j != idx]
        for r, j in enumerate(others):
            rows[r, j] = 1
            rows[r, idx] = self.p - 1
        return Subspace.from_rows(rows, d, self.p)

    def _frobenius_matrix(self) -> np.ndarray:
        """Matrix P with x^p = x @ P for commutative algebras (rows are b_j^p)."""
        d = self.dim
        rows = np.empty((d, d), dtype=np.int64)
        eye = np.eye(d, dtype=np.int64)
        for j in range(d):
            rows[j] = self.element_power(eye[j], self.p)
        return rows

    def _radical_frobenius(self) -> Subspace:
        d, p = self.dim, self.p
        pm = self._frobenius_matrix()
        power = p
        while power < d:
            pm = ffmat.matmul(pm, pm, p)
            power *= power
        return ffmat.kernel(pm.T, p)

    def _radical_chop(self, seed: int) -> Subspace:
        d, p = self.dim, self.p
        series = modchop.composition_series(self.sc, p, seed=seed)
        acc = ffmat.RrefAccumulator(d, p)
        sc_j = self.sc.transpose(1, 0, 2).reshape(d, d * d)  # contract over j first
        for prev, cur in zip(series, series[1:]):
            reps = cur.quotient_reps(prev)
            memb = prev.membership_rows()
            if reps.shape[0] == 0 or memb.shape[0] == 0:
                continue
            t = ffmat.matmul(reps, sc_j, p).reshape(reps.shape[0], d, d)
            t = t.reshape(-1, d)
            rows = ffmat.matmul(t, memb.T, p).reshape(reps.shape[0], d, memb.shape[0])
            rows = rows.transpose(0, 2, 1).reshape(-1, d)
            acc.add_rows(rows)
        return acc.nullspace()

    def _is_nilpotent_space(self, space: Subspace) -> bool:
        try:
            self.nilpotency_index(IdealSubspace(self, space))
            return True
        except ValueError:
            return False

    def _assert_radical(self, j: IdealSubspace):
        if not self._is_nilpotent_space(j.space):
            raise AssertionError("computed radical is not nilpotent")
        if 0 < j.dim < self.dim:
            q = self.quotient(j)
            if not q.algebra._radical_of_checked_quotient().is_zero():
                raise AssertionError("quotient by the computed radical is not semisimple")

    def _radical_of_checked_quotient(self) -> Subspace:
        if self.is_commutative():
            return self._radical_frobenius()
        return self._radical_chop(seed=0)

    def radical_layers(self) -> list[Subspace]:
        """Chain A = J^0 >= J^1 >= ... >= J^e = 0 (last entry the zero space)."""

        def build():
            j = self.radical().space
            layers = [Subspace.full(self.dim, self.p)]
            cur = j
            while cur.dim > 0:
                layers.append(cur)
                cur = self.ideal_product(layers[-1], j).space
            layers.append(cur)
            return layers

        return self._cached("radical_layers", build)

    def layer_dims(self) -> list[int]:
        """Dimensions of J^i / J^(i+1) for i = 0, 1, ..., stopping at zero."""
        layers = self.radical_layers()
        return [a.dim - b.dim for a, b in zip(layers, layers[1:])]

    # ------------------------------------------------------------------
    # socle

    def socle(self) -> IdealSubspace:
        return self._cached("socle", self._socle)

    def _socle(self) -> IdealSubspace:
        j = self.radical().space
        if j.dim == 0:
            return IdealSubspace(self, Subspace.full(self.dim, self.p))
        # x with w x = 0 and x w = 0 for all w in a basis of J
        blocks = []
        for w in j.basis:
            blocks.append(self.left_mult_matrix(w))
            blocks.append(self.right_mult_matrix(w))
        m = np.concatenate([b.T for b in blocks], axis=0)
        return IdealSubspace(self, ffmat.kernel(m, self.p))

    def left_socle(self) -> Subspace:
        j = self.radical().space
        if j.dim == 0:
            return Subspace.full(self.dim, self.p)
        m = np.concatenate([self.left_mult_matrix(w).T for w in j.basis], axis=0)
        return ffmat.kernel(m, self.p)

    def right_socle(self) -> Subspace:
        j = self.radical().space
        if j.dim == 0:
            return Subspace.full(self.dim, self.p)
        m = np.concatenate([self.right_mult_matrix(w).T for w in j.basis], axis=0)
        return ffmat.kernel(m, self.p)

    @staticmethod
    def module_socle(ops, p: int, n: int | None = None) -> Subspace:
        """Common annihilated subspace {v : v @ op = 0 for all ops}."""
        return modchop.module_socle(ops, p, n)

    # ------------------------------------------------------------------
    # Okuyama-Tsushima criterion

    def ot_criterion(self) -> bool:
        """True iff J(Z(A)) A = J(A)."""
        z = self.center()
        jz = z.algebra.radical().space
        if jz.dim == 0:
            seed = Subspace.zero(self.dim, self.p)
        else:
            zrows = ffmat.matmul(jz.basis, z.embedding, self.p)
            prods = np.tensordot(zrows, self.sc, axes=(1, 0)) % self.p
            seed = Subspace.from_rows(prods.reshape(-1, self.dim), self.dim, self.p)
        ideal = self.ideal_from(seed)
        return ideal.space == self.radical().space

    # ------------------------------------------------------------------
    # quotients

    def quotient(self, i) -> QuotientAlgebra:
        si = self._ideal_space(i)
        if not isinstance(i, IdealSubspace) and not self.is_ideal(si):
            raise ValueError("quotient requires a two-sided ideal")
        if si.dim == self.dim:
            raise ValueError("cannot form the quotient by the whole algebra")
        d, p = self.dim, self.p
        nonpiv = np.setdiff1d(np.arange(d, dtype=np.int64), si.pivots)
        q = nonpiv.size
        eye = np.eye(d, dtype=np.int64)
        projection = si.eliminate(eye)[:, nonpiv]
        lift = np.zeros((q, d), dtype=np.int64)
        lift[np.arange(q), nonpiv] = 1
        prods = self.sc[np.ix_(nonpiv, nonpiv)].reshape(q * q, d)
        sub_sc = ffmat.matmul(prods, projection, p).reshape(q, q, q)
        sub_unit = ffmat.matmul(self.unit[None, :], projection, p)[0]
        meta = {"construction": "quotient", "parent": self.meta.get("construction")}
        alg = AssocAlgebra(sub_sc, sub_unit, p, meta=meta)
        # projection is an algebra homomorphism on all basis pairs:
        # pi(b_i b_j) agrees with pi(b_i) pi(b_j)
        lhs = ffmat.matmul(self.sc.reshape(d * d, d), projection, p).reshape(d, d, q)
        rhs = alg.products_of_rows(projection, projection)
        if not np.array_equal(lhs, rhs):
            raise AssertionError("quotient projection is not an algebra homomorphism")
        return QuotientAlgebra(alg, self, si, projection, lift)

    # ------------------------------------------------------------------
    # idempotents, Wedderburn complement, blocks

    def minimal_polynomial(self, x: np.ndarray) -> np.ndarray:
        """Monic minimal polynomial of x, coefficients low to high."""
        d, p = self.dim, self.p
        x = ffmat.canon(np.asarray(x, dtype=np.int64), p)
        powers = [self.unit.copy()]
        acc = ffmat.RrefAccumulator(d, p)
        acc.add_rows(self.unit[None, :])
        cur = self.unit.copy()
        while True:
            cur = self.multiply(cur, x)
            if not acc.add_rows(cur[None, :]):
                break
            powers.append(cur.copy())
        stack = np.stack(powers, axis=0)
        coeffs = ffmat.solve(stack.T, cur, p)
        if coeffs is None:
            raise AssertionError("dependent power is not in the span of earlier powers")
        m = len(powers)
        out = np.zeros(m + 1, dtype=np.int64)
        out[:m] = (-coeffs) % p
        out[m] = 1
        return out

    def _split_semisimple_check(self, abar: "AssocAlgebra"):
        """Abar is semisimple; require Abar isomorphic to a product of copies of GF(p)."""
        p = abar.p
        if not abar.is_commutative():
            raise NotSplitError(
                f"semisimple quotient of dimension {abar.dim} is noncommutative; "
                f"some simple component is not 1-dimensional over GF({p})"
            )
        frob = abar._frobenius_matrix()
        eye = np.eye(abar.dim, dtype=np.int64)
        if not np.array_equal(frob, eye):
            comps = abar.dim - ffmat.rank((frob - eye) % p, p)
            raise NotSplitError(
                f"not split over GF({p}): semisimple quotient has dimension {abar.dim} "
                f"but only {comps} simple components"
            )

    def _poly_roots(self, coeffs: np.ndarray) -> list[int]:
        from sympy import Poly, Symbol

        t = Symbol("t")
        poly = Poly(list(reversed([int(c) for c in coeffs])), t, modulus=self.p)
        roots = []
        for r, _mult in poly.ground_roots().items():
            roots.append(int(r) % self.p)
        return sorted(roots)

    def lift_idempotents(self, seed: int = 0) -> list[np.ndarray]:
        return [v.copy() for v in self._cached("idempotents", lambda: self._lift_idempotents(seed))]

    def _lift_idempotents(self, seed: int) -> list[np.ndarray]:
        d, p = self.dim, self.p
        j = self.radical()
        if j.dim == self.dim:
            raise AssertionError("radical cannot be the whole unital algebra")
        quo = self.quotient(j) if j.dim else None
        abar = quo.algebra if quo else self
        if j.dim == 0:
            # semisimple already; still need the component idempotents
            self._split_semisimple_check(self)
            return self._orthogonal_primitives_semisimple(self)
        self._split_semisimple_check(abar)
        bar_idems = self._orthogonal_primitives_semisimple(abar)
        # exponent for the p-power lift: p^m at least the nilpotency index of J
        nilp = self.nilpotency_index(j)
        power = 1
        while power < nilp:
            power *= p
        lifted: list[np.ndarray] = []
        f = np.zeros(d, dtype=np.int64)
        one_minus = lambda e: (self.unit - e) % p
        for ebar in bar_idems:
            a = quo.lift_vec(ebar)
            e = self.element_power(a, power)
            g = one_minus(f)
            e = self.multiply(self.multiply(g, e), g)
            e = self.element_power(e, power)
            lifted.append(e)
            f = (f + e) % p
        if not np.array_equal(f, self.unit):
            raise AssertionError("lifted idempotents do not sum to the unit")
        for a in range(len(lifted)):
            if not np.array_equal(self.multiply(lifted[a], lifted[a]), lifted[a]):
                raise AssertionError("lift produced a non-idempotent")
            for b in range(len(lifted)):
                if a != b and np.any(self.multiply(lifted[a], lifted[b])):
                    raise AssertionError("lifted idempotents are not orthogonal")
        return lifted

    def _orthogonal_primitives_semisimple(self, abar: "AssocAlgebra") -> list[np.ndarray]:
        """Primitive orthogonal idempotents of a split commutative semisimple algebra."""
        p = abar.p
        idems = [abar.unit.copy()]
        eye = np.eye(abar.dim, dtype=np.int64)
        for v in eye:
            if len(idems) == abar.dim:
                break
            new = []
            for e in idems:
                u = abar.multiply(abar.multiply(e, v), e)
                minp = abar.minimal_polynomial(u)
                roots = abar._poly_roots(minp)
                if len(roots) <= 1:
                    new.append(e)
                    continue
                for r in roots:
                    piece = e.copy()
                    for s in roots:
                        if s == r:
                            continue
                        factor = (u - s * abar.unit) % p
                        piece = abar.multiply(piece, factor)
                        piece = (piece * pow((r - s) % p, p - 2, p)) % p
                    if np.any(piece):
                        new.append(piece)
            idems = new
        if len(idems) != abar.dim:
            raise AssertionError(
                f"expected {abar.dim} primitive idempotents, found {len(idems)}"
            )
        return idems

    def wedderburn_complement(self, seed: int = 0) -> SubalgebraWithEmbedding:
        idems = self.lift_idempotents(seed)
        rows = np.stack(idems, axis=0)
        space = Subspace.from_rows(rows, self.dim, self.p)
        if space.dim != len(idems):
            raise AssertionError("idempotents are linearly dependent")
        emb = rows  # use the idempotents themselves as the sub-basis
        sub_sc = np.zeros((len(idems), len(idems), len(idems)), dtype=np.int64)
        for a in range(len(idems)):
            sub_sc[a, a, a] = 1
        sub_unit = np.ones(len(idems), dtype=np.int64)
        sub = AssocAlgebra(sub_sc, sub_unit, self.p, meta={"construction": "wedderburn"})
        out = SubalgebraWithEmbedding(sub, self, emb, unital=True)
        j = self.radical().space
        if space.intersect(j).dim != 0 or space.dim + j.dim != self.dim:
            raise AssertionError("complement does not split off the radical")
        return out

    def block_decomposition(self, seed: int = 0) -> list[SubalgebraWithEmbedding]:
        z = self.center()
        central_idems = [
            ffmat.matmul(e[None, :], z.embedding, self.p)[0]
            for e in z.algebra.lift_idempotents(seed)
        ]
        blocks = []
        total = 0
        eye = np.eye(self.dim, dtype=np.int64)
        for c in central_idems:
            rows = self.products_of_rows(self.products_of_rows(c, eye).reshape(-1, self.dim), c)
            rows = rows.reshape(-1, self.dim)
            space = Subspace.from_rows(rows, self.dim, self.p)
            basis = space.basis
            prods = self.products_of_rows(basis, basis).reshape(-1, self.dim)
            if np.any(space.eliminate(prods)):
                raise AssertionError("corner span is not multiplicatively closed")
            sub_sc = prods[:, space.pivots].reshape(space.dim, space.dim, space.dim)
            sub_unit = space.coords(c)
            meta = {"construction": "block", "parent": self.meta.get("construction")}
            alg = AssocAlgebra(sub_sc, sub_unit, self.p, meta=meta)
            blocks.append(SubalgebraWithEmbedding(alg, self, basis.copy(), unital=False))
            total += space.dim
        if total != self.dim:
            raise AssertionError("block dimensions do not sum to the algebra dimension")
        return blocks

    # ------------------------------------------------------------------
    # symmetric forms and shape predicates

    def _symmetric_solution_space(self) -> Subspace:
        d = self.dim
        m = (self.sc - self.sc.transpose(1, 0, 2)).reshape(d * d, d) % self.p
        return ffmat.kernel(m, self.p)

    def _gram(self, lam: np.ndarray) -> np.ndarray:
        return np.tensordot(self.sc, lam, axes=(2, 0)) % self.p

    def symmetric_form(self, seed: int = 0):
        """A functional lambda with lambda(ab) = lambda(ba) and nondegenerate
        associated form, or None when certified absent."""
        d, p = self.dim, self.p

        def build():
            if self.meta.get("construction") == "group_algebra":
                lam = np.zeros(d, dtype=np.int64)
                lam[self.meta["identity_index"]] = 1
                if ffmat.rank(self._gram(lam), p) == d:
                    sol = self._symmetric_solution_space()
                    if sol.contains(lam):
                        return lam
            sol = self._symmetric_solution_space()
            if sol.dim == 0:
                return None
            rng = np.random.default_rng(seed)
            for _ in range(64):
                coeffs = rng.integers(0, p, size=sol.dim)
                lam = (coeffs @ sol.basis) % p
                if np.any(lam) and ffmat.rank(self._gram(lam), p) == d:
                    return lam
            count = p**sol.dim
            if count <= 100_000:
                import itertools as it

                for coeffs in it.product(range(p), repeat=sol.dim):
                    lam = (np.array(coeffs, dtype=np.int64) @ sol.basis) % p
                    if np.any(lam) and ffmat.rank(self._gram(lam), p) == d:
                        return lam
                return None
            raise InconclusiveError(
                f"no nondegenerate invariant form found in 64 samples and the "
                f"solution space has {count} elements, beyond the exhaustive budget"
            )

        return self._cached(("symmetric_form", seed), build)

    def is_symmetric(self, seed: int = 0) -> bool:
        return self.symmetric_form(seed) is not None

    def is_local(self) -> bool:
        return self.radical().dim == self.dim - 1

    def is_uniserial(self) -> bool:
        return all(x <= 1 for x in self.layer_dims())

    def __repr__(self) -> str:
        kind = self.meta.get("construction", "algebra")
        return f"AssocAlgebra(dim={self.dim}, p={self.p}, {kind})"


def group_algebra(g: GroupTable, p: int) -> AssocAlgebra:
    """The group algebra kG over GF(p), basis indexed by group elements."""
    n = g.order
    sc = np.zeros((n, n, n), dtype=np.int64)
    i_idx, j_idx = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    sc[i_idx, j_idx, g.mult] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[g.identity] = 1
    is_pg, gp = g.is_p_group()
    meta = {
        "construction": "group_algebra",
        "group": g.name,
        "group_order": n,
        "identity_index": g.identity,
        "p": p,
    }
    if is_pg and (n == 1 or gp == p):
        meta["radical_hint"] = "augmentation"
    return AssocAlgebra(sc, unit, p, meta=meta, labels=list(g.labels))


def truncated_polynomial_algebra(n: int, p: int) -> AssocAlgebra:
    """k[x_1..x_n] / (x_1^p, ..., x_n^p) over GF(p).

    Basis monomials x^a are ordered by the lexicographic order of the
    exponent tuples a (first coordinate slowest), matching the element
    order of an elementary abelian group built from tuples.
    """
    if n < 1:
        raise ValueError("need at least one variable")
    PrimeField(p)
    d = p**n
    exps = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
    radix = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    sums = exps[:, None, :] + exps[None, :, :]
    valid = np.all(sums <= p - 1, axis=2)
    target = sums @ radix
    sc = np.zeros((d, d, d), dtype=np.int64)
    i_idx, j_idx = np.nonzero(valid)
    sc[i_idx, j_idx, target[i_idx, j_idx]] = 1
    unit = np.zeros(d, dtype=np.int64)
    unit[0] = 1
    labels = []
    for a in exps:
        factors = [f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}" for i, e in enumerate(a) if e]
        labels.append("*".join(factors) if factors else "1")
    meta = {"construction": "truncated_polynomial", "nvars": n, "p": p}
    return AssocAlgebra(sc, unit, p, meta=meta, labels=labels)
