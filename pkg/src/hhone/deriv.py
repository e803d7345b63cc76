"""Derivations, inner derivations, and HH^1 as a Lie algebra.

A linear map f on an algebra A is stored as a d x d matrix F acting on row
vectors, f(v) = v @ F, so composition f.g reads as G @ F.  The Leibniz rule
f(b_i b_j) = f(b_i) b_j + b_i f(b_j) is one linear constraint block per
ordered basis pair; the blocks are reduced incrementally so the peak working
set stays at one (d, d^2) slab plus the accumulated row echelon form.  Inner
derivations are the maps ad_x = L(x) - R(x), and HH^1(A) = Der(A)/IDer(A)
carries the bracket [f, g] = f.g - g.f, presented here on the canonical
coset representatives (echelon basis rows of Der whose pivots avoid the
pivots of IDer).  The center Z(A) acts on classes by (z.f)(x) = z f(x).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ffmat, lie, modchop
from .assoc import AssocAlgebra, IdealSubspace, QuotientAlgebra
from .ffmat import Subspace


class Derivation:
    """A verified derivation of an associative algebra."""

    __slots__ = ("parent", "matrix")

    def __init__(self, parent: AssocAlgebra, matrix, check: bool = True):
        self.parent = parent
        m = ffmat.canon(np.asarray(matrix, dtype=np.int64), parent.p)
        if m.shape != (parent.dim, parent.dim):
            raise ValueError(f"matrix shape {m.shape} does not match algebra dim {parent.dim}")
        self.matrix = m
        if check:
            self._validate()

    def _validate(self):
        a, f, p = self.parent, self.matrix, self.parent.p
        lhs = np.tensordot(a.sc, f, axes=(2, 0)) % p
        r1 = np.tensordot(f, a.sc, axes=(1, 0)) % p
        r2 = np.tensordot(f, a.sc, axes=(1, 1)).transpose(1, 0, 2) % p
        if np.any((lhs - r1 - r2) % p):
            raise ValueError("Leibniz rule fails")
        if np.any(ffmat.matmul(a.unit[None, :], f, p)):
            raise ValueError("derivation does not kill the unit")

    def __call__(self, v: np.ndarray) -> np.ndarray:
        return ffmat.matmul(np.atleast_2d(np.asarray(v, dtype=np.int64)) % self.parent.p,
                            self.matrix, self.parent.p)[0]

    def vec(self) -> np.ndarray:
        return self.matrix.reshape(-1)

    def bracket(self, other: "Derivation") -> "Derivation":
        m = bracket_matrix(self.matrix, other.matrix, self.parent.p)
        return Derivation(self.parent, m, check=False)

    def __repr__(self):
        return f"Derivation(dim={self.parent.dim}, p={self.parent.p})"


def bracket_matrix(f: np.ndarray, g: np.ndarray, p: int) -> np.ndarray:
    """Matrix of [f, g] = f.g - g.f; composing maps on rows reads right to left,
    so the matrix of f.g is G @ F."""
    return (ffmat.matmul(g, f, p) - ffmat.matmul(f, g, p)) % p


@dataclass(eq=False)
class DerivationSpace:
    """A subspace of vectorized derivation matrices, each basis row re-verified.

    The space is optionally checked to be closed under the bracket on basis
    pairs; Der, IDer, and the filtration levels all are, while constrained
    image spaces need not be.
    """

    parent: AssocAlgebra
    space: Subspace
    name: str = "derivations"
    check_bracket: bool = True

    def __post_init__(self):
        a, s = self.parent, self.space
        d = a.dim
        if s.n != d * d or s.p != a.p:
            raise ValueError("space does not live in the d*d matrix coordinates")
        for row in s.basis:
            Derivation(a, row.reshape(d, d))
        if self.check_bracket and s.dim:
            rows = _pairwise_bracket_rows(self.matrices, a.p)
            if np.any(s.eliminate(rows)):
                raise ValueError(f"{self.name} is not closed under the bracket")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def matrices(self) -> np.ndarray:
        d = self.parent.dim
        return self.space.basis.reshape(-1, d, d)

    def derivations(self) -> list[Derivation]:
        return [Derivation(self.parent, m, check=False) for m in self.matrices]

    def contains(self, f) -> bool:
        v = f.vec() if isinstance(f, Derivation) else np.asarray(f, dtype=np.int64).reshape(-1)
        return self.space.contains(v % self.parent.p)

    def __repr__(self):
        return f"DerivationSpace({self.name}, dim={self.dim}, algebra dim={self.parent.dim})"


def _pairwise_bracket_rows(mats: np.ndarray, p: int) -> np.ndarray:
    """Vectorized matrices of all pairwise brackets [f_s, f_t], s < t."""
    m, d = mats.shape[0], mats.shape[1]
    if m < 2:
        return np.zeros((0, d * d), dtype=np.int64)
    out = []
    for s in range(m - 1):
        rest = mats[s + 1:]
        br = (np.matmul(rest, mats[s]) - np.matmul(mats[s][None], rest)) % p
        out.append(br.reshape(-1, d * d))
    return np.concatenate(out, axis=0)


def _leibniz_block(sc: np.ndarray, i: int, j: int, p: int) -> np.ndarray:
    """Constraint rows (one per coordinate c) for the basis pair (i, j).

    Unknowns are vec(F) in row-major order; the row for coordinate c says
    sum_k sc[i,j,k] F[k,c] - sum_r F[i,r] sc[r,j,c] - sum_r F[j,r] sc[i,r,c] = 0.
    """
    d = sc.shape[0]
    block = np.zeros((d, d, d), dtype=np.int64)  # (c, k, r)
    rng = np.arange(d)
    block[rng, :, rng] = sc[i, j][None, :]
    block[:, i, :] -= sc[:, j, :].T
    block[:, j, :] -= sc[i].T
    return block.reshape(d, d * d) % p


def derivations(a: AssocAlgebra) -> DerivationSpace:
    """Der(A): the solution space of the Leibniz constraints, echelon basis."""

    def build():
        d, p = a.dim, a.p
        acc = ffmat.RrefAccumulator(d * d, p)
        commutative = a.is_commutative()
        for i in range(d):
            for j in range(i if commutative else 0, d):
                acc.add_rows(_leibniz_block(a.sc, i, j, p))
        return DerivationSpace(a, acc.nullspace(), name="Der")

    return a._cached("deriv:derivations", build)


def inner_derivations(a: AssocAlgebra) -> DerivationSpace:
    """IDer(A): span of ad_x = L(x) - R(x); dimension is dim A - dim Z(A)."""

    def build():
        d, p = a.dim, a.p
        rows = (a.sc - a.sc.transpose(1, 0, 2)).reshape(d, d * d) % p
        space = Subspace.from_rows(rows, n=d * d, p=p)
        zdim = a.center().algebra.dim
        assert space.dim == d - zdim, "inner derivation count disagrees with the center"
        return DerivationSpace(a, space, name="IDer")

    return a._cached("deriv:inner", build)


@dataclass(eq=False)
class HH1Presentation:
    """HH^1(A) on canonical coset representatives.

    reps holds the vectorized representative derivations (echelon rows of
    Der whose pivots avoid IDer's pivots); gamma is the bracket tensor in
    the induced class coordinates; zmod stacks the action matrices of the
    center basis on classes, rows acting as c -> c @ zmod[u].
    """

    parent: AssocAlgebra
    der: DerivationSpace
    ider: DerivationSpace
    reps: np.ndarray
    rep_pivots: np.ndarray
    gamma: np.ndarray
    lie: lie.LieAlgebra
    zmod: np.ndarray

    @property
    def dim(self) -> int:
        return self.reps.shape[0]

    def class_coords(self, f) -> np.ndarray:
        """Coordinates of the class of a derivation with respect to the reps."""
        v = f.vec() if isinstance(f, Derivation) else np.asarray(f, dtype=np.int64).reshape(-1)
        v = v % self.parent.p
        if not self.der.space.contains(v):
            raise ValueError("not a derivation of the algebra")
        return self.ider.space.eliminate(v[None])[0][self.rep_pivots]

    def _classes_of_rows(self, rows: np.ndarray) -> np.ndarray:
        """Class coordinates of many vectorized derivations, with the span check."""
        p = self.parent.p
        if np.any(self.der.space.eliminate(rows)):
            raise ValueError("rows are not derivations")
        red = self.ider.space.eliminate(rows)
        coords = red[:, self.rep_pivots]
        if np.any((red - ffmat.matmul(coords, self.reps, p)) % p):
            raise AssertionError("class does not reduce onto the representatives")
        return coords

    def action_matrix(self, z: np.ndarray) -> np.ndarray:
        """Action of a central element on classes: [f] -> [z.f], rows c -> c @ M."""
        a = self.parent
        z = np.asarray(z, dtype=np.int64) % a.p
        if not a.center().space.contains(z):
            raise ValueError("element is not central")
        if self.dim == 0:
            return np.zeros((0, 0), dtype=np.int64)
        lz = a.left_mult_matrix(z)
        mats = self.reps.reshape(self.dim, a.dim, a.dim)
        rows = np.matmul(mats, lz).reshape(self.dim, -1) % a.p
        return self._classes_of_rows(rows)

    def __repr__(self):
        return f"HH1Presentation(dim={self.dim}, algebra dim={self.parent.dim}, p={self.parent.p})"


def hh1(a: AssocAlgebra) -> HH1Presentation:
    """HH^1(A) = Der(A)/IDer(A) with its Lie bracket and center action."""

    def build():
        d, p = a.dim, a.p
        der = derivations(a)
        ider = inner_derivations(a)
        if not der.space.contains_space(ider.space):
            raise AssertionError("inner derivations do not satisfy the Leibniz solver")
        # [Der, IDer] must land back in IDer: [f, ad_x] = ad_{f(x)}
        if der.dim and ider.dim:
            imats = ider.matrices
            for fm in der.matrices:
                br = (np.matmul(imats, fm) - np.matmul(fm[None], imats)) % p
                if np.any(ider.space.eliminate(br.reshape(-1, d * d))):
                    raise AssertionError("[Der, IDer] escapes IDer")
        reps = der.space.quotient_reps(ider.space)
        mask = ~np.isin(der.space.pivots, ider.space.pivots)
        rep_pivots = der.space.pivots[mask]
        h = reps.shape[0]
        assert h == der.dim - ider.dim

        pres = HH1Presentation(parent=a, der=der, ider=ider, reps=reps,
                               rep_pivots=rep_pivots,
                               gamma=np.zeros((h, h, h), dtype=np.int64),
                               lie=None, zmod=None)
        rep_mats = reps.reshape(h, d, d)
        gamma = np.zeros((h, h, h), dtype=np.int64)
        for s in range(h):
            br = (np.matmul(rep_mats, rep_mats[s]) - np.matmul(rep_mats[s][None], rep_mats)) % p
            gamma[s] = pres._classes_of_rows(br.reshape(h, d * d))
        pres.gamma = gamma
        pres.lie = lie.LieAlgebra(gamma, p, name="HH1", check=True)

        z = a.center()
        zmats = []
        for zrow in z.embedding:
            lz = a.left_mult_matrix(zrow)
            # z.Der stays in Der and z.IDer stays in IDer, else the action
            # would not descend to classes
            if der.dim:
                rows = np.matmul(der.matrices, lz).reshape(der.dim, -1) % p
                if np.any(der.space.eliminate(rows)):
                    raise AssertionError("center action leaves Der")
            if ider.dim:
                rows = np.matmul(ider.matrices, lz).reshape(ider.dim, -1) % p
                if np.any(ider.space.eliminate(rows)):
                    raise AssertionError("center action leaves IDer")
            zmats.append(pres.action_matrix(zrow))
        pres.zmod = np.stack(zmats) if zmats else np.zeros((0, h, h), dtype=np.int64)
        return pres

    return a._cached("deriv:hh1", build)


def lie_algebra_of(ders: DerivationSpace) -> lie.LieAlgebra:
    """Structure constants of a bracket-closed derivation space in its own basis."""
    a, p = ders.parent, ders.parent.p
    m, d = ders.dim, a.dim
    gamma = np.zeros((m, m, m), dtype=np.int64)
    mats = ders.matrices
    for s in range(m):
        br = (np.matmul(mats, mats[s]) - np.matmul(mats[s][None], mats)) % p
        for t in range(m):
            gamma[s, t] = ders.space.coords(br[t].reshape(-1))
    return lie.LieAlgebra(gamma, p, name=ders.name, check=True)


@dataclass(eq=False)
class CenterRestriction:
    """The Lie map HH^1(A) -> HH^1(Z(A)) induced by restricting derivations."""

    source: HH1Presentation
    target: HH1Presentation
    matrix: np.ndarray  # (dim source, dim target), classes act as row @ matrix

    def kernel(self) -> Subspace:
        if self.source.dim == 0:
            return Subspace.zero(0, self.source.parent.p)
        return ffmat.kernel(self.matrix.T, self.source.parent.p)

    def kernel_dim(self) -> int:
        return self.source.dim if self.source.dim == 0 else self.kernel().dim


def restrict_to_center(h: HH1Presentation) -> CenterRestriction:
    """Restrict outer derivation classes of A to the center.

    Every derivation is first checked to map Z(A) into itself, inner
    derivations are checked to restrict to zero, and the induced map is
    checked to be a homomorphism of Lie algebras on representative pairs
    before the class-level matrix is assembled.
    """
    a = h.parent
    p = a.p
    z = a.center()
    zalg = z.algebra
    piv = z.space.pivots
    for fm in h.der.matrices:
        imgs = ffmat.matmul(z.embedding, fm, p)
        if np.any(z.space.eliminate(imgs)):
            raise AssertionError("a derivation does not preserve the center")
    if h.ider.dim:
        imgs = np.matmul(z.embedding[None], h.ider.matrices) % p
        if np.any(imgs):
            raise AssertionError("an inner derivation does not restrict to zero on the center")
    hz = hh1(zalg)
    assert hz.ider.dim == 0

    d = a.dim
    rep_mats = h.reps.reshape(h.dim, d, d)
    restricted = []
    for fm in rep_mats:
        imgs = ffmat.matmul(z.embedding, fm, p)
        restricted.append(imgs[:, piv])
    # the restriction commutes with brackets already at the matrix level
    for s in range(h.dim):
        for t in range(s + 1, h.dim):
            big = bracket_matrix(rep_mats[s], rep_mats[t], p)
            big_restricted = ffmat.matmul(z.embedding, big, p)[:, piv]
            small = bracket_matrix(restricted[s], restricted[t], p)
            if np.any((big_restricted - small) % p):
                raise AssertionError("restriction is not a Lie homomorphism")
    if h.dim == 0:
        mat = np.zeros((0, hz.dim), dtype=np.int64)
    else:
        mat = np.stack([hz.class_coords(r.reshape(-1)) for r in restricted])
    return CenterRestriction(h, hz, mat)


def induce_on_quotient(f: Derivation, i: IdealSubspace,
                       quo: QuotientAlgebra | None = None) -> Derivation:
    """Push a derivation with f(I) <= I down to A/I."""
    a = f.parent
    if i.parent is not a:
        raise ValueError("ideal belongs to a different algebra")
    p = a.p
    s = i.space
    if s.dim:
        imgs = ffmat.matmul(s.basis, f.matrix, p)
        if np.any(s.eliminate(imgs)):
            raise ValueError("derivation does not preserve the ideal")
    if quo is None:
        quo = a.quotient(i)
    fq = ffmat.matmul(ffmat.matmul(quo.lift, f.matrix, p), quo.projection, p)
    if np.any((ffmat.matmul(f.matrix, quo.projection, p)
               - ffmat.matmul(quo.projection, fq, p)) % p):
        raise AssertionError("induced map does not commute with the projection")
    return Derivation(quo.algebra, fq)


@dataclass(eq=False)
class FiltrationLevel:
    """Der_(m) = {f in Der(A) : f(J) <= J^m}, verified on basis elements."""

    m: int
    ders: DerivationSpace

    def __post_init__(self):
        a = self.ders.parent
        p = a.p
        layers = a.radical_layers()
        jay = layers[1]
        jm = layers[self.m] if self.m < len(layers) else Subspace.zero(a.dim, p)
        if jay.dim and self.ders.dim:
            imgs = np.matmul(jay.basis[None], self.ders.matrices) % p
            if np.any(jm.eliminate(imgs.reshape(-1, a.dim))):
                raise ValueError(f"a level-{self.m} derivation leaves J^{self.m}")

    @property
    def dim(self) -> int:
        return self.ders.dim


def der_filtration(a: AssocAlgebra, m_max: int | None = None) -> list[FiltrationLevel]:
    """Levels Der_(1) >= Der_(2) >= ... of derivations contracting the radical.

    Der_(1) is computed from its defining conditions, never assumed to equal
    Der(A).  Bracket compatibility [Der_(m), Der_(n)] <= Der_(m+n-1) is
    asserted for every pair with m+n-1 within range.
    """
    d, p = a.dim, a.p
    der = derivations(a)
    layers = a.radical_layers()
    if m_max is None:
        m_max = max(1, len(layers) - 1)
    jay = layers[1]
    levels = []
    dmats = der.matrices
    if jay.dim == 0 or der.dim == 0:
        for m in range(1, m_max + 1):
            levels.append(FiltrationLevel(m, DerivationSpace(a, der.space, name=f"Der_({m})")))
        return levels
    imgs = np.matmul(jay.basis[None], dmats) % p  # (derdim, jdim, d)
    for m in range(1, m_max + 1):
        target = layers[m] if m < len(layers) else Subspace.zero(d, p)
        memb = target.membership_rows()
        if memb.shape[0] == 0:
            coeffs = Subspace.full(der.dim, p)
        else:
            k = np.matmul(imgs, memb.T).reshape(der.dim, -1) % p
            coeffs = ffmat.kernel(k.T, p)
        rows = ffmat.matmul(coeffs.basis, der.space.basis, p)
        space = Subspace.from_rows(rows, n=d * d, p=p)
        levels.append(FiltrationLevel(m, DerivationSpace(a, space, name=f"Der_({m})")))
    for prev, nxt in zip(levels, levels[1:]):
        if not prev.ders.space.contains_space(nxt.ders.space):
            raise AssertionError("filtration is not descending")
    for mi, lm in enumerate(levels, start=1):
        for ni, ln in enumerate(levels, start=1):
            k = mi + ni - 1
            if ni < mi or k > m_max or lm.dim == 0 or ln.dim == 0:
                continue
            rows = []
            for fm in lm.ders.matrices:
                br = (np.matmul(ln.ders.matrices, fm) - np.matmul(fm[None], ln.ders.matrices)) % p
                rows.append(br.reshape(-1, d * d))
            if np.any(levels[k - 1].ders.space.eliminate(np.concatenate(rows))):
                raise AssertionError(f"[Der_({mi}), Der_({ni})] escapes Der_({k})")
    return levels


def derivations_vanishing_on(a: AssocAlgebra, space: Subspace) -> DerivationSpace:
    """{f in Der(A) : f(space) = 0}; closed under the bracket."""
    der = derivations(a)
    if der.dim == 0 or space.dim == 0:
        return DerivationSpace(a, der.space, name="vanishing")
    p = a.p
    imgs = np.matmul(space.basis[None], der.matrices) % p
    coeffs = ffmat.kernel(imgs.reshape(der.dim, -1).T, p)
    rows = ffmat.matmul(coeffs.basis, der.space.basis, p)
    return DerivationSpace(a, Subspace.from_rows(rows, n=a.dim**2, p=p), name="vanishing")


def derivations_with_image_in(a: AssocAlgebra, space: Subspace) -> DerivationSpace:
    """{f in Der(A) : im f <= space}; not bracket-closed in general."""
    der = derivations(a)
    memb = space.membership_rows()
    if der.dim == 0 or memb.shape[0] == 0:
        return DerivationSpace(a, der.space, name="image-constrained", check_bracket=False)
    p = a.p
    k = np.matmul(der.matrices, memb.T).reshape(der.dim, -1) % p
    coeffs = ffmat.kernel(k.T, p)
    rows = ffmat.matmul(coeffs.basis, der.space.basis, p)
    return DerivationSpace(a, Subspace.from_rows(rows, n=a.dim**2, p=p),
                           name="image-constrained", check_bracket=False)


def socle_maps(a: AssocAlgebra, seed: int = 0) -> DerivationSpace:
    """Derivations from bimodule maps J/J^2 -> soc(A) on a split symmetric algebra.

    Solves for matrices commuting with both multiplications by every
    primitive idempotent, killing the Wedderburn complement and J^2, with
    all rows inside the socle.  Each solution is certified to be an outer
    derivation whose class is annihilated by J(Z(A)).
    """
    if a.is_symmetric() is not True:
        raise ValueError("socle maps are defined here only for symmetric algebras")
    idems = a.lift_idempotents(seed)
    ecomp = a.wedderburn_complement(seed)
    soc = a.socle()
    j2 = a.ideal_power(a.radical(), 2)
    d, p = a.dim, a.p
    eye = np.eye(d, dtype=np.int64)
    acc = ffmat.RrefAccumulator(d * d, p)
    for e in idems:
        for mult in (a.left_mult_matrix(e), a.right_mult_matrix(e)):
            rows = (np.kron(eye, mult.T) - np.kron(mult, eye)) % p
            acc.add_rows(rows)
    killed = np.concatenate([ecomp.embedding, j2.space.basis]) if j2.dim else ecomp.embedding
    acc.add_rows(np.kron(killed % p, eye))
    memb = soc.space.membership_rows()
    if memb.shape[0]:
        acc.add_rows(np.kron(eye, memb))
    space = acc.nullspace()
    out = DerivationSpace(a, space, name="socle_maps")
    if space.dim:
        inter = space.intersect(inner_derivations(a).space)
        if not inter.is_zero():
            raise AssertionError("a socle map is inner")
        zrad = a.center().algebra.radical()
        for zrow in zrad.space.basis:
            lz = a.left_mult_matrix(a.center().embed(zrow))
            if np.any(np.matmul(out.matrices, lz) % p):
                raise AssertionError("J(Z) does not annihilate a socle map")
    return out


def ext1_self_dims(a: AssocAlgebra, seed: int = 0) -> list[int]:
    """dim of e_i (J/J^2) e_i for each primitive idempotent, in lift order.

    For a split basic algebra these are the dimensions of Ext^1(S_i, S_i),
    the number of loops at each vertex of the quiver.
    """
    idems = a.lift_idempotents(seed)
    jay = a.radical()
    j2 = a.ideal_power(jay, 2)
    p = a.p
    dims = []
    for e in idems:
        if jay.dim == 0:
            dims.append(0)
            continue
        le = a.left_mult_matrix(e)
        re_ = a.right_mult_matrix(e)
        corner = ffmat.matmul(ffmat.matmul(jay.space.basis, le, p), re_, p)
        rows = np.concatenate([corner, j2.space.basis]) if j2.dim else corner
        total = Subspace.from_rows(rows, n=a.dim, p=p)
        dims.append(total.dim - j2.dim)
    return dims


def hh1_socle(h: HH1Presentation) -> Subspace:
    """soc_{Z(A)}(HH^1): classes annihilated by every element of J(Z(A))."""
    a = h.parent
    p = a.p
    if h.dim == 0:
        return Subspace.zero(0, p)
    z = a.center()
    zrad = z.algebra.radical()
    if zrad.dim == 0:
        return Subspace.full(h.dim, p)
    ops = np.stack([h.action_matrix(z.embed(row)) for row in zrad.space.basis])
    return modchop.module_socle(ops, p, n=h.dim)
