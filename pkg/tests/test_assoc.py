import numpy as np
import pytest

from hhone import ffmat
from hhone.assoc import AssocAlgebra, IdealSubspace, group_algebra
from hhone.errors import NotSplitError
from hhone.ffmat import Subspace
from hhone.groups import GroupSpec

from _oracles import conjugacy_classes_oracle


def ga(spec, p):
    return group_algebra(spec.build(), p)


def brute_multiply(a, x, y):
    out = np.zeros(a.dim, dtype=np.int64)
    for i in range(a.dim):
        for j in range(a.dim):
            if x[i] and y[j]:
                out = (out + int(x[i]) * int(y[j]) * a.sc[i, j]) % a.p
    return out


def triangular2(p):
    """Upper triangular 2x2 matrices over GF(p): basis e11, e22, e12."""
    sc = np.zeros((3, 3, 3), dtype=np.int64)
    sc[0, 0, 0] = 1  # e11 e11 = e11
    sc[1, 1, 1] = 1  # e22 e22 = e22
    sc[0, 2, 2] = 1  # e11 e12 = e12
    sc[2, 1, 2] = 1  # e12 e22 = e12
    unit = np.array([1, 1, 0], dtype=np.int64)
    return AssocAlgebra(sc, unit, p, labels=["e11", "e22", "e12"])


class TestConstruction:
    def test_group_algebra_basics(self):
        a = ga(GroupSpec.cyclic(2), 2)
        assert a.dim == 2
        assert a.is_commutative()
        assert a.is_local()
        assert a.radical().dim == 1

    def test_rejects_non_associative(self):
        # unit b0, b1*b1 = b2, but b2*b1 = b0 while b1*b2 = b2, so
        # (b1 b1) b1 = b0 differs from b1 (b1 b1) = b2
        sc = np.zeros((3, 3, 3), dtype=np.int64)
        for j in range(3):
            sc[0, j, j] = 1
            sc[j, 0, j] = 1
        sc[1, 1, 2] = 1
        sc[2, 1, 0] = 1
        sc[1, 2, 2] = 1
        with pytest.raises(ValueError, match="associative"):
            AssocAlgebra(sc, np.array([1, 0, 0]), 2)

    def test_rejects_bad_unit(self):
        sc = np.zeros((2, 2, 2), dtype=np.int64)
        sc[0, 0, 0] = 1
        sc[0, 1, 1] = sc[1, 0, 1] = 1
        sc[1, 1, 1] = 1
        with pytest.raises(ValueError, match="identity"):
            AssocAlgebra(sc, np.array([0, 1]), 3)

    def test_multiply_against_brute_force(self):
        rng = np.random.default_rng(7)
        for spec, p in [(GroupSpec.dihedral(6), 3), (GroupSpec.cyclic(4), 2)]:
            a = ga(spec, p)
            for _ in range(20):
                x = rng.integers(0, p, size=a.dim)
                y = rng.integers(0, p, size=a.dim)
                assert np.array_equal(a.multiply(x, y), brute_multiply(a, x, y))

    def test_products_of_rows_matches_multiply(self):
        a = ga(GroupSpec.dihedral(8), 2)
        rng = np.random.default_rng(3)
        u = rng.integers(0, 2, size=(3, a.dim))
        v = rng.integers(0, 2, size=(4, a.dim))
        prods = a.products_of_rows(u, v)
        for r in range(3):
            for s in range(4):
                assert np.array_equal(prods[r, s], a.multiply(u[r], v[s]))

    def test_element_power(self):
        a = ga(GroupSpec.cyclic(4), 2)
        g = np.array([0, 1, 0, 0], dtype=np.int64)
        assert np.array_equal(a.element_power(g, 4), a.unit)
        x = (a.unit + g) % 2
        assert not np.any(a.element_power(x, 4))  # (1+g)^4 = 0 in char 2


class TestCenter:
    def test_center_dim_is_class_count(self):
        for spec, p in [
            (GroupSpec.dihedral(6), 3),
            (GroupSpec.dihedral(8), 2),
            (GroupSpec.quaternion8(), 2),
            (GroupSpec.semidirect_cp_cm(7, 3, 2), 7),
        ]:
            g = spec.build()
            a = group_algebra(g, p)
            classes = conjugacy_classes_oracle(g.mult)
            assert a.center().algebra.dim == len(classes)

    def test_center_of_commutative_is_whole(self):
        a = ga(GroupSpec.elem_abelian(3, 2), 3)
        z = a.center()
        assert z.algebra.dim == a.dim
        assert z.algebra.is_commutative()

    def test_center_embedding_spanned_by_class_sums(self):
        g = GroupSpec.dihedral(6).build()
        a = group_algebra(g, 3)
        z = a.center()
        zspace = z.space
        for cls in conjugacy_classes_oracle(g.mult):
            v = np.zeros(a.dim, dtype=np.int64)
            v[list(cls)] = 1
            assert zspace.contains(v)

    def test_center_is_commutative_algebra(self):
        a = ga(GroupSpec.quaternion8(), 2)
        assert a.center().algebra.is_commutative()


class TestRadical:
    def test_augmentation_for_p_groups(self):
        for spec, p in [
            (GroupSpec.cyclic(4), 2),
            (GroupSpec.elem_abelian(3, 2), 3),
            (GroupSpec.dihedral(8), 2),
            (GroupSpec.quaternion8(), 2),
        ]:
            a = ga(spec, p)
            j = a.radical()
            assert j.dim == a.dim - 1
            assert a.is_local()
            # augmentation ideal: coefficient sums vanish
            assert not np.any(j.space.basis.sum(axis=1) % p)

    def test_ks3_radical_dim(self):
        a = ga(GroupSpec.dihedral(6), 3)
        assert a.radical().dim == 4

    def test_semisimple_maschke(self):
        a = ga(GroupSpec.cyclic(2), 3)
        assert a.radical().dim == 0
        b = ga(GroupSpec.dihedral(6), 5)
        assert b.radical().dim == 0

    def test_methods_agree_commutative(self):
        for spec, p in [
            (GroupSpec.cyclic(4), 2),
            (GroupSpec.cyclic(6), 3),
            (GroupSpec.elem_abelian(2, 2), 2),
            (GroupSpec.cyclic(5), 5),
        ]:
            a = ga(spec, p)
            frob = a.radical_frobenius().space
            chop = a.radical_generic().space
            assert frob == chop

    def test_methods_agree_p_group_hint(self):
        for spec, p in [(GroupSpec.dihedral(8), 2), (GroupSpec.extraspecial_p3(3), 3)]:
            a = ga(spec, p)
            assert a.radical().space == a.radical_generic().space

    def test_chop_on_nonabelian_non_p_group(self):
        a = ga(GroupSpec.semidirect_cp_cm(3, 2, 2), 3)  # S_3 as C_3 : C_2
        j = a.radical_generic()
        assert j.dim == 4
        assert a.radical().space == j.space

    def test_radical_of_triangular_matrices(self):
        a = triangular2(5)
        j = a.radical()
        assert j.dim == 1
        assert j.space.contains(np.array([0, 0, 1]))

    def test_dim_one_algebra(self):
        a = AssocAlgebra(np.ones((1, 1, 1)), np.array([1]), 7)
        assert a.radical().dim == 0
        assert a.socle().space.is_full()
        assert a.is_local()
        assert a.is_uniserial()


class TestSocle:
    def test_local_group_algebra_socle_is_sum_of_elements(self):
        for spec, p in [(GroupSpec.cyclic(4), 2), (GroupSpec.elem_abelian(3, 2), 3)]:
            a = ga(spec, p)
            soc = a.socle()
            assert soc.dim == 1
            assert soc.space.contains(np.ones(a.dim, dtype=np.int64))

    def test_semisimple_socle_is_everything(self):
        a = ga(GroupSpec.cyclic(3), 5)
        assert a.socle().space.is_full()

    def test_left_right_two_sided_agree_on_group_algebras(self):
        for spec, p in [(GroupSpec.dihedral(8), 2), (GroupSpec.dihedral(6), 3)]:
            a = ga(spec, p)
            assert a.left_socle() == a.right_socle() == a.socle().space

    def test_local_symmetric_socle_central_and_annihilator(self):
        # soc(A) lies in Z(A) and J(A) is the annihilator of soc(A) for
        # local symmetric algebras
        for spec, p in [
            (GroupSpec.cyclic(4), 2),
            (GroupSpec.dihedral(8), 2),
            (GroupSpec.quaternion8(), 2),
            (GroupSpec.elem_abelian(2, 2), 2),
        ]:
            a = ga(spec, p)
            assert a.is_local() and a.is_symmetric()
            soc = a.socle()
            assert a.center().space.contains_space(soc.space)
            blocks = []
            for s in soc.space.basis:
                blocks.append(a.left_mult_matrix(s).T)
                blocks.append(a.right_mult_matrix(s).T)
            ann = ffmat.kernel(np.concatenate(blocks, axis=0), p)
            assert ann == a.radical().space

    def test_module_socle(self):
        op = np.array([[0, 1], [0, 0]], dtype=np.int64)
        soc = AssocAlgebra.module_socle([op], 2)
        assert soc.dim == 1


class TestIdeals:
    def test_ideal_from_unit_is_whole(self):
        a = ga(GroupSpec.dihedral(6), 3)
        seed = Subspace.from_rows(a.unit[None, :], a.dim, 3)
        assert a.ideal_from(seed).space.is_full()

    def test_radical_powers_kc4(self):
        a = ga(GroupSpec.cyclic(4), 2)
        j = a.radical()
        assert [a.ideal_power(j, n).dim for n in (1, 2, 3, 4)] == [3, 2, 1, 0]
        assert a.nilpotency_index(j) == 4

    def test_ideal_product_not_ideal_rejected(self):
        a = ga(GroupSpec.dihedral(6), 3)
        # span of a single reflection is not an ideal
        v = np.zeros(a.dim, dtype=np.int64)
        refl = next(
            x for x in range(6) if GroupSpec.dihedral(6).build().element_order(x) == 2
        )
        v[refl] = 1
        with pytest.raises(ValueError, match="ideal"):
            IdealSubspace(a, Subspace.from_rows(v[None, :], a.dim, 3))

    def test_jz_b_strictly_inside_j_for_ks3(self):
        a = ga(GroupSpec.dihedral(6), 3)
        z = a.center()
        jz_rows = ffmat.matmul(z.algebra.radical().space.basis, z.embedding, 3)
        prods = a.products_of_rows(jz_rows, np.eye(a.dim, dtype=np.int64))
        space = Subspace.from_rows(prods.reshape(-1, a.dim), a.dim, 3)
        j = a.radical().space
        assert space.dim == 2
        assert j.dim == 4
        assert j.contains_space(space)

    def test_nilpotency_index_rejects_non_nilpotent(self):
        a = ga(GroupSpec.cyclic(3), 5)
        with pytest.raises(ValueError, match="nilpotent"):
            a.nilpotency_index(Subspace.full(a.dim, a.p))


class TestOkuyamaTsushima:
    def test_abelian_p_groups_true(self):
        for spec, p in [(GroupSpec.cyclic(4), 2), (GroupSpec.elem_abelian(3, 2), 3)]:
            assert ga(spec, p).ot_criterion() is True

    def test_kd8_false(self):
        assert ga(GroupSpec.dihedral(8), 2).ot_criterion() is False

    def test_ks3_false(self):
        assert ga(GroupSpec.dihedral(6), 3).ot_criterion() is False

    def test_semisimple_true(self):
        # J(Z) = 0 and J(A) = 0
        assert ga(GroupSpec.cyclic(2), 3).ot_criterion() is True


class TestQuotient:
    def test_quotient_by_zero_is_copy(self):
        a = ga(GroupSpec.dihedral(6), 3)
        q = a.quotient(Subspace.zero(a.dim, 3))
        assert q.algebra.dim == a.dim
        assert np.array_equal(q.algebra.sc, a.sc)
        assert np.array_equal(q.algebra.unit, a.unit)

    def test_kc4_mod_j2(self):
        a = ga(GroupSpec.cyclic(4), 2)
        j2 = a.ideal_power(a.radical(), 2)
        q = a.quotient(j2)
        assert q.algebra.dim == 2
        assert q.algebra.is_commutative()
        assert q.algebra.is_local()
        assert q.algebra.radical().dim == 1
        assert q.algebra.ideal_power(q.algebra.radical(), 2).dim == 0

    def test_elem_abelian_mod_j2(self):
        a = ga(GroupSpec.elem_abelian(3, 2), 3)
        j2 = a.ideal_power(a.radical(), 2)
        q = a.quotient(j2)
        assert q.algebra.dim == 3

    def test_projection_section_roundtrip(self):
        a = ga(GroupSpec.cyclic(4), 2)
        q = a.quotient(a.ideal_power(a.radical(), 2))
        eye = np.eye(q.algebra.dim, dtype=np.int64)
        assert np.array_equal(q.project(q.lift_vec(eye)), eye)

    def test_quotient_by_whole_rejected(self):
        a = ga(GroupSpec.cyclic(2), 2)
        with pytest.raises(ValueError, match="whole"):
            a.quotient(Subspace.full(a.dim, 2))


class TestIdempotents:
    def test_local_algebra_single_idempotent(self):
        a = ga(GroupSpec.elem_abelian(2, 2), 2)
        idems = a.lift_idempotents()
        assert len(idems) == 1
        assert np.array_equal(idems[0], a.unit)

    def test_ks3_two_idempotents(self):
        a = ga(GroupSpec.dihedral(6), 3)
        idems = a.lift_idempotents()
        assert len(idems) == 2
        for e in idems:
            assert np.array_equal(a.multiply(e, e), e)
        assert not np.any(a.multiply(idems[0], idems[1]))
        assert np.array_equal((idems[0] + idems[1]) % 3, a.unit)

    def test_kc6_gf3_idempotents(self):
        a = ga(GroupSpec.cyclic(6), 3)
        idems = a.lift_idempotents()
        assert len(idems) == 2

    def test_semisimple_split(self):
        a = ga(GroupSpec.cyclic(2), 3)
        idems = a.lift_idempotents()
        assert len(idems) == 2
        # explicit: (1+g)/2 and (1-g)/2
        space = Subspace.from_rows(np.stack(idems), 2, 3)
        assert space.contains(np.array([2, 2]))  # (1+g)/2 = 2(1+g) mod 3

    def test_not_split_raises(self):
        a = ga(GroupSpec.cyclic(3), 2)  # GF(2) x GF(4), not split
        with pytest.raises(NotSplitError, match="split"):
            a.lift_idempotents()

    def test_wedderburn_complement(self):
        a = ga(GroupSpec.dihedral(6), 3)
        e = a.wedderburn_complement()
        assert e.algebra.dim == 2
        assert e.space.intersect(a.radical().space).dim == 0
        assert e.space.dim + a.radical().dim == a.dim

    def test_wedderburn_complement_local(self):
        a = ga(GroupSpec.cyclic(4), 2)
        e = a.wedderburn_complement()
        assert e.algebra.dim == 1


class TestBlocks:
    def test_local_single_block(self):
        a = ga(GroupSpec.dihedral(8), 2)
        blocks = a.block_decomposition()
        assert len(blocks) == 1
        assert blocks[0].algebra.dim == 8

    def test_kc6_gf3_two_blocks(self):
        a = ga(GroupSpec.cyclic(6), 3)
        blocks = a.block_decomposition()
        assert len(blocks) == 2
        assert sorted(b.algebra.dim for b in blocks) == [3, 3]
        for b in blocks:
            assert b.algebra.is_local()

    def test_ks3_single_block(self):
        a = ga(GroupSpec.dihedral(6), 3)
        blocks = a.block_decomposition()
        assert len(blocks) == 1
        assert blocks[0].algebra.dim == 6

    def test_kd12_two_blocks(self):
        # D12 = C2 x S3, and kC2 over GF(3) splits off, so two copies of kS3
        a = ga(GroupSpec.dihedral(12), 3)
        blocks = a.block_decomposition()
        assert sorted(b.algebra.dim for b in blocks) == [6, 6]
        assert sum(b.algebra.dim for b in blocks) == 12

    def test_non_split_center_quotient_raises(self):
        a = ga(GroupSpec.cyclic(12), 2)  # A/J contains GF(4)
        with pytest.raises(NotSplitError):
            a.block_decomposition()


class TestMinimalPolynomial:
    def test_unit(self):
        a = ga(GroupSpec.cyclic(4), 2)
        assert list(a.minimal_polynomial(a.unit)) == [1, 1]  # t - 1 = t + 1 mod 2

    def test_generator_kc4(self):
        a = ga(GroupSpec.cyclic(4), 2)
        g = np.array([0, 1, 0, 0], dtype=np.int64)
        assert list(a.minimal_polynomial(g)) == [1, 0, 0, 0, 1]  # t^4 + 1

    def test_zero(self):
        a = ga(GroupSpec.cyclic(2), 5)
        assert list(a.minimal_polynomial(np.zeros(2, dtype=np.int64))) == [0, 1]


class TestSymmetricAndShape:
    def test_group_algebras_symmetric(self):
        for spec, p in [
            (GroupSpec.dihedral(8), 2),
            (GroupSpec.dihedral(6), 3),
            (GroupSpec.cyclic(5), 5),
        ]:
            a = ga(spec, p)
            lam = a.symmetric_form()
            assert lam is not None
            gram = np.tensordot(a.sc, lam, axes=(2, 0)) % p
            assert ffmat.rank(gram, p) == a.dim
            # trace form property: lambda(ab) = lambda(ba)
            m = (a.sc - a.sc.transpose(1, 0, 2)).reshape(-1, a.dim) % p
            assert not np.any(ffmat.matmul(m, lam[:, None], p))

    def test_triangular_not_symmetric(self):
        assert triangular2(3).is_symmetric() is False
        assert triangular2(2).is_symmetric() is False

    def test_uniserial(self):
        assert ga(GroupSpec.cyclic(4), 2).is_uniserial() is True
        assert ga(GroupSpec.elem_abelian(2, 2), 2).is_uniserial() is False
        assert ga(GroupSpec.cyclic(9), 3).is_uniserial() is True

    def test_layer_dims(self):
        a = ga(GroupSpec.cyclic(4), 2)
        assert a.layer_dims() == [1, 1, 1, 1]
        b = ga(GroupSpec.elem_abelian(2, 2), 2)
        assert b.layer_dims() == [1, 2, 1]

    def test_is_local(self):
        assert ga(GroupSpec.quaternion8(), 2).is_local() is True
        assert ga(GroupSpec.dihedral(6), 3).is_local() is False


class TestSubalgebraEmbedding:
    def test_center_embedding_checks(self):
        a = ga(GroupSpec.dihedral(8), 2)
        z = a.center()
        # embedding respects multiplication by construction; spot check
        prod = a.multiply(z.embedding[1], z.embedding[2])
        coords = z.space.coords(prod)
        assert np.array_equal(
            z.algebra.multiply(np.eye(z.algebra.dim, dtype=np.int64)[1],
                               np.eye(z.algebra.dim, dtype=np.int64)[2]),
            coords,
        )

    def test_unit_maps_to_unit(self):
        a = ga(GroupSpec.dihedral(6), 3)
        z = a.center()
        assert np.array_equal(z.embed(z.algebra.unit), a.unit)
