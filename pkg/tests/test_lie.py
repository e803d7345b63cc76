import json

import numpy as np
import pytest

from hhone import assoc, deriv, ffmat, lie
from hhone.assoc import group_algebra, truncated_polynomial_algebra
from hhone.ffmat import Subspace
from hhone.groups import GroupSpec


def heisenberg(p):
    """[x, y] = z, z central: the 3-dimensional nilpotent nonabelian algebra."""
    gamma = np.zeros((3, 3, 3), dtype=np.int64)
    gamma[0, 1, 2] = 1
    gamma[1, 0, 2] = p - 1
    return lie.LieAlgebra(gamma, p, name="heis")


class TestConstruction:
    def test_abelian(self):
        l = lie.LieAlgebra(np.zeros((3, 3, 3), dtype=np.int64), 5)
        assert l.dim == 3
        assert l.is_abelian()
        assert l.center().is_full()
        assert l.is_solvable() and l.is_nilpotent()
        assert len(l.derived_series()) == 2
        assert l.derived_series()[-1].is_zero()

    def test_dim_zero(self):
        l = lie.LieAlgebra(np.zeros((0, 0, 0), dtype=np.int64), 3)
        assert l.dim == 0
        assert l.is_perfect()

    def test_rejects_non_antisymmetric(self):
        gamma = np.zeros((2, 2, 2), dtype=np.int64)
        gamma[0, 1, 0] = 1  # [y, x] left as zero
        with pytest.raises(ValueError, match="antisymmetric"):
            lie.LieAlgebra(gamma, 3)

    def test_rejects_nonzero_self_bracket(self):
        gamma = np.zeros((2, 2, 2), dtype=np.int64)
        gamma[0, 0, 1] = 1
        with pytest.raises(ValueError):
            lie.LieAlgebra(gamma, 3)

    def test_rejects_jacobi_failure(self):
        # [x,y] = z, [y,z] = y: the cyclic sum at (x,y,z) is -z != 0
        gamma = np.zeros((3, 3, 3), dtype=np.int64)
        gamma[0, 1, 2] = 1
        gamma[1, 0, 2] = -1 % 5
        gamma[1, 2, 1] = 1
        gamma[2, 1, 1] = -1 % 5
        with pytest.raises(ValueError, match="Jacobi"):
            lie.LieAlgebra(gamma, 5)

    def test_bracket_of_vectors(self):
        l = heisenberg(7)
        x = np.array([1, 0, 0])
        y = np.array([0, 1, 0])
        assert np.array_equal(l.bracket(x, y), [0, 0, 1])
        assert np.array_equal(l.bracket(y, x), [0, 0, 6])
        assert np.array_equal(l.bracket(x, x), [0, 0, 0])


class TestWitt:
    @pytest.mark.parametrize("n,p,expected", [(1, 2, 2), (1, 3, 3), (2, 2, 8), (1, 5, 5), (2, 3, 18), (3, 2, 24)])
    def test_dimension(self, n, p, expected):
        w = lie.witt(n, p)
        assert w.dim == n * p**n == expected

    @pytest.mark.parametrize("p", [3, 5])
    def test_rank_one_brackets_match_classical_formula(self, p):
        # [t^a d, t^b d] = (b - a) t^{a+b-1} d in W(1;1)
        w = lie.witt(1, p)
        for a in range(p):
            for b in range(p):
                expected = np.zeros(p, dtype=np.int64)
                if 0 <= a + b - 1 < p:
                    expected[a + b - 1] = (b - a) % p
                assert np.array_equal(w.gamma[a, b], expected)

    def test_basis_matrices_act_as_derivations(self):
        # every x^a d_i matrix satisfies Leibniz on the truncated algebra
        t = truncated_polynomial_algebra(2, 3)
        mats = lie._witt_basis_matrices(2, 3)
        for m in mats:
            deriv.Derivation(t, m)

    def test_witt_equals_derivations_of_truncated_algebra(self):
        # W(n;1) basis spans exactly Der(k[x]/(x^p))
        for n, p in [(1, 3), (2, 2)]:
            t = truncated_polynomial_algebra(n, p)
            mats = lie._witt_basis_matrices(n, p)
            span = Subspace.from_rows(mats.reshape(len(mats), -1) % p, n=t.dim**2, p=p)
            assert span == deriv.derivations(t).space

    def test_rejects_bad_rank(self):
        with pytest.raises(ValueError):
            lie.witt(0, 3)


class TestSeries:
    def test_witt12_derived(self):
        w = lie.witt(1, 2)
        assert w.derived_subalgebra().dim == 1
        assert w.is_solvable()
        assert not w.is_perfect()

    def test_witt13_perfect_not_solvable(self):
        w = lie.witt(1, 3)
        assert w.is_perfect()
        assert not w.is_solvable()
        assert not w.is_nilpotent()
        assert w.center().is_zero()

    def test_heisenberg(self):
        l = heisenberg(3)
        assert not l.is_abelian()
        assert l.is_nilpotent()
        assert l.is_solvable()
        assert l.center().dim == 1
        assert len(l.lower_central_series()) == 3

    def test_filtration_level_two_is_nilpotent(self):
        # Der_(2) of k[t]/(t^5) over GF(5)
        t5 = truncated_polynomial_algebra(1, 5)
        level2 = deriv.der_filtration(t5)[1]
        assert level2.m == 2
        l = deriv.lie_algebra_of(level2.ders)
        assert l.is_nilpotent()


class TestIdeals:
    def test_derived_is_ideal(self):
        w = lie.witt(1, 2)
        ideal = lie.LieIdeal(w, w.derived_subalgebra())
        assert ideal.dim == 1

    def test_non_ideal_rejected(self):
        w = lie.witt(1, 3)
        line = np.zeros((1, 3), dtype=np.int64)
        line[0, 0] = 1  # span(d/dt) is not an ideal: [t^2 d, d] = -2t d
        with pytest.raises(ValueError, match="ideal"):
            lie.LieIdeal(w, Subspace.from_rows(line, n=3, p=3))

    def test_spin_to_full_in_simple(self):
        w = lie.witt(1, 3)
        seed = np.zeros((1, 3), dtype=np.int64)
        seed[0, 0] = 1
        assert lie.ideal_spin(w, seed).space.is_full()

    def test_spin_center_stays_central(self):
        l = heisenberg(5)
        ideal = lie.ideal_spin(l, l.center())
        assert ideal.dim == 1

    def test_spin_full_seed(self):
        w = lie.witt(1, 2)
        assert lie.ideal_spin(w, w.full_space()).space.is_full()

    def test_outer_derivations_with_constrained_image_spin_proper(self):
        # in Der(kC4) over GF(2), derivations with image inside the ideal
        # generated by g^2 - 1 spin to a proper nonzero Lie ideal
        a = group_algebra(GroupSpec.cyclic(4).build(), 2)
        h = deriv.hh1(a)
        g2 = np.zeros(4, dtype=np.int64)
        g2[2] = 1
        g2[0] = -1 % 2
        iq = a.ideal_from(Subspace.from_rows(g2[None], n=4, p=2))
        constrained = deriv.derivations_with_image_in(a, iq.space)
        assert constrained.dim > 0
        rows = np.stack([h.class_coords(v) for v in constrained.space.basis])
        ideal = lie.ideal_spin(h.lie, rows)
        assert 0 < ideal.dim < h.lie.dim


class TestSimplicity:
    @pytest.mark.parametrize("n,p", [(1, 3), (1, 5), (2, 2), (2, 3), (3, 2), (1, 7)])
    def test_witt_simple(self, n, p):
        v = lie.is_simple(lie.witt(n, p), seed=0)
        assert v.verdict == "simple"
        assert v.witness is None

    def test_witt12_not_simple(self):
        v = lie.is_simple(lie.witt(1, 2))
        assert v.verdict == "not_simple"
        assert v.witness is not None and v.witness.dim == 1

    def test_dim_one_not_simple(self):
        l = lie.LieAlgebra(np.zeros((1, 1, 1), dtype=np.int64), 3)
        v = lie.is_simple(l)
        assert v.verdict == "not_simple"
        assert v.witness is None

    def test_abelian_not_simple(self):
        l = lie.LieAlgebra(np.zeros((4, 4, 4), dtype=np.int64), 2)
        v = lie.is_simple(l)
        assert v.verdict == "not_simple"
        assert v.witness is not None and 0 < v.witness.dim < 4

    def test_nilpotent_not_simple(self):
        v = lie.is_simple(heisenberg(3))
        assert v.verdict == "not_simple"
        assert v.certificate["method"] == "precheck_derived"

    def test_hh1_of_non_elementary_abelian_not_simple(self):
        a = group_algebra(GroupSpec.cyclic(4).build(), 2)
        l = deriv.hh1(a).lie
        v = lie.is_simple(l)
        assert v.verdict == "not_simple"
        assert v.witness is not None
        assert 0 < v.witness.dim < l.dim

    def test_replay_is_deterministic(self):
        w = lie.witt(2, 2)
        v1 = lie.is_simple(w, seed=11)
        v2 = lie.is_simple(w, seed=11)
        assert v1.verdict == v2.verdict == "simple"
        assert v1.certificate == v2.certificate

    def test_certificate_serializes(self):
        v = lie.is_simple(lie.witt(1, 3))
        json.dumps(v.certificate)


class TestTransport:
    @pytest.mark.parametrize("n,p", [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3), (3, 2)])
    def test_hh1_of_elementary_abelian_matches_witt(self, n, p):
        g = GroupSpec.elem_abelian(p, n).build()
        h = deriv.hh1(group_algebra(g, p))
        w, c = lie.witt_transport(h, n, p)
        assert w.dim == h.dim == n * p**n
        assert ffmat.rank(c, p) == w.dim

    def test_wrong_algebra_rejected(self):
        a = group_algebra(GroupSpec.cyclic(4).build(), 2)
        h = deriv.hh1(a)
        with pytest.raises(ValueError, match="multiplicative"):
            lie.witt_transport(h, 2, 2)

    def test_wrong_size_rejected(self):
        a = group_algebra(GroupSpec.cyclic(3).build(), 3)
        h = deriv.hh1(a)
        with pytest.raises(ValueError):
            lie.witt_transport(h, 2, 3)


class TestFromHH1:
    def test_dim_one_is_abelian(self):
        a = group_algebra(GroupSpec.dihedral(6).build(), 3)
        l = lie.from_hh1(deriv.hh1(a))
        assert l.dim == 1
        assert l.is_abelian()

    def test_kc2_bracket(self):
        # HH1(kC2) has basis {d/dt, t d/dt} with [t d/dt, d/dt] = d/dt
        a = truncated_polynomial_algebra(1, 2)
        h = deriv.hh1(a)
        l = lie.from_hh1(h)
        assert l.dim == 2
        d_dt = deriv.Derivation(a, np.array([[0, 0], [1, 0]]))
        t_d_dt = deriv.Derivation(a, np.array([[0, 0], [0, 1]]))
        x = h.class_coords(d_dt)
        y = h.class_coords(t_d_dt)
        assert np.array_equal(l.bracket(y, x), x)

    def test_kc3_is_witt(self):
        a = group_algebra(GroupSpec.cyclic(3).build(), 3)
        l = lie.from_hh1(deriv.hh1(a))
        assert l.dim == 3
        assert l.is_perfect()
        assert lie.is_simple(l).verdict == "simple"
