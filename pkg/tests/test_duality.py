import itertools

import pytest

from mhopf.actions import trivial_action, verify_module_algebra
from mhopf.aqg import make_aqg
from mhopf.duality import (
    bismash,
    bismash_faithful,
    bismash_standard_module,
    coaction_to_action,
    delta_coaction,
    dual_action,
    duality_isomorphism,
    empirical_duality_check,
    fixed_point_theorem_check,
    rl_condition_check,
    verify_coaction,
    w_conjugation,
)
from mhopf.elements import Element
from mhopf.instances import group_algebra, scalar_algebra, trivial_group
from mhopf.pairing import pair_of_aqg, pairing_action, pairing_smash
from mhopf.smash import pi_R, smash
from mhopf.scalars import sc


@pytest.fixture(scope="module")
def dual_z2(dual_pair_cz2, translation_z2, smash_translation_z2):
    return dual_action(dual_pair_cz2, smash_translation_z2)


@pytest.fixture(scope="module")
def dual_trivial_c(dual_pair_cz2):
    spec = trivial_action(dual_pair_cz2.A, scalar_algebra())
    verify_module_algebra(spec)
    return dual_action(dual_pair_cz2, smash(spec))


@pytest.fixture(scope="module")
def dual_cs3(dual_pair_cs3, smash_adjoint_cs3):
    return dual_action(dual_pair_cs3, smash_adjoint_cs3)


def b_el(p, key):
    return Element.basis(p.B.domain, key)


class TestDualAction:
    def test_point_mass_selects_group_degree(self, pair_z2, translation_z2):
        # over the canonical pair: d_q (x # lam_p) = [p=q] x # lam_p
        s = smash(translation_z2, verify="sampled")
        d = dual_action(pair_z2, s)
        x = Element.basis(s.ralg.domain, 0)
        u = s.element(x, Element.basis(s.mha.domain, 1))
        assert d.act(b_el(pair_z2, 1), u) == u
        assert d.act(b_el(pair_z2, 0), u).is_zero()

    def test_identity_of_b_acts_as_identity(self, pair_z2, translation_z2):
        s = smash(translation_z2, verify="sampled")
        d = dual_action(pair_z2, s)
        one_b = pair_z2.B.algebra.one()
        for k in s.algebra.basis:
            u = s.algebra.basis_element(k)
            assert d.act(one_b, u) == u

    def test_embedded_r_is_fixed(self, dual_z2):
        # b pi(x)(u) = pi(x) b(u) for all basis entries
        d = dual_z2
        s = d.smash
        for kx in s.ralg.basis:
            m = pi_R(s, Element.basis(s.ralg.domain, kx))
            for kb in d.pair.B.algebra.basis:
                b = b_el(d.pair, kb)
                for k in s.algebra.basis:
                    u = s.algebra.basis_element(k)
                    assert d.act(b, m.left(u)) == m.left(d.act(b, u))


class TestFixedPointTheorem:
    def test_translation_instance(self, dual_z2):
        rep = fixed_point_theorem_check(dual_z2)
        assert rep.ok, rep.summary()
        dims = rep.entries[0].witness
        assert dims is None or dims == (2, 2)

    def test_trivial_coefficients(self, dual_trivial_c):
        rep = fixed_point_theorem_check(dual_trivial_c)
        assert rep.ok

    def test_unconstrained_when_acting_algebra_trivial(self):
        g1 = trivial_group()
        gA = make_aqg(group_algebra(g1))
        pd = pair_of_aqg(gA)
        from mhopf.instances import symmetric_group_3, group_algebra as ga

        r = ga(symmetric_group_3()).algebra
        spec = trivial_action(pd.A, r)
        verify_module_algebra(spec)
        d = dual_action(pd, smash(spec))
        rep = fixed_point_theorem_check(d)
        assert rep.ok
        # the fixed subalgebra is all of M(R) = R here
        from mhopf.actions import fixed_points

        assert len(fixed_points(d.spec, "in_M_R")) == 6

    def test_cs3_instance(self, dual_cs3):
        rep = fixed_point_theorem_check(dual_cs3)
        assert rep.ok, rep.summary()


class TestWConjugation:
    def test_translation_instance(self, dual_z2):
        rep = w_conjugation(dual_z2)
        assert rep.ok, rep.summary()

    def test_trivial_action_w_is_identity(self, dual_trivial_c):
        s = dual_trivial_c.smash
        from mhopf.smash import w_map

        one = Element.basis("C", ())
        for ka in s.mha.algebra.basis:
            a = Element.basis(s.mha.domain, ka)
            assert w_map(s, one, a) == s.element(one, a)
        assert w_conjugation(dual_trivial_c).ok


class TestBismash:
    def test_dimensions(self, dual_z2):
        bis = bismash(dual_z2)
        assert bis.algebra.dim == 8

    def test_faithful(self, dual_z2, dual_trivial_c):
        assert bismash_faithful(dual_z2)
        assert bismash_faithful(dual_trivial_c)

    def test_trivial_r_reduces_to_pair_smash(self, dual_trivial_c, dual_pair_cz2):
        # ((1 # a) # b) multiplies exactly like a # b in A#B
        bis = bismash(dual_trivial_c)
        sab = pairing_smash(dual_pair_cz2, "AB")

        def strip(key):
            (kx, ka), kb = key
            return (ka, kb)

        for k1, k2 in itertools.product(bis.algebra.basis, repeat=2):
            got = bis.algebra.mul_basis(k1, k2)
            expected = sab.algebra.mul_basis(strip(k1), strip(k2))
            assert {strip(k): c for k, c in got.coeffs.items()} == dict(
                expected.coeffs
            )

    def test_standard_module_formula(self, dual_z2):
        mod = bismash_standard_module(dual_z2)
        s = dual_z2.smash
        p = dual_z2.pair
        for (ksm, kb) in mod.algebra.basis[:8]:
            u = Element.basis(mod.algebra.domain, (ksm, kb))
            for k2 in s.algebra.basis:
                v = s.algebra.basis_element(k2)
                kx2, ka2 = k2
                inner = s.element(
                    Element.basis(s.ralg.domain, kx2),
                    p.act_BonA(b_el(p, kb), Element.basis(s.mha.domain, ka2)),
                )
                assert mod.act(u, v) == s.algebra.mul(
                    s.algebra.basis_element(ksm), inner
                )


class TestDualityIsomorphism:
    def test_trivial_coefficients_cz2(self, dual_trivial_c):
        iso = duality_isomorphism(dual_trivial_c)
        assert iso.ok, iso.report.summary()

    def test_translation_cz2(self, dual_z2):
        iso = duality_isomorphism(dual_z2)
        assert iso.ok, iso.report.summary()
        assert iso.report.status_of("matrix-form-multiplicative") == "pass"

    def test_adjoint_cs3(self, dual_cs3):
        iso = duality_isomorphism(dual_cs3)
        assert iso.ok, iso.report.summary()
        assert iso.bismash.algebra.dim == 6 * 36

    def test_reduces_to_rank_one_for_trivial_coefficients(
        self, dual_trivial_c, dual_pair_cz2
    ):
        # Theta restricted to 1 (x) (A <> A^) matches the rank-one form
        from mhopf.pairing import diamond_algebra, rank_one_gamma

        iso = duality_isomorphism(dual_trivial_c)
        p = dual_pair_cz2
        sab = pairing_smash(p, "AB")
        dia = diamond_algebra(p)
        gmap = rank_one_gamma(p, sab, dia)
        for (ka, kw) in sab.algebra.basis:
            u = Element.basis(
                iso.bismash.algebra.domain, (((), ka), kw)
            )
            got = iso.theta(u)
            expected = Element(
                iso.target.domain,
                {((), k): c for k, c in gmap.table[(ka, kw)].coeffs.items()},
            )
            assert got == expected


class TestCoactions:
    def test_comultiplication_coaction_verifies(self, pair_z2):
        co = delta_coaction(pair_z2.B)
        rep = verify_coaction(co)
        assert rep.ok, rep.summary()

    def test_induced_action_is_pairing_action(self, pair_z2):
        co = delta_coaction(pair_z2.B)
        induced = coaction_to_action(co, pair_z2)
        pa = pairing_action(pair_z2, "AonB")
        for ka in pair_z2.A.algebra.basis:
            for kb in pair_z2.B.algebra.basis:
                a = Element.basis(pair_z2.A.domain, ka)
                b = Element.basis(pair_z2.B.domain, kb)
                assert induced.act(a, b) == pa.act(a, b)

    def test_rl_condition_and_empirical_duality(self, pair_z2):
        rep = rl_condition_check(pair_z2)
        assert rep.ok, rep.summary()
        co = delta_coaction(pair_z2.B)
        induced = coaction_to_action(co, pair_z2)
        verify_module_algebra(induced)
        emp = empirical_duality_check(pair_z2, induced)
        assert emp.ok, emp.summary()

    def test_infinite_delta_coaction_sampled(self, pair_z):
        co = delta_coaction(pair_z.B)
        rep = verify_coaction(co, sample_range=3)
        assert rep.ok, rep.summary()

    def test_unit_style_coaction_induces_trivial_action(self, pair_z2):
        # Gamma(x) = x (x) 1 on B: a valid coaction whose induced action is
        # multiplication by <a, 1> = eps(a)
        from mhopf.duality import Coaction

        B = pair_z2.B
        one_b = B.algebra.one()
        pd = f"pair({B.domain},{B.domain})"

        def t1(x, b):
            acc = {}
            for kx, cx in x.coeffs.items():
                for kb, cb in b.coeffs.items():
                    acc[(kx, kb)] = cx * cb
            return Element(pd, acc)

        co = Coaction(B.algebra, B, t1, t1, name="unit-style")
        rep = verify_coaction(co)
        assert rep.status_of("homomorphism") == "pass"
        induced = coaction_to_action(co, pair_z2)
        for ka in pair_z2.A.algebra.basis:
            a = Element.basis(pair_z2.A.domain, ka)
            eps = pair_z2.A.counit(a)
            for kb in B.algebra.basis:
                x = Element.basis(B.domain, kb)
                assert induced.act(a, x) == x.scale(eps)
