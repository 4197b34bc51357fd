import itertools

import pytest

from mhopf.actions import fixed_points
from mhopf.elements import Element
from mhopf.instances import canonical_pair, trivial_group
from mhopf.linalg import span_rank
from mhopf.pairing import (
    DualPair,
    anti_isomorphism,
    diamond_algebra,
    diamond_matrix_units,
    heisenberg_check,
    pair_of_aqg,
    pairing_action,
    pairing_smash,
    rank_one_realization,
    scalar_fixed_points_check,
    standard_module,
    standard_module_faithful,
    verify_pairing,
)
from mhopf.scalars import ONE, sc


def a_el(p, key):
    return Element.basis(p.A.domain, key)


def b_el(p, key):
    return Element.basis(p.B.domain, key)


class TestPairingAxioms:
    def test_canonical_pairs_pass(self, pair_z2, pair_z3, pair_s3):
        for p in (pair_z2, pair_z3, pair_s3):
            rep = verify_pairing(p)
            assert rep.ok, rep.summary()
            assert all(e.status in ("pass", "skipped") for e in rep.entries)

    def test_integer_pair_sampled(self, pair_z):
        rep = verify_pairing(pair_z, sample_range=3)
        assert rep.ok, rep.summary()
        assert rep.status_of("covered-membership") == "sampled-pass"

    def test_dual_pairs_pass(self, dual_pair_cz2, dual_pair_cs3):
        for p in (dual_pair_cz2, dual_pair_cs3):
            assert verify_pairing(p).ok

    def test_constant_pairing_is_degenerate(self, pair_z2):
        corrupted = DualPair(
            pair_z2.A,
            pair_z2.B,
            lambda a, b: sc(
                sum((c.re for c in a.coeffs.values()), 0)
            ) * sc(sum((c.re for c in b.coeffs.values()), 0)),
            pair_z2.act_AonB,
            pair_z2.act_BonA,
            pair_z2.ract_AonB,
            pair_z2.ract_BonA,
            name="corrupted",
        )
        rep = verify_pairing(corrupted)
        assert rep.status_of("nondegenerate") == "fail"
        # and the constructors reject such data outright
        from mhopf.errors import Singular
        from mhopf.pairing import assert_nondegenerate

        with pytest.raises(Singular):
            assert_nondegenerate(corrupted)


class TestPairingSmash:
    def test_display_cross_check(self, pair_z2, pair_z3):
        for p in (pair_z2, pair_z3):
            for order in ("BA", "AB"):
                s = pairing_smash(p, order)
                assert s.certificates.ok, s.certificates.summary()
                assert s.certificates.status_of("pairing-product-display") == "pass"

    def test_equals_translation_smash(self, pair_z2, smash_translation_z2):
        # K(Z2)#C[Z2] built from the pair's a |> b... with roles swapped:
        # B#A here is K-side acted on by the group algebra = translation
        s_pair = pairing_smash(pair_z2, "BA")
        s_tr = smash_translation_z2
        for k1 in s_pair.algebra.basis:
            for k2 in s_pair.algebra.basis:
                assert s_pair.algebra.mul_basis(k1, k2) == Element(
                    s_pair.algebra.domain,
                    dict(s_tr.algebra.mul_basis(k1, k2).coeffs),
                )

    def test_one_dimensional_pair_is_plain_tensor(self):
        p = canonical_pair(trivial_group())
        s = pairing_smash(p, "BA")
        k = s.algebra.basis[0]
        assert s.algebra.mul_basis(k, k) == Element.basis(s.algebra.domain, k)


class TestStandardModule:
    def test_faithful(self, pair_z2, pair_z3, pair_s3):
        for p in (pair_z2, pair_z3, pair_s3):
            assert standard_module_faithful(p)

    def test_identity_like_action(self, pair_z2):
        mod, s = standard_module(pair_z2, "B_on_left")
        one_b = pair_z2.B.algebra.one()
        l0 = a_el(pair_z2, 0)
        u = s.element(one_b, l0)
        for kb in pair_z2.B.algebra.basis:
            v = b_el(pair_z2, kb)
            assert mod.act(u, v) == v

    def test_right_module_display(self, pair_z2):
        ract, s = standard_module(pair_z2, "A_on_right")
        # a'(b#a) = (a' <| b) a
        for ka2 in pair_z2.A.algebra.basis:
            for kb in pair_z2.B.algebra.basis:
                for ka in pair_z2.A.algebra.basis:
                    a2 = a_el(pair_z2, ka2)
                    u = s.element(b_el(pair_z2, kb), a_el(pair_z2, ka))
                    expected = pair_z2.A.algebra.mul(
                        pair_z2.ract_BonA(a2, b_el(pair_z2, kb)),
                        a_el(pair_z2, ka),
                    )
                    assert ract(a2, u) == expected


class TestHeisenberg:
    def test_commutation_and_inverse_twists(self, pair_z2, pair_z3, pair_s3):
        for p in (pair_z2, pair_z3, pair_s3):
            rep = heisenberg_check(p)
            assert rep.ok, rep.summary()

    def test_one_dimensional_pair_commutes(self):
        rep = heisenberg_check(canonical_pair(trivial_group()))
        assert rep.ok

    def test_integer_pair_sampled(self, pair_z):
        rep = heisenberg_check(pair_z, sample_range=3)
        assert rep.ok, rep.summary()


class TestAntiIsomorphism:
    def test_canonical_pairs(self, pair_z2, pair_z3, pair_s3):
        for p in (pair_z2, pair_z3, pair_s3):
            phi, sba, sab, rep = anti_isomorphism(p)
            assert rep.ok, rep.summary()

    def test_z2_explicit_image(self, pair_z2):
        # S = id on both sides of the Z2 pair
        phi, sba, sab, rep = anti_isomorphism(pair_z2)
        u = sba.element(b_el(pair_z2, 0), a_el(pair_z2, 1))
        assert phi(u) == sab.element(a_el(pair_z2, 1), b_el(pair_z2, 0))

    def test_composed_with_flip_gives_isomorphism(self, pair_z2):
        # anti-multiplicativity composed with the opposite product yields an
        # algebra isomorphism B#A -> (A#B)^op, checked on all products
        phi, sba, sab, rep = anti_isomorphism(pair_z2)
        for k1, k2 in itertools.product(sba.algebra.basis, repeat=2):
            u, v = sba.algebra.basis_element(k1), sba.algebra.basis_element(k2)
            assert phi(sba.algebra.mul(u, v)) == sab.algebra.mul(phi(v), phi(u))


class TestRankOneRealization:
    def test_small_duals(self, dual_pair_cz2):
        rep = rank_one_realization(dual_pair_cz2)
        assert rep.ok, rep.summary()

    def test_s3_dual(self, dual_pair_cs3):
        rep = rank_one_realization(dual_pair_cs3)
        assert rep.ok, rep.summary()
        assert rep.status_of("representation-rank") == "pass"

    def test_identity_collapse_example(self, dual_pair_cz2):
        # gamma on lam_0 # phi(lam_0 .) = lam_0 S(lam_0) <> phi(lam_0 .)
        p = dual_pair_cz2
        bridge = p.bridge
        from mhopf.pairing import diamond_algebra, rank_one_gamma

        sab = pairing_smash(p, "AB")
        dia = diamond_algebra(p)
        gmap = rank_one_gamma(p, sab, dia)
        omega = bridge.from_left_slot(a_el(p, 0))
        u = Element.zero(sab.algebra.domain)
        for kw, cw in omega.coeffs.items():
            u = u + Element.basis(sab.algebra.domain, (0, kw)).scale(cw)
        got = gmap(u)
        expected = Element.zero(dia.domain)
        for kw, cw in omega.coeffs.items():
            expected = expected + Element.basis(dia.domain, (0, kw)).scale(cw)
        assert got == expected

    def test_diamond_matrix_units(self, dual_pair_cz2, dual_pair_cs3):
        for p, n in ((dual_pair_cz2, 2), (dual_pair_cs3, 6)):
            to_mu, n2, P, P_inv = diamond_matrix_units(p)
            assert n2 == n
            dia = diamond_algebra(p)
            images = [to_mu(k) for k in dia.basis]
            assert span_rank(images) == n * n


class TestScalarFixedPoints:
    def test_canonical_pairs(self, pair_z2, pair_z3, pair_s3):
        for p in (pair_z2, pair_z3, pair_s3):
            rep = scalar_fixed_points_check(p)
            assert rep.ok, rep.summary()
