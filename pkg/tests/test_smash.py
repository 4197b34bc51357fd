import itertools

import pytest

from mhopf.actions import CocycleData, inner_action_from, verify_module_algebra
from mhopf.algebras import Multiplier, multiplier_product
from mhopf.elements import Element
from mhopf.errors import CommutationFailed, NotInner, UnverifiedAction
from mhopf.instances import (
    matrix_algebra,
    scalar_algebra,
    translation_action,
)
from mhopf.linalg import span_rank
from mhopf.scalars import ONE, sc
from mhopf.smash import (
    CovariantModule,
    PlainModule,
    algebras_match,
    cocycle_isomorphism,
    covariant_to_module,
    group_crossed_product_oracle,
    inner_trivialization,
    module_representation_rank,
    module_to_covariant,
    pi_A,
    pi_R,
    smash,
    universal_map,
    verify_covariant,
    verify_pi_relations,
    w_inv_map,
    w_map,
)


def b(h, key):
    return Element.basis(h.domain, key)


class TestConstruction:
    def test_certificates(self, smash_translation_z2):
        assert smash_translation_z2.certificates.ok

    def test_requires_verified_action(self, z2):
        spec = translation_action(z2)  # fresh, unverified
        with pytest.raises(UnverifiedAction):
            smash(spec)

    def test_twisted_product_example(self, smash_translation_z2):
        s = smash_translation_z2
        d0 = Element.basis(s.ralg.domain, 0)
        l1 = Element.basis(s.mha.domain, 1)
        l0 = Element.basis(s.mha.domain, 0)
        u = s.element(d0, l1)
        v = s.element(d0, l0)
        # d0 * (l1 |> d0) = d0 * d1 = 0
        assert s.algebra.mul(u, v).is_zero()

    def test_trivial_action_gives_tensor_product(self, trivial_cs3):
        s = smash(trivial_cs3, verify="sampled")
        keys = s.algebra.basis[:8]
        for k1, k2 in itertools.product(keys, repeat=2):
            (x1, a1), (x2, a2) = k1, k2
            prod = s.algebra.mul_basis(k1, k2)
            xx = trivial_cs3.ralg.mul_basis(x1, x2)
            aa = trivial_cs3.mha.algebra.mul_basis(a1, a2)
            expected = {}
            for kx, cx in xx.coeffs.items():
                for ka, ca in aa.coeffs.items():
                    expected[(kx, ka)] = cx * ca
            assert dict(prod.coeffs) == expected

    def test_unit_embeddings_multiply(self, smash_translation_z2):
        s = smash_translation_z2
        one_r = s.ralg.identity
        for ka in s.mha.algebra.basis:
            for kb in s.mha.algebra.basis:
                a, a2 = Element.basis(s.mha.domain, ka), Element.basis(s.mha.domain, kb)
                lhs = s.algebra.mul(s.element(one_r, a), s.element(one_r, a2))
                assert lhs == s.element(one_r, s.mha.algebra.mul(a, a2))


class TestCrossedProductOracle:
    @pytest.mark.parametrize("gname", ["Z2", "Z3"])
    def test_matches_twisted_convolution(self, gname):
        from mhopf.instances import get_group

        g = get_group(gname)
        spec = translation_action(g)
        verify_module_algebra(spec)
        s = smash(spec)
        oracle = group_crossed_product_oracle(
            g, spec.ralg, lambda q, x: spec.act(Element.basis(spec.mha.domain, q), x)
        )
        assert algebras_match(oracle, s.algebra, lambda k: (k[1], k[0])) is None


class TestPiEmbeddings:
    def test_relations_and_ranks(self, smash_translation_z2):
        rep = verify_pi_relations(smash_translation_z2)
        assert rep.ok, rep.summary()

    def test_example_product(self, smash_translation_z2):
        s = smash_translation_z2
        l1 = Element.basis(s.mha.domain, 1)
        d0 = Element.basis(s.ralg.domain, 0)
        d1 = Element.basis(s.ralg.domain, 1)
        prod = multiplier_product(pi_A(s, l1), pi_R(s, d0))
        expected = Multiplier.from_element(s.algebra, s.element(d1, l1))
        assert prod.equals_on(expected, s.algebra.basis_elements())

    def test_multiplier_of_r_embeds(self, smash_translation_z2):
        s = smash_translation_z2
        m = pi_R(s, Multiplier.one(s.ralg))
        assert m.equals_on(Multiplier.one(s.algebra), s.algebra.basis_elements())

    def test_w_maps_are_mutually_inverse(self, smash_translation_z2):
        s = smash_translation_z2
        for kx in s.ralg.basis:
            for ka in s.mha.algebra.basis:
                u = s.element(
                    Element.basis(s.ralg.domain, kx), Element.basis(s.mha.domain, ka)
                )
                pairs = w_inv_map(s, u)
                back = Element.zero(s.algebra.domain)
                for (kr, kA), c in pairs.coeffs.items():
                    back = back + w_map(
                        s,
                        Element.basis(s.ralg.domain, kr),
                        Element.basis(s.mha.domain, kA),
                    ).scale(c)
                assert back == u

    def test_w_translation_example(self, smash_translation_z2):
        s = smash_translation_z2
        d0 = Element.basis(s.ralg.domain, 0)
        d1 = Element.basis(s.ralg.domain, 1)
        l1 = Element.basis(s.mha.domain, 1)
        assert w_map(s, d0, l1) == s.element(d1, l1)


class TestUniversalProperty:
    def _rhos(self, s):
        m2 = matrix_algebra(2, scalar_algebra())

        def rho_R(kx):
            return Multiplier.from_element(m2, Element.basis(m2.domain, (kx, kx, ())))

        def rho_A(ka):
            acc = {((q + ka) % 2, q, ()): ONE for q in (0, 1)}
            return Multiplier.from_element(m2, Element(m2.domain, acc))

        return m2, rho_A, rho_R

    def test_standard_covariant_pair_surjects(self, smash_translation_z2):
        s = smash_translation_z2
        m2, rho_A, rho_R = self._rhos(s)
        phi = universal_map(s, m2, rho_A, rho_R)
        imgs = [phi(s.algebra.basis_element(k)).apply_to_identity() for k in s.algebra.basis]
        assert span_rank(imgs) == 4

    def test_identity_through_own_embeddings(self, smash_translation_z2):
        s = smash_translation_z2
        phi = universal_map(
            s, s.algebra, lambda ka: pi_A(s, Element.basis(s.mha.domain, ka)),
            lambda kx: pi_R(s, Element.basis(s.ralg.domain, kx)),
        )
        for k in s.algebra.basis:
            got = phi(s.algebra.basis_element(k)).apply_to_identity()
            assert got == s.algebra.basis_element(k)

    def test_swapped_rhos_fail_commutation(self, smash_translation_z2):
        s = smash_translation_z2
        m2, rho_A, rho_R = self._rhos(s)
        with pytest.raises(CommutationFailed) as exc:
            universal_map(s, m2, lambda k: rho_R(0), lambda k: rho_A(1))
        assert exc.value.witness is not None


class TestCovariantModules:
    def _c2_module(self, spec):
        vdom = "V2"

        def a_act(a, v):
            out = Element.zero(vdom)
            for p, ca in a.coeffs.items():
                out = out + Element(
                    vdom, {(q + p) % 2: cv * ca for q, cv in v.coeffs.items()}
                )
            return out

        def r_act(x, v):
            return Element(
                vdom,
                {q: cv * x.coeffs[q] for q, cv in v.coeffs.items() if q in x.coeffs},
            )

        return CovariantModule(
            action=spec,
            space_domain=vdom,
            space_basis=[0, 1],
            a_act=a_act,
            r_act=r_act,
            v_witness=lambda v: [(spec.mha.algebra.one(), v)],
        )

    def test_group_covariant_representation(self, translation_z2):
        cov = self._c2_module(translation_z2)
        rep = verify_covariant(cov)
        assert rep.ok, rep.summary()

    def test_round_trip(self, translation_z2, smash_translation_z2):
        cov = self._c2_module(translation_z2)
        mod = covariant_to_module(cov, smash_translation_z2)
        s = smash_translation_z2
        # module law over the smash product
        for k1, k2 in itertools.product(s.algebra.basis, repeat=2):
            for kv in (0, 1):
                e1 = s.algebra.basis_element(k1)
                e2 = s.algebra.basis_element(k2)
                v = Element.basis("V2", kv)
                assert mod.act(s.algebra.mul(e1, e2), v) == mod.act(
                    e1, mod.act(e2, v)
                )
        back = module_to_covariant(mod, s)
        for ka in (0, 1):
            for kv in (0, 1):
                a = Element.basis(s.mha.domain, ka)
                v = Element.basis("V2", kv)
                assert back.a_act(a, v) == cov.a_act(a, v)
        for kx in (0, 1):
            for kv in (0, 1):
                x = Element.basis(s.ralg.domain, kx)
                v = Element.basis("V2", kv)
                assert back.r_act(x, v) == cov.r_act(x, v)

    def test_unitality_and_nondegeneracy_transfer(
        self, translation_z2, smash_translation_z2
    ):
        # the induced smash module is unital exactly because both the R- and
        # A-actions are, and non-degenerate when the R-action is
        cov = self._c2_module(translation_z2)
        s = smash_translation_z2
        mod = covariant_to_module(cov, s)
        one = s.algebra.identity
        for kv in (0, 1):
            v = Element.basis("V2", kv)
            assert mod.act(one, v) == v
            assert cov.r_act(s.ralg.identity, v) == v
            assert cov.a_act(s.mha.algebra.one(), v) == v
        # non-degeneracy: no nonzero v is killed by every x#a
        from mhopf.linalg import Matrix

        rows = []
        for k in s.algebra.basis:
            u = s.algebra.basis_element(k)
            row0 = mod.act(u, Element.basis("V2", 0))
            row1 = mod.act(u, Element.basis("V2", 1))
            for out in (0, 1):
                rows.append([row0.coeff(out), row1.coeff(out)])
        assert not Matrix(rows).nullspace()

    def test_left_regular_covariant_module(self, translation_z2, smash_translation_z2):
        # V = R with r_act = multiplication and a_act = the action
        spec = translation_z2
        cov = CovariantModule(
            action=spec,
            space_domain=spec.ralg.domain,
            space_basis=spec.ralg.basis,
            a_act=spec.act,
            r_act=spec.ralg.mul,
            v_witness=lambda v: [(spec.mha.algebra.one(), v)],
        )
        assert verify_covariant(cov).ok
        mod = covariant_to_module(cov, smash_translation_z2)
        s = smash_translation_z2
        for (kx, ka) in s.algebra.basis:
            for kx2 in spec.ralg.basis:
                u = s.element(
                    Element.basis(spec.ralg.domain, kx),
                    Element.basis(spec.mha.domain, ka),
                )
                x2 = Element.basis(spec.ralg.domain, kx2)
                expected = spec.ralg.mul(
                    Element.basis(spec.ralg.domain, kx),
                    spec.act(Element.basis(spec.mha.domain, ka), x2),
                )
                assert mod.act(u, x2) == expected


class TestInnerTrivialization:
    def test_abelian_adjoint_still_trivialises(self, cz2):
        from mhopf.actions import adjoint_action

        adj = adjoint_action(cz2)
        verify_module_algebra(adj)
        s = smash(adj)
        gamma = lambda k: Multiplier.from_element(cz2.algebra, b(cz2, k))
        phi, psi, target = inner_trivialization(s, gamma)
        for k in s.algebra.basis:
            assert psi(phi(s.algebra.basis_element(k))) == s.algebra.basis_element(k)
        for k1, k2 in itertools.product(s.algebra.basis, repeat=2):
            e1, e2 = s.algebra.basis_element(k1), s.algebra.basis_element(k2)
            assert phi(s.algebra.mul(e1, e2)) == target.mul(phi(e1), phi(e2))

    def test_translation_is_not_inner(self, smash_translation_z2):
        s = smash_translation_z2
        gamma = lambda k: Multiplier.one(s.ralg).scale(s.mha.counit_key(k))
        with pytest.raises(NotInner):
            inner_trivialization(s, gamma)

    def test_trivial_action_trivialises_by_identity_reindexing(self, trivial_cs3):
        s = smash(trivial_cs3, verify="sampled")
        gamma = lambda k: Multiplier.one(s.ralg).scale(s.mha.counit_key(k))
        phi, psi, target = inner_trivialization(s, gamma)
        for k in s.algebra.basis[:12]:
            assert phi(s.algebra.basis_element(k)) == Element.basis(target.domain, k)


class TestCocycleIsomorphism:
    def test_scalar_cocycle_gives_identity_reindexing(self, translation_z2):
        spec = translation_z2
        h = spec.mha
        gamma = lambda k: Multiplier.one(spec.ralg).scale(h.counit_key(k))
        phi, psi, s1, s2 = cocycle_isomorphism(CocycleData(gamma), spec, spec)
        for k in s2.algebra.basis:
            assert phi(s2.algebra.basis_element(k)) == s1.algebra.basis_element(k)
            assert psi(s1.algebra.basis_element(k)) == s2.algebra.basis_element(k)


class TestStandardModule:
    def test_action_on_r_is_faithful_here(self, smash_translation_z2):
        s = smash_translation_z2
        mod = PlainModule(
            s.algebra,
            s.ralg.domain,
            s.ralg.basis,
            lambda u, x: _std_act(s, u, x),
            name="std",
        )
        assert module_representation_rank(mod) == s.algebra.dim


def _std_act(s, u, x):
    out = Element.zero(s.ralg.domain)
    for (kx, ka), c in u.coeffs.items():
        out = out + s.ralg.mul(
            Element.basis(s.ralg.domain, kx),
            s.action.act(Element.basis(s.mha.domain, ka), x),
        ).scale(c)
    return out
