"""Smash products R#A and their structure maps.

The underlying space is R (x) A with the twisted product

    (x # a)(x' # a') = sum x (a_(1) x') # a_(2) a'

grounded by covering the second coproduct leg with a' and contracting the
first against x' through the action.  Construction attaches certificates
(associativity, zero radicals, agreement with the twist-map form of the
product); consumers can demand a verified action first.

Also here: the multiplier embeddings of A and R into M(R#A), the universal
property, covariant modules, the tensor-product trivialisation for inner
actions, the isomorphism of smash products for cocycle-equivalent actions,
and the twisted-convolution oracle for group crossed products.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .actions import ActionSpec, extend_action_to_multipliers
from .algebras import Algebra, Multiplier, multiplier_product, radicals
from .elements import Element, add_into
from .errors import (
    AlgebraMismatch,
    CocycleInvalid,
    CommutationFailed,
    NotHopf,
    NotInner,
    UnverifiedAction,
)
from .linalg import span_rank
from .mha import RegularMHA
from .reports import Report


@dataclass
class SmashProduct:
    action: ActionSpec
    algebra: Algebra
    certificates: Report = field(default_factory=Report)

    @property
    def mha(self) -> RegularMHA:
        return self.action.mha

    @property
    def ralg(self) -> Algebra:
        return self.action.ralg

    def element(self, x: Element, a: Element) -> Element:
        """x # a as an element of the smash algebra."""
        acc = {}
        for kx, cx in x.coeffs.items():
            for ka, ca in a.coeffs.items():
                acc[(kx, ka)] = cx * ca
        return Element(self.algebra.domain, acc)

    def basis_key(self, kx, ka):
        return (kx, ka)


def smash(action: ActionSpec, verify: str = "full", seed: int = 0) -> SmashProduct:
    """Build R#A; ``verify`` is 'full' (finite instances) or 'sampled'.

    Raises :class:`UnverifiedAction` unless the action has passed
    verify_module_algebra (call it first, or construct via helpers that do).
    """
    if not action.verified:
        raise UnverifiedAction(action.name)
    h = action.mha
    R = action.ralg
    domain = f"smash({R.domain},{h.domain})"

    def mul_basis(k1, k2):
        kx, ka = k1
        kx2, ka2 = k2
        t = h.t1(Element.basis(h.domain, ka), Element.basis(h.domain, ka2))
        acc: dict = {}
        x = Element.basis(R.domain, kx)
        x2 = Element.basis(R.domain, kx2)
        for (p, q), c in t.coeffs.items():
            left = R.mul(x, action.act(Element.basis(h.domain, p), x2))
            for kk, cc in left.coeffs.items():
                add_into(acc, (kk, q), c * cc)
        return Element(domain, acc, _canon=True)

    basis = None
    if R.is_finite and h.algebra.is_finite:
        basis = [(kx, ka) for kx in R.basis for ka in h.algebra.basis]
    identity = None
    if R.identity is not None and h.has_identity:
        acc = {}
        for kx, cx in R.identity.coeffs.items():
            for ka, ca in h.algebra.one().coeffs.items():
                acc[(kx, ka)] = cx * ca
        identity = Element(domain, acc)
    window = None
    if basis is None:

        def window(n):
            return [
                (kx, ka)
                for kx in R.sample_keys(n)
                for ka in h.algebra.sample_keys(n)
            ]

    alg = Algebra(
        domain,
        mul_basis,
        basis=basis,
        identity=identity,
        key_window=window,
        name=domain,
    )
    s = SmashProduct(action, alg)
    s.certificates = _certify(s, verify, seed)
    return s


def _certify(s: SmashProduct, verify: str, seed: int) -> Report:
    rep = Report(instance=s.algebra.name)
    alg = s.algebra
    exhaustive = verify == "full" and alg.is_finite
    status = "pass" if exhaustive else "sampled-pass"

    if exhaustive:
        triples = [
            (k1, k2, k3)
            for k1 in alg.basis
            for k2 in alg.basis
            for k3 in alg.basis
        ]
    else:
        keys = alg.sample_keys(4)
        rng = random.Random(seed)
        triples = [
            (rng.choice(keys), rng.choice(keys), rng.choice(keys))
            for _ in range(200)
        ]
    witness = None
    for k1, k2, k3 in triples:
        a = alg.basis_element(k1)
        b = alg.basis_element(k2)
        c = alg.basis_element(k3)
        if alg.mul(alg.mul(a, b), c) != alg.mul(a, alg.mul(b, c)):
            witness = (k1, k2, k3)
            break
    rep.add("associativity", witness is None, status, witness)

    if exhaustive:
        lk, rk = radicals(alg)
        rep.add("radical-left-zero", not lk, "pass", lk[:1] or None)
        rep.add("radical-right-zero", not rk, "pass", rk[:1] or None)
    else:
        rep.skip("radical-left-zero", "sampled verification")
        rep.skip("radical-right-zero", "sampled verification")

    # product equals (m (x) m)(id (x) Gamma (x) id), the twist-map form
    witness = None
    pairs = (
        [(k1, k2) for k1 in alg.basis for k2 in alg.basis]
        if exhaustive
        else [(rng.choice(keys), rng.choice(keys)) for _ in range(100)]
    )
    for k1, k2 in pairs:
        (kx, ka), (kx2, ka2) = k1, k2
        direct = alg.mul_basis(k1, k2)
        tw = twist(s.action, Element.basis(s.mha.domain, ka), Element.basis(s.ralg.domain, kx2))
        acc: dict = {}
        x = Element.basis(s.ralg.domain, kx)
        for (kr, kA), c in tw.coeffs.items():
            left = s.ralg.mul(x, Element.basis(s.ralg.domain, kr))
            right = s.mha.algebra.mul_basis(kA, ka2)
            for kk, cc in left.coeffs.items():
                for kq, cq in right.coeffs.items():
                    add_into(acc, (kk, kq), c * cc * cq)
        if Element(alg.domain, acc) != direct:
            witness = (k1, k2)
            break
    rep.add("twist-map-product", witness is None, status, witness)
    return rep


def recertify(s: SmashProduct, verify: str = "full", seed: int = 0) -> Report:
    """Force recomputation of the construction certificates."""
    s.certificates = _certify(s, verify, seed)
    return s.certificates


def twist(action: ActionSpec, a: Element, x: Element):
    """Gamma(a (x) x) = sum a_(1) x (x) a_(2), grounded through witnesses.

    Returned with legs (R, A) as a tensor-like Element over pair keys.
    """
    h = action.mha
    acc: dict = {}
    for b, z in action.witness(x):
        t = h.t3(a, b)
        for (u, v), c in t.coeffs.items():
            img = action.act(Element.basis(h.domain, u), z)
            for kr, cr in img.coeffs.items():
                add_into(acc, (kr, v), c * cr)
    return Element(f"twist({action.ralg.domain},{h.domain})", acc, _canon=True)


# -- the W bijection of R (x) A onto R#A --------------------------------------


def w_map(s: SmashProduct, x: Element, a: Element) -> Element:
    """W(x (x) a) = sum a_(1) x # a_(2)."""
    h = s.mha
    acc: dict = {}
    for b, z in s.action.witness(x):
        t = h.t3(a, b)
        for (u, v), c in t.coeffs.items():
            img = s.action.act(Element.basis(h.domain, u), z)
            for kr, cr in img.coeffs.items():
                add_into(acc, (kr, v), c * cr)
    return Element(s.algebra.domain, acc, _canon=True)


def w_inv_map(s: SmashProduct, u: Element) -> Element:
    """W^-1(x # a) = sum S^-1(a_(1)) x (x) a_(2), over pair keys (r, a)."""
    h = s.mha
    act = s.action.act
    acc: dict = {}
    for (kx, ka), c in u.coeffs.items():
        x = Element.basis(s.ralg.domain, kx)
        a = Element.basis(h.domain, ka)
        for b, z in s.action.witness(x):
            # S_inv(a_(1)) b = S_inv(a_(1) S(b)): inner right cover on leg 1
            t = h.t3(a, h.antipode(b))
            for (w, v), cc in t.coeffs.items():
                img = act(h.antipode_inv(Element.basis(h.domain, w)), z)
                for kr, cr in img.coeffs.items():
                    add_into(acc, (kr, v), c * cc * cr)
    return Element(f"twist({s.ralg.domain},{h.domain})", acc, _canon=True)


# -- multiplier embeddings ------------------------------------------------------


def pi_A(s: SmashProduct, a: Element) -> Multiplier:
    """pi(a)(x'#a') = sum a_(1) x' # a_(2) a';  (x'#a') pi(a) = x' # a' a."""
    h = s.mha
    alg = s.algebra
    act = s.action.act

    def left(u: Element) -> Element:
        acc: dict = {}
        for (kx, ka2), c in u.coeffs.items():
            t = h.t1(a, Element.basis(h.domain, ka2))
            x2 = Element.basis(s.ralg.domain, kx)
            for (p, q), cc in t.coeffs.items():
                img = act(Element.basis(h.domain, p), x2)
                for kr, cr in img.coeffs.items():
                    add_into(acc, (kr, q), c * cc * cr)
        return Element(alg.domain, acc, _canon=True)

    def right(u: Element) -> Element:
        acc: dict = {}
        for (kx, ka2), c in u.coeffs.items():
            prod = h.algebra.mul(Element.basis(h.domain, ka2), a)
            for kq, cq in prod.coeffs.items():
                add_into(acc, (kx, kq), c * cq)
        return Element(alg.domain, acc, _canon=True)

    return Multiplier(alg, left, right)


def pi_R(s: SmashProduct, x) -> Multiplier:
    """Embedding of R (or of M(R), given a Multiplier) into M(R#A)."""
    if isinstance(x, Multiplier):
        return _pi_R_multiplier(s, x)
    alg = s.algebra
    h = s.mha
    act = s.action.act

    def left(u: Element) -> Element:
        acc: dict = {}
        for (kx2, ka2), c in u.coeffs.items():
            prod = s.ralg.mul(x, Element.basis(s.ralg.domain, kx2))
            for kr, cr in prod.coeffs.items():
                add_into(acc, (kr, ka2), c * cr)
        return Element(alg.domain, acc, _canon=True)

    def right(u: Element) -> Element:
        # (x'#a') pi(x) = sum x'(a'_(1) x) # a'_(2)
        acc: dict = {}
        for (kx2, ka2), c in u.coeffs.items():
            x2 = Element.basis(s.ralg.domain, kx2)
            a2 = Element.basis(h.domain, ka2)
            for b, z in s.action.witness(x):
                t = h.t3(a2, b)
                for (p, q), cc in t.coeffs.items():
                    img = s.ralg.mul(x2, act(Element.basis(h.domain, p), z))
                    for kr, cr in img.coeffs.items():
                        add_into(acc, (kr, q), c * cc * cr)
        return Element(alg.domain, acc, _canon=True)

    return Multiplier(alg, left, right)


def _pi_R_multiplier(s: SmashProduct, m: Multiplier) -> Multiplier:
    """pi(m) for m in M(R): pi(m)(x#a) = m x # a, and on the right through
    the W-parametrisation pi(a)pi(x) = W(x (x) a)."""
    alg = s.algebra

    def left(u: Element) -> Element:
        acc: dict = {}
        for (kx, ka), c in u.coeffs.items():
            img = m.left(Element.basis(s.ralg.domain, kx))
            for kr, cr in img.coeffs.items():
                add_into(acc, (kr, ka), c * cr)
        return Element(alg.domain, acc, _canon=True)

    def right(u: Element) -> Element:
        pairs = w_inv_map(s, u)  # u = sum pi(a_i) pi(x_i) with (x_i, a_i) here
        out = Element.zero(alg.domain)
        for (kr, ka), c in pairs.coeffs.items():
            xm = m.right(Element.basis(s.ralg.domain, kr))
            out = out + w_map(s, xm, Element.basis(s.mha.domain, ka)).scale(c)
        return out

    return Multiplier(alg, left, right)


def verify_pi_relations(s: SmashProduct, sample_range: int = 4) -> Report:
    """pi(x)pi(a) = x#a, pi(a)pi(x) = sum a_(1)x # a_(2), homomorphisms,
    and the spanning ranks pi(R)pi(A) = pi(A)pi(R) = R#A."""
    rep = Report(instance=s.algebra.name)
    h = s.mha
    R = s.ralg
    alg = s.algebra
    rkeys = R.sample_keys(sample_range)
    akeys = h.algebra.sample_keys(sample_range)
    skeys = alg.sample_keys(sample_range)
    sample = [alg.basis_element(k) for k in skeys]
    exhaustive = alg.is_finite
    status = "pass" if exhaustive else "sampled-pass"

    witness = None
    prods_xa = []
    prods_ax = []
    for kx in rkeys:
        x = Element.basis(R.domain, kx)
        px = pi_R(s, x)
        for ka in akeys:
            a = Element.basis(h.domain, ka)
            pa = pi_A(s, a)
            xa = multiplier_product(px, pa)
            expected = s.element(x, a)
            if not xa.equals_on(Multiplier.from_element(alg, expected), sample):
                witness = ("pi(x)pi(a)", kx, ka)
                break
            ax = multiplier_product(pa, px)
            expected2 = w_map(s, x, a)
            if not ax.equals_on(Multiplier.from_element(alg, expected2), sample):
                witness = ("pi(a)pi(x)", kx, ka)
                break
            prods_xa.append(expected)
            prods_ax.append(expected2)
        if witness:
            break
    rep.add("pi-products", witness is None, status, witness)

    witness = None
    for k1 in akeys:
        for k2 in akeys:
            a1, a2 = Element.basis(h.domain, k1), Element.basis(h.domain, k2)
            lhs = multiplier_product(pi_A(s, a1), pi_A(s, a2))
            rhs = pi_A(s, h.algebra.mul(a1, a2))
            if not lhs.equals_on(rhs, sample):
                witness = ("pi_A", k1, k2)
                break
        if witness:
            break
    for k1 in rkeys:
        for k2 in rkeys:
            x1, x2 = Element.basis(R.domain, k1), Element.basis(R.domain, k2)
            lhs = multiplier_product(pi_R(s, x1), pi_R(s, x2))
            rhs = pi_R(s, R.mul(x1, x2))
            if not lhs.equals_on(rhs, sample):
                witness = ("pi_R", k1, k2)
                break
        if witness:
            break
    rep.add("pi-homomorphisms", witness is None, status, witness)

    if alg.is_finite:
        rank_needed = alg.dim
        rep.add("span-pi(R)pi(A)", span_rank(prods_xa) == rank_needed, "pass")
        rep.add("span-pi(A)pi(R)", span_rank(prods_ax) == rank_needed, "pass")
    else:
        rep.skip("span-pi(R)pi(A)", "infinite-dimensional")
        rep.skip("span-pi(A)pi(R)", "infinite-dimensional")
    return rep


# -- universal property -----------------------------------------------------------


def universal_map(
    s: SmashProduct,
    target: Algebra,
    rho_A: Callable,
    rho_R: Callable,
    sample_range: int = 4,
) -> Callable:
    """The homomorphism x#a -> rho_R(x) rho_A(a) into M(target).

    ``rho_A`` / ``rho_R`` take basis keys to Multipliers of the target.
    The commutation hypothesis rho_A(a) rho_R(x) = sum rho_R(a_(1) x)
    rho_A(a_(2)) is checked on basis pairs first; failure raises
    :class:`CommutationFailed` with the witnessing pair.  The returned map
    is certified multiplicative on basis pairs of the smash product.
    """
    h = s.mha
    R = s.ralg
    tsample = [target.basis_element(k) for k in target.sample_keys(sample_range)]

    def rho_A_el(a: Element) -> Multiplier:
        out = None
        for k, c in a.coeffs.items():
            m = rho_A(k).scale(c)
            out = m if out is None else out.add(m)
        return out

    def rho_R_el(x: Element) -> Multiplier:
        out = None
        for k, c in x.coeffs.items():
            m = rho_R(k).scale(c)
            out = m if out is None else out.add(m)
        return out

    for ka in h.algebra.sample_keys(sample_range):
        a = Element.basis(h.domain, ka)
        for kx in R.sample_keys(sample_range):
            x = Element.basis(R.domain, kx)
            lhs = multiplier_product(rho_A_el(a), rho_R_el(x))
            rhs = None
            for b, z in s.action.witness(x):
                t = h.t3(a, b)
                for (u, v), c in t.coeffs.items():
                    term = multiplier_product(
                        rho_R_el(s.action.act(Element.basis(h.domain, u), z)),
                        rho_A_el(Element.basis(h.domain, v)),
                    ).scale(c)
                    rhs = term if rhs is None else rhs.add(term)
            if not lhs.equals_on(rhs, tsample):
                raise CommutationFailed(
                    "rho_A(a) rho_R(x) != sum rho_R(a_(1)x) rho_A(a_(2))",
                    witness=(ka, kx),
                )

    def mapped(u: Element) -> Multiplier:
        out = None
        for (kx, ka), c in u.coeffs.items():
            m = multiplier_product(rho_R(kx), rho_A(ka)).scale(c)
            out = m if out is None else out.add(m)
        if out is None:
            zero = Element.zero(target.domain)
            return Multiplier(target, lambda t: zero, lambda t: zero)
        return out

    # multiplicativity certificate on smash basis pairs
    skeys = s.algebra.sample_keys(sample_range)
    for k1 in skeys:
        for k2 in skeys:
            e1 = s.algebra.basis_element(k1)
            e2 = s.algebra.basis_element(k2)
            lhs = mapped(s.algebra.mul(e1, e2))
            rhs = multiplier_product(mapped(e1), mapped(e2))
            if not lhs.equals_on(rhs, tsample):
                raise CommutationFailed(
                    "universal map failed multiplicativity", witness=(k1, k2)
                )
    return mapped


# -- covariant modules ---------------------------------------------------------------


@dataclass
class PlainModule:
    """A left module over a plain algebra (no Hopf structure needed)."""

    algebra: Algebra
    space_domain: str
    space_basis: list | None
    act: Callable
    witness: Callable | None = None
    name: str = "module"


@dataclass
class CovariantModule:
    """One space carrying compatible A- and R-module structures.

    Covariance: a (x v) = sum (a_(1) x)(a_(2) v), tying the A-action on V
    to the action of A on R.
    """

    action: ActionSpec  # the A-action on R
    space_domain: str
    space_basis: list | None
    a_act: Callable  # Element_A x Element_V -> Element_V
    r_act: Callable  # Element_R x Element_V -> Element_V
    v_witness: Callable | None = None  # unitality over A, for the second form
    name: str = "covariant"


def verify_covariant(c: CovariantModule, sample_range: int = 4) -> Report:
    rep = Report(instance=c.name)
    s = c.action
    h = s.mha
    akeys = h.algebra.sample_keys(sample_range)
    rkeys = s.ralg.sample_keys(sample_range)
    vkeys = (
        c.space_basis if c.space_basis is not None else []
    )
    exhaustive = c.space_basis is not None and h.algebra.is_finite
    status = "pass" if exhaustive else "sampled-pass"

    witness = None
    for ka in akeys:
        a = Element.basis(h.domain, ka)
        for kx in rkeys:
            x = Element.basis(s.ralg.domain, kx)
            for kv in vkeys:
                v = Element.basis(c.space_domain, kv)
                lhs = c.a_act(a, c.r_act(x, v))
                rhs = Element.zero(c.space_domain)
                for b, z in s.witness(x):
                    t = h.t3(a, b)
                    for (u, w), cc in t.coeffs.items():
                        rhs = rhs + c.r_act(
                            s.act(Element.basis(h.domain, u), z),
                            c.a_act(Element.basis(h.domain, w), v),
                        ).scale(cc)
                if lhs != rhs:
                    witness = (ka, kx, kv)
                    break
            if witness:
                break
        if witness:
            break
    rep.add("covariance", witness is None, status, witness)

    if c.v_witness is not None:
        witness = None
        for ka in akeys:
            a = Element.basis(h.domain, ka)
            for kx in rkeys:
                x = Element.basis(s.ralg.domain, kx)
                for kv in vkeys:
                    v = Element.basis(c.space_domain, kv)
                    lhs = c.r_act(s.act(a, x), v)
                    rhs = Element.zero(c.space_domain)
                    for b, z in c.v_witness(v):
                        # S(a_(2)) b = S(S_inv(b) a_(2))
                        t = h.t4(a, h.antipode_inv(b))
                        for (u, w), cc in t.coeffs.items():
                            inner = c.a_act(
                                h.antipode(Element.basis(h.domain, w)), z
                            )
                            rhs = rhs + c.a_act(
                                Element.basis(h.domain, u), c.r_act(x, inner)
                            ).scale(cc)
                    if lhs != rhs:
                        witness = (ka, kx, kv)
                        break
                if witness:
                    break
            if witness:
                break
        rep.add("covariance-unital-form", witness is None, status, witness)
    return rep


def covariant_to_module(c: CovariantModule, s: SmashProduct) -> PlainModule:
    """(x#a) v = x (a v); the induced unital R#A-module."""
    if s.action.name != c.action.name or s.ralg.domain != c.action.ralg.domain:
        raise AlgebraMismatch("covariant data built over a different action")

    def act(u: Element, v: Element) -> Element:
        out = Element.zero(c.space_domain)
        for (kx, ka), cc in u.coeffs.items():
            out = out + c.r_act(
                Element.basis(s.ralg.domain, kx),
                c.a_act(Element.basis(s.mha.domain, ka), v),
            ).scale(cc)
        return out

    witness = None
    if s.algebra.identity is not None:
        one = s.algebra.identity

        def witness(v):
            return [(one, v)]

    return PlainModule(
        algebra=s.algebra,
        space_domain=c.space_domain,
        space_basis=c.space_basis,
        act=act,
        witness=witness,
        name=f"module({c.name})",
    )


def module_to_covariant(m: PlainModule, s: SmashProduct) -> CovariantModule:
    """Recover the covariant pair from a unital R#A-module via the
    embeddings: a v = pi(a) v and x v = pi(x) v, both through witnesses."""
    if m.algebra.domain != s.algebra.domain:
        raise AlgebraMismatch("module is not over this smash product")
    if m.witness is None:
        raise UnverifiedAction("module needs unitality witnesses")

    def a_act(a: Element, v: Element) -> Element:
        out = Element.zero(m.space_domain)
        pa = pi_A(s, a)
        for u, z in m.witness(v):
            out = out + m.act(pa.left(u), z)
        return out

    def r_act(x: Element, v: Element) -> Element:
        out = Element.zero(m.space_domain)
        px = pi_R(s, x)
        for u, z in m.witness(v):
            out = out + m.act(px.left(u), z)
        return out

    return CovariantModule(
        action=s.action,
        space_domain=m.space_domain,
        space_basis=m.space_basis,
        a_act=a_act,
        r_act=r_act,
        name=f"covariant({m.name})",
    )


def module_representation_rank(m: PlainModule) -> int:
    """Rank of the representation algebra -> End(V); faithful iff = dim."""
    from .algebras import operator_element

    ops = []
    vspace = Algebra(
        m.space_domain,
        lambda a, b: Element.zero(m.space_domain),
        basis=m.space_basis,
    )
    for k in m.algebra.basis:
        e = m.algebra.basis_element(k)
        ops.append(
            operator_element(vspace, lambda v: m.act(e, v), f"op({m.space_domain})")
        )
    return span_rank(ops)


# -- structural isomorphisms -----------------------------------------------------------


def inner_trivialization(s: SmashProduct, gamma: Callable) -> tuple:
    """(phi, psi): mutually inverse isomorphisms R#A <-> R (x) A for inner
    actions, phi(x#a) = sum x gamma(a_(1)) (x) a_(2).

    ``gamma`` maps A-basis keys to Multipliers of R and must witness the
    action as inner; raises :class:`NotInner` otherwise.
    """
    from .actions import is_inner_witness
    from .instances import tensor_algebra

    if not is_inner_witness(s.action, gamma):
        raise NotInner(s.action.name)
    h = s.mha
    if not h.has_identity:
        raise NotHopf(f"{h.name}: trivialisation implemented for unital A")
    R = s.ralg
    target = tensor_algebra(R, h.algebra)

    def gamma_el(a: Element) -> Multiplier:
        out = None
        for k, c in a.coeffs.items():
            m = gamma(k).scale(c)
            out = m if out is None else out.add(m)
        return out

    def phi(u: Element) -> Element:
        acc: dict = {}
        for (kx, ka), c in u.coeffs.items():
            x = Element.basis(R.domain, kx)
            d = h.delta(Element.basis(h.domain, ka))
            for (p, q), cc in d.coeffs.items():
                img = gamma_el(Element.basis(h.domain, p)).right(x)
                for kr, cr in img.coeffs.items():
                    add_into(acc, (kr, q), c * cc * cr)
        return Element(target.domain, acc, _canon=True)

    def psi(u: Element) -> Element:
        acc: dict = {}
        for (kx, ka), c in u.coeffs.items():
            x = Element.basis(R.domain, kx)
            d = h.delta(Element.basis(h.domain, ka))
            for (p, q), cc in d.coeffs.items():
                img = gamma_el(h.antipode(Element.basis(h.domain, p))).right(x)
                for kr, cr in img.coeffs.items():
                    add_into(acc, (kr, q), c * cc * cr)
        return Element(s.algebra.domain, acc, _canon=True)

    return phi, psi, target


def cocycle_isomorphism(cocycle, act1: ActionSpec, act2: ActionSpec) -> tuple:
    """(phi, psi): inverse isomorphisms R#2A -> R#1A for cocycle-equivalent
    actions over a Hopf algebra; raises :class:`CocycleInvalid` if the
    cocycle conditions fail."""
    from .actions import verify_cocycle

    rep = verify_cocycle(cocycle, act1, act2)
    if not rep.ok:
        raise CocycleInvalid(rep.summary())
    h = act1.mha
    R = act1.ralg
    s1 = smash(act1)
    s2 = smash(act2)

    def gamma_el(a: Element) -> Multiplier:
        return cocycle.apply(h, R, a)

    def phi(u: Element) -> Element:
        # phi(x #2 a) = sum x gamma(a_(1)) #1 a_(2)
        acc: dict = {}
        for (kx, ka), c in u.coeffs.items():
            x = Element.basis(R.domain, kx)
            d = h.delta(Element.basis(h.domain, ka))
            for (p, q), cc in d.coeffs.items():
                img = gamma_el(Element.basis(h.domain, p)).right(x)
                for kr, cr in img.coeffs.items():
                    add_into(acc, (kr, q), c * cc * cr)
        return Element(s1.algebra.domain, acc, _canon=True)

    def psi(u: Element) -> Element:
        # psi(x #1 a) = sum x (a_(1) |>1 gamma(S(a_(2)))) #2 a_(3)
        acc: dict = {}
        for (kx, ka), c in u.coeffs.items():
            x = Element.basis(R.domain, kx)
            d3 = h.delta_n(Element.basis(h.domain, ka), 3)
            for (p, q, r), cc in d3.coeffs.items():
                m = extend_action_to_multipliers(
                    act1,
                    Element.basis(h.domain, p),
                    gamma_el(h.antipode(Element.basis(h.domain, q))),
                )
                img = m.right(x)
                for kr, cr in img.coeffs.items():
                    add_into(acc, (kr, r), c * cc * cr)
        return Element(s2.algebra.domain, acc, _canon=True)

    return phi, psi, s1, s2


# -- the group crossed-product oracle ------------------------------------------------


def group_crossed_product_oracle(g, ralg: Algebra, alpha: Callable) -> Algebra:
    """R-valued finite-support functions on G under twisted convolution.

    (xi eta)(p) = sum_q xi(q) alpha_q(eta(q^-1 p)); built directly from
    this formula with no smash machinery, as an independent oracle.  Keys
    are (group key, R key); ``alpha(q, x)`` is the automorphism action.
    """
    domain = f"crossed({ralg.domain},{g.name})"
    basis = None
    if g.is_finite and ralg.is_finite:
        basis = [(q, kr) for q in g.elements for kr in ralg.basis]

    def mul_basis(k1, k2):
        q1, kr1 = k1
        q2, kr2 = k2
        p = g.multiply(q1, q2)
        acted = alpha(q1, Element.basis(ralg.domain, kr2))
        val = ralg.mul(Element.basis(ralg.domain, kr1), acted)
        return Element(domain, {(p, kr): c for kr, c in val.coeffs.items()})

    return Algebra(domain, mul_basis, basis=basis, name=domain)


def algebras_match(a: Algebra, b: Algebra, key_map: Callable) -> tuple | None:
    """First basis pair where structure constants disagree under the
    bijection ``key_map``: a-keys -> b-keys; None when all agree."""
    for k1 in a.basis:
        for k2 in a.basis:
            pa = a.mul_basis(k1, k2)
            mapped = Element(
                b.domain, {key_map(k): c for k, c in pa.coeffs.items()}
            )
            pb = b.mul_basis(key_map(k1), key_map(k2))
            if mapped != pb:
                return (k1, k2)
    return None
