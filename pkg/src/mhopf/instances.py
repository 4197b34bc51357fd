"""Concrete constructors: K(G), CG, matrix/tensor algebras, canonical pairs.

Groups enter as :class:`GroupSpec` values with opaque orderable keys; the
nonabelian desk instance is S3 shipped as permutations in one-line
notation.  Infinite groups are supported through finite-support
discipline: every operation computes its output support from its input
supports, so no truncation ever occurs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .algebras import Algebra
from .elements import Element, TensorElement, tensor
from .errors import UnknownInstance
from .mha import Functional, RegularMHA
from .scalars import ONE, Scalar


@dataclass
class GroupSpec:
    """A group presented by key-level operations.

    ``elements`` is None for countable groups, in which case ``window(n)``
    enumerates a deterministic finite sample of keys.
    """

    name: str
    identity: object
    multiply: Callable
    invert: Callable
    elements: list | None = None
    window: Callable | None = None

    @property
    def is_finite(self) -> bool:
        return self.elements is not None

    def sample(self, n: int) -> list:
        if self.elements is not None:
            return list(self.elements)
        return self.window(n)


def validate_group(g: GroupSpec, n: int = 4) -> bool:
    """Sampled group axioms; invert is checked as a two-sided inverse."""
    keys = g.sample(n)
    for p in keys:
        if g.multiply(p, g.identity) != p or g.multiply(g.identity, p) != p:
            return False
        q = g.invert(p)
        if g.multiply(p, q) != g.identity or g.multiply(q, p) != g.identity:
            return False
        if g.invert(q) != p:
            return False
    for p in keys:
        for q in keys:
            for r in keys:
                if g.multiply(g.multiply(p, q), r) != g.multiply(p, g.multiply(q, r)):
                    return False
    return True


# -- builtin groups ----------------------------------------------------------


def cyclic_group(n: int) -> GroupSpec:
    return GroupSpec(
        name=f"Z{n}",
        identity=0,
        multiply=lambda p, q: (p + q) % n,
        invert=lambda p: (-p) % n,
        elements=list(range(n)),
    )


def integer_group() -> GroupSpec:
    return GroupSpec(
        name="Z",
        identity=0,
        multiply=lambda p, q: p + q,
        invert=lambda p: -p,
        elements=None,
        window=lambda n: list(range(-n, n + 1)),
    )


def trivial_group() -> GroupSpec:
    return GroupSpec(
        name="Z1",
        identity=0,
        multiply=lambda p, q: 0,
        invert=lambda p: 0,
        elements=[0],
    )


def _perm_mul(p: tuple, q: tuple) -> tuple:
    return tuple(p[i] for i in q)


def _perm_inv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def symmetric_group_3() -> GroupSpec:
    """S3 as permutations of {0,1,2} in one-line notation."""
    elems = sorted(
        [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    )
    return GroupSpec(
        name="S3",
        identity=(0, 1, 2),
        multiply=_perm_mul,
        invert=_perm_inv,
        elements=elems,
    )


BUILTIN_GROUPS: dict[str, Callable[[], GroupSpec]] = {
    "Z1": trivial_group,
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "S3": symmetric_group_3,
    "Z": integer_group,
}


def get_group(name: str) -> GroupSpec:
    try:
        return BUILTIN_GROUPS[name]()
    except KeyError:
        raise UnknownInstance(f"unknown group {name!r}") from None


# -- the two group-derived multiplier Hopf algebras ---------------------------


def function_algebra(g: GroupSpec) -> RegularMHA:
    """K(G): finitely supported functions on G with pointwise product.

    Coproduct (delta f)(p, q) = f(pq); counit f -> f(e); antipode
    (S f)(p) = f(p^-1).  For infinite G there is no identity, but indicator
    functions of finite sets are local units, which the oracle exploits.
    """
    domain = f"K({g.name})"
    mul = g.multiply
    inv = g.invert

    def mul_basis(p, q):
        if p == q:
            return Element.basis(domain, p)
        return Element.zero(domain)

    def local_units(items: Sequence[Element]) -> Element:
        keys = set()
        for a in items:
            keys.update(a.coeffs)
        return Element(domain, {k: ONE for k in sorted(keys)})

    identity = None
    if g.is_finite:
        identity = Element(domain, {k: ONE for k in g.elements})

    alg = Algebra(
        domain,
        mul_basis,
        basis=g.elements,
        identity=identity,
        local_unit_oracle=local_units,
        key_window=g.window,
        name=domain,
    )
    dd = (domain, domain)

    # t1(d_a, d_b) = d_{a b^-1} (x) d_b   (support: q = b, p*q = a)
    def t1(a, b):
        return TensorElement.basis(dd, (mul(a, inv(b)), b))

    # t2(d_a, d_b) = d_a (x) d_{a^-1 b}
    def t2(a, b):
        return TensorElement.basis(dd, (a, mul(inv(a), b)))

    # t3(d_a, d_b) = d_b (x) d_{b^-1 a}
    def t3(a, b):
        return TensorElement.basis(dd, (b, mul(inv(b), a)))

    # t4(d_a, d_b) = d_{a b^-1} (x) d_b
    def t4(a, b):
        return TensorElement.basis(dd, (mul(a, inv(b)), b))

    def t1_inv(p, q):
        return TensorElement.basis(dd, (mul(p, q), q))

    def t2_inv(p, q):
        return TensorElement.basis(dd, (p, mul(p, q)))

    haar = Functional(domain, lambda k: ONE, "haar-sum")
    return RegularMHA(
        alg,
        t1,
        t2,
        t3,
        t4,
        counit_basis=lambda k: ONE if k == g.identity else Scalar(0),
        antipode_basis=lambda k: Element.basis(domain, inv(k)),
        antipode_inv_basis=lambda k: Element.basis(domain, inv(k)),
        t1_inv_basis=t1_inv,
        t2_inv_basis=t2_inv,
        name=domain,
        integral_oracle=haar,
        right_integral_oracle=haar,
        cointegral_oracle=Element.basis(domain, g.identity),
        meta={"aqg": True, "group": g.name, "kind": "function_algebra"},
    )


def group_algebra(g: GroupSpec) -> RegularMHA:
    """CG: the group algebra with group-like coproduct.

    This is a genuine Hopf algebra for every discrete G (identity lam_e,
    delta(lam_p) = lam_p (x) lam_p); for infinite G it is
    infinite-dimensional but every coproduct is already a finite tensor.
    """
    domain = f"C[{g.name}]"
    mul = g.multiply
    inv = g.invert

    def mul_basis(p, q):
        return Element.basis(domain, mul(p, q))

    alg = Algebra(
        domain,
        mul_basis,
        basis=g.elements,
        identity=Element.basis(domain, g.identity),
        key_window=g.window,
        name=domain,
    )
    dd = (domain, domain)

    def t1(p, q):
        return TensorElement.basis(dd, (p, mul(p, q)))

    def t2(p, q):
        return TensorElement.basis(dd, (mul(p, q), q))

    def t3(p, q):
        return TensorElement.basis(dd, (mul(p, q), p))

    def t4(p, q):
        return TensorElement.basis(dd, (p, mul(q, p)))

    def t1_inv(p, q):
        return TensorElement.basis(dd, (p, mul(inv(p), q)))

    def t2_inv(p, q):
        return TensorElement.basis(dd, (mul(p, inv(q)), q))

    integral = None
    right_integral = None
    cointegral = None
    meta = {"group": g.name, "kind": "group_algebra"}
    if g.is_finite:
        # Haar state: coefficient of the identity; two-sided by the trace
        # property of group algebras.
        integral = Functional(
            domain, lambda k: ONE if k == g.identity else Scalar(0), "haar-state"
        )
        right_integral = integral
        cointegral = Element(domain, {k: ONE for k in g.elements})
        meta["aqg"] = True
    return RegularMHA(
        alg,
        t1,
        t2,
        t3,
        t4,
        counit_basis=lambda k: ONE,
        antipode_basis=lambda k: Element.basis(domain, inv(k)),
        antipode_inv_basis=lambda k: Element.basis(domain, inv(k)),
        t1_inv_basis=t1_inv,
        t2_inv_basis=t2_inv,
        name=domain,
        integral_oracle=integral,
        right_integral_oracle=right_integral,
        cointegral_oracle=cointegral,
        meta=meta,
    )


# -- plain algebras -----------------------------------------------------------


def scalar_algebra() -> Algebra:
    """The ground field as a one-dimensional algebra (basis key ())."""
    domain = "C"
    return Algebra(
        domain,
        lambda k1, k2: Element.basis(domain, ()),
        basis=[()],
        identity=Element.basis(domain, ()),
        name="C",
    )


def matrix_algebra(n: int, coeff: Algebra) -> Algebra:
    """M_n over a coefficient algebra; basis keys (i, j, coeff-key)."""
    domain = f"M({n},{coeff.domain})"
    basis = None
    if coeff.is_finite:
        basis = [(i, j, k) for i in range(n) for j in range(n) for k in coeff.basis]

    def mul_basis(x, y):
        i, j, k1 = x
        l, m, k2 = y
        if j != l:
            return Element.zero(domain)
        prod = coeff.mul_basis(k1, k2)
        return Element(
            domain, {(i, m, k): c for k, c in prod.coeffs.items()}
        )

    identity = None
    if coeff.identity is not None:
        acc = {}
        for i in range(n):
            for k, c in coeff.identity.coeffs.items():
                acc[(i, i, k)] = c
        identity = Element(domain, acc)

    return Algebra(domain, mul_basis, basis=basis, identity=identity, name=domain)


def tensor_algebra(r: Algebra, a: Algebra) -> Algebra:
    """R (x) A with the componentwise product; basis keys (r-key, a-key)."""
    domain = f"tensor({r.domain},{a.domain})"
    basis = None
    if r.is_finite and a.is_finite:
        basis = [(kr, ka) for kr in r.basis for ka in a.basis]

    def mul_basis(x, y):
        kr1, ka1 = x
        kr2, ka2 = y
        pr = r.mul_basis(kr1, kr2)
        pa = a.mul_basis(ka1, ka2)
        acc = {}
        for k1, c1 in pr.coeffs.items():
            for k2, c2 in pa.coeffs.items():
                acc[(k1, k2)] = c1 * c2
        return Element(domain, acc)

    identity = None
    if r.identity is not None and a.identity is not None:
        acc = {}
        for k1, c1 in r.identity.coeffs.items():
            for k2, c2 in a.identity.coeffs.items():
                acc[(k1, k2)] = c1 * c2
        identity = Element(domain, acc)

    window = None
    if not (r.is_finite and a.is_finite):

        def window(n):
            return [(kr, ka) for kr in r.sample_keys(n) for ka in a.sample_keys(n)]

    return Algebra(
        domain,
        mul_basis,
        basis=basis,
        identity=identity,
        key_window=window,
        name=domain,
    )


# -- group-derived module algebras ---------------------------------------------


def translation_action(g: GroupSpec):
    """CG acting on K(G) by right translation: lam_p . f = f(. p).

    The Hopf-algebra form of a group acting on an algebra by automorphisms;
    matches the action induced by the canonical pairing.
    """
    from .actions import ActionSpec

    A = group_algebra(g)
    R = function_algebra(g)
    mul, inv = g.multiply, g.invert

    def act(a: Element, f: Element) -> Element:
        out = Element.zero(R.domain)
        for p, ca in a.coeffs.items():
            out = out + Element(
                R.domain, {mul(q, inv(p)): cf * ca for q, cf in f.coeffs.items()}
            )
        return out

    return ActionSpec.build(A, R.algebra, act, rule="translation")


def grading_action(g: GroupSpec):
    """K(G) acting on CG by grading projections: d_p picks the degree-p part."""
    from .actions import ActionSpec

    A = function_algebra(g)
    R = group_algebra(g)

    def act(f: Element, x: Element) -> Element:
        return Element(
            R.domain,
            {q: cx * f.coeffs[q] for q, cx in x.coeffs.items() if q in f.coeffs},
        )

    def witness(v: Element):
        return [
            (Element.basis(A.domain, q), Element.basis(R.domain, q).scale(c))
            for q, c in v.items()
        ]

    return ActionSpec.build(A, R.algebra, act, witness=witness, rule="grading")


# -- canonical dual pair -------------------------------------------------------


def canonical_pair(g: GroupSpec):
    """The dual pair (A, B) = (CG, K(G)) with pairing <lam_p, f> = f(p).

    All four induced module structures have closed, support-local forms:

        lam_p |> f   = f(. p)           (right-translation action on K(G))
        f |> lam_p   = f(p) lam_p
        lam_p <| f   = f(p) lam_p
        f <| lam_p   = f(p .)
    """
    from .pairing import DualPair

    A = group_algebra(g)
    B = function_algebra(g)
    mul = g.multiply
    inv = g.invert

    def pair(a: Element, b: Element) -> Scalar:
        total = Scalar(0)
        for p, ca in a.coeffs.items():
            cb = b.coeffs.get(p)
            if cb is not None:
                total = total + ca * cb
        return total

    def act_AonB(a: Element, f: Element) -> Element:
        out = Element.zero(B.domain)
        for p, ca in a.coeffs.items():
            out = out + Element(
                B.domain, {mul(q, inv(p)): cf * ca for q, cf in f.coeffs.items()}
            )
        return out

    def act_BonA(f: Element, a: Element) -> Element:
        return Element(
            A.domain,
            {
                p: ca * f.coeffs[p]
                for p, ca in a.coeffs.items()
                if p in f.coeffs
            },
        )

    def ract_AonB(f: Element, a: Element) -> Element:
        # f <| lam_p = f(p .): left translation of the argument
        out = Element.zero(B.domain)
        for p, ca in a.coeffs.items():
            out = out + Element(
                B.domain, {mul(inv(p), q): cf * ca for q, cf in f.coeffs.items()}
            )
        return out

    def ract_BonA(a: Element, f: Element) -> Element:
        return Element(
            A.domain,
            {
                p: ca * f.coeffs[p]
                for p, ca in a.coeffs.items()
                if p in f.coeffs
            },
        )

    def b_unit_for(elements: Sequence[Element]) -> Element:
        # e in K(G) with e |> a = a: indicator of the group keys appearing
        keys = set()
        for a in elements:
            keys.update(a.coeffs)
        return Element(B.domain, {k: ONE for k in sorted(keys)})

    from .pairing import assert_nondegenerate

    return assert_nondegenerate(
        DualPair(
            A,
            B,
            pair,
            act_AonB=act_AonB,
            act_BonA=act_BonA,
            ract_AonB=ract_AonB,
            ract_BonA=ract_BonA,
            name=f"pair({A.name},{B.name})",
            sampled=not g.is_finite,
            b_action_unit=b_unit_for,
        )
    )
