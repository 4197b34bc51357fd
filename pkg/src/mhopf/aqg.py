"""Algebraic quantum groups: integrals, cointegrals, duals.

A left integral is a nonzero functional phi with, in covered form,
(id (x) phi)((b (x) 1) delta(a)) = phi(a) b for all a, b; right integrals
are symmetric.  A regular multiplier Hopf algebra carrying integrals is an
algebraic quantum group; in finite dimension the integral is found by an
exact linear solve and is unique up to a scalar, which the verifier checks
by computing the solution space dimension.

The finite-dimensional dual lives on functionals phi(. a): its product is
dual to the coproduct, (w w')(x) = sum w(x_(1)) w'(x_(2)), its coproduct
dual to the product, the counit is evaluation at the identity and the
antipode is precomposition with S.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .algebras import Algebra
from .elements import Element, TensorElement, add_into, weight_leg
from .errors import (
    InfiniteDimensional,
    InfiniteDimensionalNoOracle,
    NotFiniteDimensional,
    Singular,
    Undecidable,
)
from .linalg import LinearMap, Matrix
from .mha import Functional, RegularMHA
from .reports import Report
from .scalars import Scalar


@dataclass
class Cointegral:
    value: Element
    side: str  # "left" | "right"


@dataclass
class AlgebraicQuantumGroup:
    base: RegularMHA
    left_integral: Functional
    right_integral: Functional
    modular: LinearMap | None = None
    meta: dict = field(default_factory=dict)
    bridge: "DualBridge | None" = None

    @property
    def name(self) -> str:
        return self.base.name


# -- integrals ----------------------------------------------------------------


def _integral_solutions(h: RegularMHA, side: str) -> list[Element]:
    """Basis of the solution space of the invariance equations (finite dim)."""
    alg = h.algebra
    if not alg.is_finite:
        raise InfiniteDimensional(h.name)
    keys = alg.basis
    kidx = {k: i for i, k in enumerate(keys)}
    n = len(keys)
    rows: list[dict] = []
    for ka in keys:
        a = Element.basis(h.domain, ka)
        for kb in keys:
            b = Element.basis(h.domain, kb)
            # left:  (id (x) phi)(t2(b, a)) = phi(a) b
            # right: (psi (x) id)(t1(a, b)) = psi(a) b
            per_out: dict = {}
            cov = h.t2(b, a) if side == "left" else h.t1(a, b)
            for (u, v), c in cov.coeffs.items():
                out, weight = (u, v) if side == "left" else (v, u)
                per_out.setdefault(out, {})
                add_into(per_out[out], kidx[weight], c)
            for out, coeff in b.coeffs.items():
                per_out.setdefault(out, {})
                add_into(per_out[out], kidx[ka], -coeff)
            for out in sorted(per_out):
                if per_out[out]:
                    rows.append(per_out[out])
    mat = Matrix.zeros(len(rows), n)
    for r, entries in enumerate(rows):
        for j, c in entries.items():
            mat.rows[r][j] = c
    return [Element(f"{h.domain}'", dict(zip(keys, v))) for v in mat.nullspace()]


def _normalize_vector(e: Element) -> Element:
    for k in sorted(e.coeffs):
        return e.scale(e.coeffs[k].inverse())
    return e


def find_integral(h: RegularMHA, side: str = "left") -> tuple[Functional, int]:
    """(normalized integral, solution-space dimension) for finite instances;
    the registered oracle (dimension reported as 1) for infinite ones."""
    oracle = h.integral_oracle if side == "left" else h.right_integral_oracle
    if not h.algebra.is_finite:
        if oracle is None:
            raise InfiniteDimensionalNoOracle(f"{h.name}: no {side} integral oracle")
        return oracle, 1
    sols = _integral_solutions(h, side)
    if not sols:
        raise Singular(f"{h.name}: no nonzero {side} integral")
    table = dict(_normalize_vector(sols[0]).coeffs)
    return (
        Functional.from_table(h.domain, table, f"{side}-integral"),
        len(sols),
    )


def integral_matrix(h: RegularMHA, phi: Functional) -> Matrix:
    """The bilinear form (a, b) -> phi(a b) on the basis."""
    keys = h.algebra.basis
    m = Matrix.zeros(len(keys), len(keys))
    for i, ki in enumerate(keys):
        for j, kj in enumerate(keys):
            m.rows[i][j] = phi(h.algebra.mul_basis(ki, kj))
    return m


def make_aqg(h: RegularMHA) -> AlgebraicQuantumGroup:
    """Attach integrals (oracle or exact solve) to a regular instance."""
    phi, _ = find_integral(h, "left")
    psi, _ = find_integral(h, "right")
    g = AlgebraicQuantumGroup(h, phi, psi, meta=dict(h.meta))
    if h.algebra.is_finite:
        g.modular = compute_modular_automorphism(g)
    return g


def verify_integral(
    g: AlgebraicQuantumGroup, sample=None, sample_range: int = 5
) -> Report:
    """Invariance, faithfulness, uniqueness and the S/KMS relations."""
    h = g.base
    alg = h.algebra
    exhaustive = alg.is_finite and sample is None
    keys = list(sample) if sample is not None else alg.sample_keys(sample_range)
    ok_status = "pass" if exhaustive else "sampled-pass"
    rep = Report(instance=h.name)
    phi, psi = g.left_integral, g.right_integral

    witness = None
    for ka in keys:
        a = Element.basis(h.domain, ka)
        for kb in keys:
            b = Element.basis(h.domain, kb)
            if weight_leg(h.t2(b, a), 1, phi.eval_basis) != b.scale(phi(a)):
                witness = (ka, kb)
                break
        if witness:
            break
    rep.add("left-invariance", witness is None, ok_status, witness)

    witness = None
    for ka in keys:
        a = Element.basis(h.domain, ka)
        for kb in keys:
            b = Element.basis(h.domain, kb)
            if weight_leg(h.t1(a, b), 0, psi.eval_basis) != b.scale(psi(a)):
                witness = (ka, kb)
                break
        if witness:
            break
    rep.add("right-invariance", witness is None, ok_status, witness)

    # the antipode converts the left integral into a right one
    witness = None
    for ka in keys:
        a = Element.basis(h.domain, ka)
        sa = phi(h.antipode(a))
        for kb in keys:
            b = Element.basis(h.domain, kb)
            val = weight_leg(h.t1(a, b), 0, lambda k: phi(h.antipode(Element.basis(h.domain, k))))
            if val != b.scale(sa):
                witness = (ka, kb)
                break
        if witness:
            break
    rep.add("antipode-converts-integral", witness is None, ok_status, witness)

    if alg.is_finite:
        rep.add(
            "faithful",
            integral_matrix(h, phi).rank() == alg.dim,
            "pass",
            None,
        )
        rep.add("uniqueness-dim-1", len(_integral_solutions(h, "left")) == 1, "pass")
        if g.modular is not None:
            witness = None
            for ka in keys:
                a = Element.basis(h.domain, ka)
                sa = g.modular(a)
                for kb in keys:
                    b = Element.basis(h.domain, kb)
                    if phi(alg.mul(a, b)) != phi(alg.mul(b, sa)):
                        witness = (ka, kb)
                        break
                if witness:
                    break
            rep.add("kms-identity", witness is None, "pass", witness)
    else:
        rep.skip("faithful", "infinite-dimensional")
        rep.skip("uniqueness-dim-1", "infinite-dimensional")
    return rep


# -- cointegrals ----------------------------------------------------------------


def _cointegral_solutions(h: RegularMHA, side: str) -> list[Element]:
    alg = h.algebra
    keys = alg.basis
    kidx = {k: i for i, k in enumerate(keys)}
    rows: list[dict] = []
    for ka in keys:
        eps_a = h.counit_key(ka)
        per_out: dict = {}
        for j, kj in enumerate(keys):
            prod = (
                alg.mul_basis(ka, kj) if side == "left" else alg.mul_basis(kj, ka)
            )
            for k, c in prod.coeffs.items():
                per_out.setdefault(k, {})
                add_into(per_out[k], j, c)
            if eps_a:
                per_out.setdefault(kj, {})
                add_into(per_out[kj], j, -eps_a)
        for out in sorted(per_out):
            if per_out[out]:
                rows.append(per_out[out])
    mat = Matrix.zeros(len(rows), len(keys))
    for r, entries in enumerate(rows):
        for j, c in entries.items():
            mat.rows[r][j] = c
    return [Element(h.domain, dict(zip(keys, v))) for v in mat.nullspace()]


def find_cointegral(h: RegularMHA, side: str = "left") -> Cointegral | None:
    """Nonzero solution of a*h = eps(a)*h (left) or h*a = eps(a)*h (right).

    Normalised so the first nonzero coordinate in basis order is 1.
    """
    alg = h.algebra
    if not alg.is_finite:
        if h.cointegral_oracle is None:
            raise InfiniteDimensionalNoOracle(f"{h.name}: no cointegral oracle")
        value = _normalize_vector(h.cointegral_oracle)
        sided = value
        # oracle values are verified on a sample window
        for k in alg.sample_keys(4):
            a = Element.basis(h.domain, k)
            prod = alg.mul(a, sided) if side == "left" else alg.mul(sided, a)
            if prod != sided.scale(h.counit(a)):
                return None
        return Cointegral(sided, side)
    sols = _cointegral_solutions(h, side)
    if not sols:
        return None
    return Cointegral(_normalize_vector(sols[0]), side)


def cointegral_solution_dim(h: RegularMHA, side: str = "left") -> int:
    return len(_cointegral_solutions(h, side))


def classify_type(h: RegularMHA) -> str:
    """discrete / compact / both / neither; Undecidable without oracles."""
    alg = h.algebra
    if alg.is_finite:
        try:
            find_integral(h, "left")
            has_integrals = True
        except Singular:
            has_integrals = False
        has_cointegrals = bool(_cointegral_solutions(h, "left"))
    else:
        if h.integral_oracle is None or (
            h.cointegral_oracle is None and not h.has_identity
        ):
            raise Undecidable(f"{h.name}: no integral/cointegral oracles")
        has_integrals = h.integral_oracle is not None
        has_cointegrals = h.cointegral_oracle is not None
    discrete = has_cointegrals
    compact = h.has_identity and has_integrals
    if discrete and compact:
        return "both"
    if discrete:
        return "discrete"
    if compact:
        return "compact"
    return "neither"


# -- modular automorphism ---------------------------------------------------------


def compute_modular_automorphism(g: AlgebraicQuantumGroup) -> LinearMap:
    """The unique sigma with phi(a b) = phi(b sigma(a)); finite dimension only.

    Verified to be an algebra automorphism on basis pairs.
    """
    h = g.base
    alg = h.algebra
    if not alg.is_finite:
        raise InfiniteDimensional(h.name)
    phi = g.left_integral
    keys = alg.basis
    F = integral_matrix(h, phi)  # F[i][j] = phi(a_i a_j)
    F_inv = F.inverse()
    if F_inv is None:
        raise Singular(f"{h.name}: left integral is not faithful")
    table = {}
    for ka in keys:
        a = Element.basis(h.domain, ka)
        w = Matrix([[phi(alg.mul(a, Element.basis(h.domain, kb)))] for kb in keys])
        v = F_inv.mul(w)
        table[ka] = Element(h.domain, {keys[i]: v.rows[i][0] for i in range(len(keys))})
    sigma = LinearMap(h.domain, h.domain, table)
    for ka in keys:
        for kb in keys:
            lhs = sigma(alg.mul_basis(ka, kb))
            rhs = alg.mul(sigma(Element.basis(h.domain, ka)), sigma(Element.basis(h.domain, kb)))
            if lhs != rhs:
                raise Singular(f"{h.name}: sigma fails multiplicativity at {(ka, kb)}")
    if sigma.matrix(keys, keys).inverse() is None:
        raise Singular(f"{h.name}: sigma not bijective")
    return sigma


# -- the finite-dimensional dual ----------------------------------------------------


@dataclass
class DualBridge:
    """Conversions between A and its dual realised on functionals phi(. a)."""

    base: AlgebraicQuantumGroup
    dual: "AlgebraicQuantumGroup"
    F: Matrix  # F[i][j] = phi(a_i a_j)
    F_inv: Matrix

    def __post_init__(self):
        self._sigma_inv = None
        self._left_slot_cache: dict = {}

    def eval_dual(self, omega: Element, x: Element) -> Scalar:
        """<x, omega>: evaluate a dual element as a functional on A."""
        h = self.base.base
        phi = self.base.left_integral
        total = Scalar(0)
        for kj, c in omega.coeffs.items():
            total = total + c * phi(h.algebra.mul(x, Element.basis(h.domain, kj)))
        return total

    def from_right_slot(self, a: Element) -> Element:
        """phi(. a) as a dual element (the defining basis identification)."""
        dd = self.dual.base.domain
        return Element(dd, dict(a.coeffs))

    def from_left_slot(self, c: Element) -> Element:
        """phi(c .) as a dual element, via the faithfulness of phi."""
        h = self.base.base
        keys = h.algebra.basis
        out = Element.zero(self.dual.base.domain)
        for k, coeff in c.coeffs.items():
            hit = self._left_slot_cache.get(k)
            if hit is None:
                phi = self.base.left_integral
                e = Element.basis(h.domain, k)
                w = Matrix(
                    [[phi(h.algebra.mul(e, Element.basis(h.domain, kb)))] for kb in keys]
                )
                v = self.F_inv.mul(w)
                hit = Element(
                    self.dual.base.domain,
                    {keys[i]: v.rows[i][0] for i in range(len(keys))},
                )
                self._left_slot_cache[k] = hit
            out = out + hit.scale(coeff)
        return out

    def to_left_slot(self, omega: Element) -> Element:
        """The c with phi(c .) = omega; c = sigma^-1 of the right-slot rep."""
        base = self.base
        if self._sigma_inv is None:
            keys = base.base.algebra.basis
            self._sigma_inv = base.modular.inverse_on(keys, keys)
        return self._sigma_inv(Element(base.base.domain, dict(omega.coeffs)))


def finite_dual(g: AlgebraicQuantumGroup) -> AlgebraicQuantumGroup:
    """The dual algebraic quantum group of a finite-dimensional one.

    Basis keys are reused: key j stands for the functional phi(. a_j).
    """
    h = g.base
    alg = h.algebra
    if not alg.is_finite:
        raise NotFiniteDimensional(h.name)
    if not h.has_identity:
        raise NotFiniteDimensional(f"{h.name}: finite instances must be unital")
    keys = alg.basis
    n = len(keys)
    kidx = {k: i for i, k in enumerate(keys)}
    phi = g.left_integral
    F = integral_matrix(h, phi)
    F_inv = F.inverse()
    if F_inv is None:
        raise Singular(f"{h.name}: integral not faithful")
    dd = f"dual({h.domain})"

    def to_coords(values: list[Scalar]) -> Element:
        v = F_inv.mul(Matrix([[x] for x in values]))
        return Element(dd, {keys[i]: v.rows[i][0] for i in range(n)})

    # product table: (w_i w_j)(a_k) = w_i( (id (x) phi)(t1(a_k, a_j)) )
    def dual_mul(ki, kj):
        values = []
        aj = Element.basis(h.domain, kj)
        for kk in keys:
            inner = weight_leg(
                h.t1(Element.basis(h.domain, kk), aj), 1, phi.eval_basis
            )
            values.append(phi(alg.mul(inner, Element.basis(h.domain, ki))))
        return to_coords(values)

    identity_coords = to_coords([h.counit_key(kk) for kk in keys])
    dual_alg = Algebra(
        dd,
        dual_mul,
        basis=list(keys),
        identity=identity_coords,
        name=dd,
    )

    # coproduct: solve F C F^T = M with M[i][j] = w_m(a_i a_j)
    F_inv_T = F_inv.transpose()

    def dual_delta(km) -> TensorElement:
        am = Element.basis(h.domain, km)
        M = Matrix.zeros(n, n)
        for i, ki in enumerate(keys):
            for j, kj in enumerate(keys):
                M.rows[i][j] = phi(
                    alg.mul(alg.mul_basis(ki, kj), am)
                )
        C = F_inv.mul(M).mul(F_inv_T)
        acc = {}
        for i in range(n):
            for j in range(n):
                if C.rows[i][j]:
                    acc[(keys[i], keys[j])] = C.rows[i][j]
        return TensorElement((dd, dd), acc)

    def dual_counit(km) -> Scalar:
        return phi(alg.mul(alg.one(), Element.basis(h.domain, km)))

    def dual_antipode(km) -> Element:
        return to_coords(
            [
                phi(alg.mul(h.antipode(Element.basis(h.domain, kk)), Element.basis(h.domain, km)))
                for kk in keys
            ]
        )

    def dual_antipode_inv(km) -> Element:
        return to_coords(
            [
                phi(
                    alg.mul(
                        h.antipode_inv(Element.basis(h.domain, kk)),
                        Element.basis(h.domain, km),
                    )
                )
                for kk in keys
            ]
        )

    dual_h = from_hopf_data(
        dual_alg,
        dual_delta,
        dual_counit,
        dual_antipode,
        dual_antipode_inv,
        name=dd,
        meta={"dual_of": h.name, "kind": "finite_dual"},
    )
    dual_g = make_aqg(dual_h)
    dual_g.meta["dual_of"] = h.name
    dual_g.meta["integral_normalization"] = "first-nonzero-coordinate=1"
    bridge = DualBridge(g, dual_g, F, F_inv)
    dual_g.bridge = bridge
    return dual_g


def from_hopf_data(
    alg: Algebra,
    delta_basis: Callable,
    counit_basis: Callable,
    antipode_basis: Callable,
    antipode_inv_basis: Callable | None = None,
    name: str | None = None,
    meta: dict | None = None,
) -> RegularMHA:
    """A regular instance from materialised Hopf tables (finite, unital).

    The four covering maps are delta followed by a leg multiplication; the
    antipode'd t1/t2 inverses come from the generic formulas.
    """
    if alg.identity is None:
        raise Singular(f"{alg.name}: Hopf data requires an identity")
    dd = (alg.domain, alg.domain)
    cache: dict = {}

    def delta(k) -> TensorElement:
        hit = cache.get(k)
        if hit is None:
            hit = delta_basis(k)
            cache[k] = hit
        return hit

    def mul_into(t: TensorElement, leg: int, by_key, side: str) -> TensorElement:
        acc: dict = {}
        by = Element.basis(alg.domain, by_key)
        for kk, c in t.coeffs.items():
            e = Element.basis(alg.domain, kk[leg])
            prod = alg.mul(e, by) if side == "right" else alg.mul(by, e)
            for k2, c2 in prod.coeffs.items():
                ks = list(kk)
                ks[leg] = k2
                add_into(acc, tuple(ks), c * c2)
        return TensorElement(dd, acc, _canon=True)

    if antipode_inv_basis is None:
        smap = LinearMap(alg.domain, alg.domain, {k: antipode_basis(k) for k in alg.basis})
        sinv = smap.inverse_on(alg.basis, alg.basis)
        if sinv is None:
            # keep the instance constructible so the axiom suite can report
            # the failure with a witness (corrupted-instance workflows)
            antipode_inv_basis = antipode_basis
        else:
            antipode_inv_basis = lambda k: sinv.table[k]  # noqa: E731

    return RegularMHA(
        alg,
        lambda ka, kb: mul_into(delta(ka), 1, kb, "right"),
        lambda ka, kb: mul_into(delta(kb), 0, ka, "left"),
        lambda ka, kb: mul_into(delta(ka), 0, kb, "right"),
        lambda ka, kb: mul_into(delta(ka), 1, kb, "left"),
        counit_basis,
        antipode_basis,
        antipode_inv_basis,
        name=name or alg.name,
        meta=meta,
    )


# -- structure-preserving map verification ------------------------------------------


def verify_mha_isomorphism(
    src: RegularMHA, dst: RegularMHA, iso: LinearMap
) -> Report:
    """Certify a linear map as an isomorphism of multiplier Hopf algebras.

    Exhaustive structure-constant comparison through the map: products,
    coproducts (materialised; finite unital instances), counit, antipode,
    plus bijectivity.
    """
    rep = Report(instance=f"{src.name}->{dst.name}")
    skeys = src.algebra.basis
    dkeys = dst.algebra.basis
    rep.add(
        "bijective",
        skeys is not None
        and dkeys is not None
        and len(skeys) == len(dkeys)
        and iso.matrix(skeys, dkeys).inverse() is not None,
        "pass",
    )

    witness = None
    for ka in skeys:
        for kb in skeys:
            a, b = Element.basis(src.domain, ka), Element.basis(src.domain, kb)
            if iso(src.algebra.mul(a, b)) != dst.algebra.mul(iso(a), iso(b)):
                witness = (ka, kb)
                break
        if witness:
            break
    rep.add("multiplicative", witness is None, "pass", witness)

    witness = None
    for ka in skeys:
        a = Element.basis(src.domain, ka)
        lhs = src.delta(a)
        mapped: dict = {}
        for (u, v), c in lhs.coeffs.items():
            iu = iso(Element.basis(src.domain, u))
            iv = iso(Element.basis(src.domain, v))
            for k1, c1 in iu.coeffs.items():
                for k2, c2 in iv.coeffs.items():
                    add_into(mapped, (k1, k2), c * c1 * c2)
        if TensorElement((dst.domain, dst.domain), mapped) != dst.delta(iso(a)):
            witness = ka
            break
    rep.add("comultiplicative", witness is None, "pass", witness)

    witness = None
    for ka in skeys:
        a = Element.basis(src.domain, ka)
        if src.counit(a) != dst.counit(iso(a)):
            witness = ka
            break
    rep.add("counit-compatible", witness is None, "pass", witness)

    witness = None
    for ka in skeys:
        a = Element.basis(src.domain, ka)
        if iso(src.antipode(a)) != dst.antipode(iso(a)):
            witness = ka
            break
    rep.add("antipode-compatible", witness is None, "pass", witness)
    return rep


def double_dual_matching(g: AlgebraicQuantumGroup) -> tuple:
    """(double dual, canonical matching a -> evaluation-at-a as a LinearMap)."""
    gd = finite_dual(g)
    gdd = finite_dual(gd)
    bridge = gd.bridge  # A  <-> A^
    bridge2 = gdd.bridge  # A^ <-> A^^
    h = g.base
    keys = h.algebra.basis
    dkeys = gd.base.algebra.basis
    F_hat_inv = bridge2.F_inv
    table = {}
    for ka in keys:
        a = Element.basis(h.domain, ka)
        vals = [bridge.eval_dual(Element.basis(gd.base.domain, kj), a) for kj in dkeys]
        v = F_hat_inv.mul(Matrix([[x] for x in vals]))
        table[ka] = Element(
            gdd.base.domain, {dkeys[i]: v.rows[i][0] for i in range(len(dkeys))}
        )
    return gdd, LinearMap(h.domain, gdd.base.domain, table)
