"""Regular multiplier Hopf algebras.

The coproduct of a regular multiplier Hopf algebra generally lands in the
multiplier algebra of A (x) A, never in A (x) A itself, so it is *never*
materialised here.  All structure is carried by the four covering maps

    t1(a, b) = delta(a) (1 (x) b)        t3(a, b) = delta(a) (b (x) 1)
    t2(a, b) = (a (x) 1) delta(b)        t4(a, b) = (1 (x) b) delta(a)

together with the counit, the antipode and its inverse.  Regularity means
t3/t4 exist and the antipode is a bijection of A onto A; every formula in
the theory is evaluated in covered form through these maps.

The inverses of t1 and t2 have closed forms in terms of the antipode:

    t1_inv(a (x) b) = (id (x) S) t4(a, S_inv(b))
    t2_inv(a (x) b) = (S (x) id) t3(b, S_inv(a))

which is how they are implemented by default (instances may override).
"""

from __future__ import annotations

from typing import Callable, Sequence

from .algebras import Algebra, Multiplier
from .elements import Element, TensorElement, add_into, flip, map_leg, merge_legs, tensor, weight_leg
from .errors import DomainMismatch, LocalUnitsNotFound, NoIdentity
from .linalg import Matrix, union_support
from .reports import Report
from .scalars import Scalar


class Functional:
    """A linear functional on an element domain, given on basis keys."""

    __slots__ = ("domain", "eval_basis", "name")

    def __init__(self, domain: str, eval_basis: Callable, name: str = "functional"):
        self.domain = domain
        self.eval_basis = eval_basis
        self.name = name

    def __call__(self, x: Element) -> Scalar:
        if x.domain != self.domain:
            raise DomainMismatch(f"{x.domain!r} vs {self.domain!r}")
        total = Scalar(0)
        for k, c in x.coeffs.items():
            total = total + c * self.eval_basis(k)
        return total

    @classmethod
    def from_table(cls, domain: str, table: dict, name: str = "functional"):
        return cls(domain, lambda k: table.get(k, Scalar(0)), name)


class RegularMHA:
    """An algebra with the four bijective covering maps, counit and antipode.

    The ``*_basis`` callables take basis keys and return tensors/elements;
    bilinear extension to full elements happens here.  ``t1_inv_basis`` /
    ``t2_inv_basis`` may be supplied when a closed form is cheaper than the
    generic antipode formula.
    """

    def __init__(
        self,
        algebra: Algebra,
        t1_basis: Callable,
        t2_basis: Callable,
        t3_basis: Callable,
        t4_basis: Callable,
        counit_basis: Callable,
        antipode_basis: Callable,
        antipode_inv_basis: Callable,
        t1_inv_basis: Callable | None = None,
        t2_inv_basis: Callable | None = None,
        name: str | None = None,
        integral_oracle: Functional | None = None,
        right_integral_oracle: Functional | None = None,
        cointegral_oracle: Element | None = None,
        meta: dict | None = None,
    ):
        self.algebra = algebra
        self._t = {1: t1_basis, 2: t2_basis, 3: t3_basis, 4: t4_basis}
        self._counit = counit_basis
        self._antipode = antipode_basis
        self._antipode_inv = antipode_inv_basis
        self._t1_inv = t1_inv_basis
        self._t2_inv = t2_inv_basis
        self.name = name or algebra.name
        self.integral_oracle = integral_oracle
        self.right_integral_oracle = right_integral_oracle
        self.cointegral_oracle = cointegral_oracle
        self.meta = meta or {}
        self._tcache: dict = {}
        self._scache: dict = {}
        self._sinvcache: dict = {}
        self._ecache: dict = {}

    # -- structure accessors ----------------------------------------------

    @property
    def domain(self) -> str:
        return self.algebra.domain

    @property
    def has_identity(self) -> bool:
        return self.algebra.identity is not None

    def counit_key(self, k) -> Scalar:
        hit = self._ecache.get(k)
        if hit is None:
            hit = self._counit(k)
            self._ecache[k] = hit
        return hit

    def counit(self, a: Element) -> Scalar:
        total = Scalar(0)
        for k, c in a.coeffs.items():
            total = total + c * self.counit_key(k)
        return total

    def counit_functional(self) -> Functional:
        return Functional(self.domain, self.counit_key, "counit")

    def antipode_key(self, k) -> Element:
        hit = self._scache.get(k)
        if hit is None:
            hit = self._antipode(k)
            self._scache[k] = hit
        return hit

    def antipode_inv_key(self, k) -> Element:
        hit = self._sinvcache.get(k)
        if hit is None:
            hit = self._antipode_inv(k)
            self._sinvcache[k] = hit
        return hit

    def _linear(self, table_fn: Callable, a: Element) -> Element:
        out: dict = {}
        for k, c in a.coeffs.items():
            for k2, c2 in table_fn(k).coeffs.items():
                add_into(out, k2, c * c2)
        return Element(self.domain, out, _canon=True)

    def antipode(self, a: Element) -> Element:
        return self._linear(self.antipode_key, a)

    def antipode_inv(self, a: Element) -> Element:
        return self._linear(self.antipode_inv_key, a)

    # -- covering maps ------------------------------------------------------

    def _t_pair(self, variant: int, ka, kb) -> TensorElement:
        key = (variant, ka, kb)
        hit = self._tcache.get(key)
        if hit is None:
            hit = self._t[variant](ka, kb)
            self._tcache[key] = hit
        return hit

    def cover(self, variant: int, a: Element, b: Element) -> TensorElement:
        """The covered coproduct t<variant>(a, b) as a concrete 2-tensor."""
        if a.domain != self.domain or b.domain != self.domain:
            raise DomainMismatch(f"cover in {self.domain!r}")
        acc: dict = {}
        for ka, ca in a.coeffs.items():
            for kb, cb in b.coeffs.items():
                c = ca * cb
                for keys, v in self._t_pair(variant, ka, kb).coeffs.items():
                    add_into(acc, keys, c * v)
        return TensorElement((self.domain, self.domain), acc, _canon=True)

    def t1(self, a, b):
        return self.cover(1, a, b)

    def t2(self, a, b):
        return self.cover(2, a, b)

    def t3(self, a, b):
        return self.cover(3, a, b)

    def t4(self, a, b):
        return self.cover(4, a, b)

    def apply_t(self, variant: int, t: TensorElement) -> TensorElement:
        """Linear extension of the covering map to tensors in A (x) A."""
        acc: dict = {}
        for (ka, kb), c in t.coeffs.items():
            for keys, v in self._t_pair(variant, ka, kb).coeffs.items():
                add_into(acc, keys, c * v)
        return TensorElement((self.domain, self.domain), acc, _canon=True)

    def t1_inv(self, t: TensorElement) -> TensorElement:
        if self._t1_inv is not None:
            return self._apply_pair_table(self._t1_inv, t)
        # t1_inv(a (x) b) = (id (x) S) t4(a, S_inv(b))
        acc: dict = {}
        for (ka, kb), c in t.coeffs.items():
            inner = self.t4(
                Element.basis(self.domain, ka),
                self.antipode_inv(Element.basis(self.domain, kb)),
            )
            for keys, v in map_leg(inner, 1, self.antipode_key).coeffs.items():
                add_into(acc, keys, c * v)
        return TensorElement((self.domain, self.domain), acc, _canon=True)

    def t2_inv(self, t: TensorElement) -> TensorElement:
        if self._t2_inv is not None:
            return self._apply_pair_table(self._t2_inv, t)
        # t2_inv(a (x) b) = (S (x) id) t3(b, S_inv(a))
        acc: dict = {}
        for (ka, kb), c in t.coeffs.items():
            inner = self.t3(
                Element.basis(self.domain, kb),
                self.antipode_inv(Element.basis(self.domain, ka)),
            )
            for keys, v in map_leg(inner, 0, self.antipode_key).coeffs.items():
                add_into(acc, keys, c * v)
        return TensorElement((self.domain, self.domain), acc, _canon=True)

    def _apply_pair_table(self, fn: Callable, t: TensorElement) -> TensorElement:
        acc: dict = {}
        for (ka, kb), c in t.coeffs.items():
            for keys, v in fn(ka, kb).coeffs.items():
                add_into(acc, keys, c * v)
        return TensorElement((self.domain, self.domain), acc, _canon=True)

    # -- materialisation (identity present only) ----------------------------

    def delta(self, a: Element) -> TensorElement:
        """delta(a) as a finite tensor; only valid when A has an identity."""
        if not self.has_identity:
            raise NoIdentity(f"{self.name}: coproduct not materialisable")
        return self.t1(a, self.algebra.one())

    def delta_n(self, a: Element, legs: int) -> TensorElement:
        """Iterated coproduct with ``legs`` output legs (identity required)."""
        t = self.delta(a)
        while t.arity < legs:
            acc: dict = {}
            for keys, c in t.coeffs.items():
                last = self.delta(Element.basis(self.domain, keys[-1]))
                for k2, v in last.coeffs.items():
                    add_into(acc, keys[:-1] + k2, c * v)
            t = TensorElement((self.domain,) * (t.arity + 1), acc, _canon=True)
        return t

    # -- convenience --------------------------------------------------------

    def sample_elements(self, n: int = 4) -> list[Element]:
        return [Element.basis(self.domain, k) for k in self.algebra.sample_keys(n)]

    def as_multiplier(self, a: Element) -> Multiplier:
        return Multiplier.from_element(self.algebra, a)

    def __repr__(self) -> str:
        return f"RegularMHA({self.name})"


def cover(h: RegularMHA, variant: str, a: Element, b: Element) -> TensorElement:
    """Covered coproduct by variant name 'T1'..'T4'."""
    idx = {"T1": 1, "T2": 2, "T3": 3, "T4": 4}[variant.upper()]
    return h.cover(idx, a, b)


def coopposite(h: RegularMHA) -> RegularMHA:
    """The co-opposite instance (flipped coproduct, inverted antipode).

    Regularity of h makes this a regular multiplier Hopf algebra again:
    t1'(a,b) = flip t3(a,b), t2'(a,b) = flip t4(b,a), and so on.
    """
    return RegularMHA(
        h.algebra,
        lambda ka, kb: flip(h._t_pair(3, ka, kb), 0, 1),
        lambda ka, kb: flip(h._t_pair(4, kb, ka), 0, 1),
        lambda ka, kb: flip(h._t_pair(1, ka, kb), 0, 1),
        lambda ka, kb: flip(h._t_pair(2, kb, ka), 0, 1),
        h.counit_key,
        h.antipode_inv_key,
        h.antipode_key,
        name=f"coop({h.name})",
    )


# -- axiom verification -----------------------------------------------------


def _basis_pairs(keys: Sequence):
    for ka in keys:
        for kb in keys:
            yield ka, kb


def verify_mha_axioms(
    h: RegularMHA, sample: Sequence | None = None, sample_range: int = 5
) -> Report:
    """Check the defining axioms on a basis sample.

    Exhaustive (status ``pass``) when the sample is the full basis of a
    finite instance, otherwise ``sampled-pass``.  Failures carry the
    witnessing basis keys.
    """
    alg = h.algebra
    exhaustive = alg.is_finite and sample is None
    keys = list(sample) if sample is not None else alg.sample_keys(sample_range)
    status_ok = "pass" if exhaustive else "sampled-pass"
    rep = Report(instance=h.name)
    D = h.domain

    def basis(k):
        return Element.basis(D, k)

    # t1/t2 bijectivity on the sampled tensor basis
    for variant, inv, label in ((1, h.t1_inv, "t1"), (2, h.t2_inv, "t2")):
        witness = None
        for ka, kb in _basis_pairs(keys):
            tb = tensor(basis(ka), basis(kb))
            fwd = h.cover(variant, basis(ka), basis(kb))
            if inv(fwd) != tb or h.apply_t(variant, inv(tb)) != tb:
                witness = (ka, kb)
                break
        rep.add(f"{label}-bijective", witness is None, status_ok, witness)

    # covered coassociativity:
    # (a x 1 x 1)(Delta x id)(Delta(b)(1 x c)) == (id x Delta)((a x 1)Delta(b))(1 x 1 x c)
    witness = None
    for ka in keys:
        a = basis(ka)
        for kb in keys:
            b = basis(kb)
            t2ab = h.t2(a, b)
            for kc in keys:
                c = basis(kc)
                lhs_inner = h.t1(b, c)
                lacc: dict = {}
                for (u, v), cv in lhs_inner.coeffs.items():
                    for (p, q), cw in h.t2(a, basis(u)).coeffs.items():
                        add_into(lacc, (p, q, v), cv * cw)
                racc: dict = {}
                for (u, v), cv in t2ab.coeffs.items():
                    for (p, q), cw in h.t1(basis(v), c).coeffs.items():
                        add_into(racc, (u, p, q), cv * cw)
                if lacc != racc:
                    witness = (ka, kb, kc)
                    break
            if witness:
                break
        if witness:
            break
    rep.add("coassociativity", witness is None, status_ok, witness)

    # counit laws
    witness = None
    for ka, kb in _basis_pairs(keys):
        a, b = basis(ka), basis(kb)
        ab = alg.mul(a, b)
        if weight_leg(h.t1(a, b), 0, h.counit_key) != ab:
            witness = ("left", ka, kb)
            break
        if weight_leg(h.t2(a, b), 1, h.counit_key) != ab:
            witness = ("right", ka, kb)
            break
    rep.add("counit-laws", witness is None, status_ok, witness)

    # antipode laws
    witness = None
    for ka, kb in _basis_pairs(keys):
        a, b = basis(ka), basis(kb)
        lhs = merge_legs(
            map_leg(h.t1(a, b), 0, h.antipode_key), 0, 1, alg.mul_basis, D
        )
        if lhs != b.scale(h.counit(a)):
            witness = ("left", ka, kb)
            break
        rhs = merge_legs(
            map_leg(h.t2(a, b), 1, h.antipode_key), 0, 1, alg.mul_basis, D
        )
        if rhs != a.scale(h.counit(b)):
            witness = ("right", ka, kb)
            break
    rep.add("antipode-laws", witness is None, status_ok, witness)

    # antipode bijectivity: S o S_inv = S_inv o S = id on the sample
    witness = None
    for k in keys:
        e = basis(k)
        if h.antipode(h.antipode_inv(e)) != e or h.antipode_inv(h.antipode(e)) != e:
            witness = k
            break
    rep.add("antipode-bijective", witness is None, status_ok, witness)

    # counit is a homomorphism
    witness = None
    for ka, kb in _basis_pairs(keys):
        if h.counit(alg.mul_basis(ka, kb)) != h.counit_key(ka) * h.counit_key(kb):
            witness = (ka, kb)
            break
    rep.add("counit-homomorphism", witness is None, status_ok, witness)

    # antipode is an anti-homomorphism
    witness = None
    for ka, kb in _basis_pairs(keys):
        lhs = h.antipode(alg.mul_basis(ka, kb))
        rhs = alg.mul(h.antipode(basis(kb)), h.antipode(basis(ka)))
        if lhs != rhs:
            witness = (ka, kb)
            break
    rep.add("antipode-antihomomorphism", witness is None, status_ok, witness)

    return rep


# -- local units ------------------------------------------------------------


def _stack_solve(products: list[list[Element]], targets: list[Element]):
    """Solve sum_j c_j * products[j][i] = targets[i] for all i, exactly.

    products[j] is the stacked column for candidate j.  Returns the c_j list
    or None.  Rows are ordered by (item index, sorted support key).
    """
    n_items = len(targets)
    keys = []
    for i in range(n_items):
        cols = [p[i] for p in products] + [targets[i]]
        for k in union_support(cols):
            keys.append((i, k))
    mat = Matrix.zeros(len(keys), len(products))
    rhs = Matrix.zeros(len(keys), 1)
    kidx = {k: r for r, k in enumerate(keys)}
    for j, col in enumerate(products):
        for i in range(n_items):
            for k, c in col[i].coeffs.items():
                mat.rows[kidx[(i, k)]][j] = c
    for i in range(n_items):
        for k, c in targets[i].coeffs.items():
            rhs.rows[kidx[(i, k)]][0] = c
    sol = mat.solve(rhs)
    if sol is None:
        return None
    return [sol.rows[j][0] for j in range(len(products))]


def find_local_units(
    h: RegularMHA,
    items: Sequence[Element],
    sided: str = "left",
    rounds: int = 3,
    start_window: int = 4,
) -> Element:
    """An element e with e*a_i = a_i (left), a_i*e = a_i (right), or both.

    Existence is guaranteed for regular multiplier Hopf algebras (two-sided
    units additionally need integrals, so ``two_sided`` requires the
    instance to be flagged as an algebraic quantum group via its meta).
    Uses the instance's oracle when available, else the identity, else an
    adaptive linear solve over span{b * a_i} for a growing basis sample b.
    Raises :class:`LocalUnitsNotFound` when the budget is exhausted.
    """
    if sided not in ("left", "right", "two_sided"):
        raise ValueError(f"sided={sided!r}")
    items = list(items)
    if not items:
        raise ValueError("items must be non-empty")
    alg = h.algebra
    if sided == "two_sided" and not (
        h.meta.get("aqg") or h.integral_oracle is not None or alg.identity is not None
    ):
        raise LocalUnitsNotFound(
            f"{h.name}: two-sided local units need an algebraic quantum group"
        )

    def satisfies(e: Element) -> bool:
        for a in items:
            if sided in ("left", "two_sided") and alg.mul(e, a) != a:
                return False
            if sided in ("right", "two_sided") and alg.mul(a, e) != a:
                return False
        return True

    if alg.local_unit_oracle is not None:
        e = alg.local_unit_oracle(items)
        if satisfies(e):
            return e
    if alg.identity is not None and satisfies(alg.identity):
        return alg.identity

    window = start_window
    for _ in range(rounds):
        cand_keys = alg.sample_keys(window)
        cands = [Element.basis(alg.domain, k) for k in cand_keys]
        cols = []
        for b in cands:
            col = []
            for a in items:
                parts = []
                if sided in ("left", "two_sided"):
                    parts.append(alg.mul(b, a))
                if sided in ("right", "two_sided"):
                    parts.append(alg.mul(a, b))
                col.append(parts)
            cols.append(col)
        # flatten the per-side lists into stacked targets
        n_sides = len(cols[0][0])
        flat_products = [
            [col[i][s] for i in range(len(items)) for s in range(n_sides)]
            for col in cols
        ]
        flat_targets = [a for a in items for _ in range(n_sides)]
        sol = _stack_solve(flat_products, flat_targets)
        if sol is not None:
            e = Element.zero(alg.domain)
            for c, b in zip(sol, cands):
                e = e + b.scale(c)
            if satisfies(e):
                return e
        window *= 2
    raise LocalUnitsNotFound(
        f"{h.name}: no {sided} local unit within {rounds} rounds "
        f"(existence is guaranteed; enlarge the search window)"
    )
