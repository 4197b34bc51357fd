"""Canonical JSON forms for elements, instances and actions.

Element serialisation is the library's wire format: a sorted list of
(key, re_num, re_den, im_num, im_den) tuples.  Keys serialise as JSON
scalars or (nested) lists standing for tuples.

Instance descriptions either name a builtin rule ({"rule":
"function_algebra", "group": "Z2"}) or spell out finite tables, which is
how deliberately corrupted instances enter the verification suites.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebras import Algebra
from .elements import Element, TensorElement
from .errors import MalformedSpec, UnknownInstance
from .mha import RegularMHA
from .scalars import Scalar


def key_to_json(key):
    if isinstance(key, tuple):
        return [key_to_json(k) for k in key]
    return key


def key_from_json(obj):
    if isinstance(obj, list):
        return tuple(key_from_json(k) for k in obj)
    return obj


def element_to_json(e: Element) -> dict:
    return {
        "domain": e.domain,
        "terms": [[key_to_json(k), *c.to_tuple()] for k, c in e.items()],
    }


def element_from_json(obj) -> Element:
    try:
        domain = obj["domain"]
        terms = []
        for t in obj["terms"]:
            key = key_from_json(t[0])
            terms.append((key, Scalar(Fraction(t[1], t[2]), Fraction(t[3], t[4]))))
    except (KeyError, IndexError, TypeError) as ex:
        raise MalformedSpec(f"bad element: {ex}", field="terms") from None
    return Element.from_terms(domain, terms)


def tensor_to_json(t: TensorElement) -> dict:
    return {
        "domains": list(t.domains),
        "terms": [
            [[key_to_json(k) for k in keys], *c.to_tuple()] for keys, c in t.items()
        ],
    }


def tensor_from_json(obj) -> TensorElement:
    domains = tuple(obj["domains"])
    acc = {}
    for t in obj["terms"]:
        keys = tuple(key_from_json(k) for k in t[0])
        acc[keys] = Scalar(Fraction(t[1], t[2]), Fraction(t[3], t[4]))
    return TensorElement(domains, acc)


# -- instances -------------------------------------------------------------------


def parse_instance_id(instance_id: str):
    """Builtin ids: K(G), C[G], M(n,<id>), tensor(<id>,<id>), dual(<id>).

    Returns a RegularMHA for Hopf-type ids and an Algebra for the plain
    algebra constructors.
    """
    from .aqg import finite_dual, make_aqg
    from .instances import (
        function_algebra,
        get_group,
        group_algebra,
        matrix_algebra,
        scalar_algebra,
        tensor_algebra,
    )

    s = instance_id.strip()
    if s == "C":
        return scalar_algebra()
    if s.startswith("K(") and s.endswith(")"):
        return function_algebra(get_group(s[2:-1]))
    if s.startswith("C[") and s.endswith("]"):
        return group_algebra(get_group(s[2:-1]))
    if s.startswith("dual(") and s.endswith(")"):
        inner = parse_instance_id(s[5:-1])
        if not isinstance(inner, RegularMHA):
            raise UnknownInstance(f"dual of a non-Hopf id: {instance_id!r}")
        return finite_dual(make_aqg(inner)).base
    if s.startswith("M(") and s.endswith(")"):
        body = s[2:-1]
        n_str, _, rest = body.partition(",")
        try:
            n = int(n_str)
        except ValueError:
            raise UnknownInstance(instance_id) from None
        coeff = parse_instance_id(rest) if rest else scalar_algebra()
        if isinstance(coeff, RegularMHA):
            coeff = coeff.algebra
        return matrix_algebra(n, coeff)
    if s.startswith("tensor(") and s.endswith(")"):
        body = s[7:-1]
        depth = 0
        for i, ch in enumerate(body):
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            elif ch == "," and depth == 0:
                left = parse_instance_id(body[:i])
                right = parse_instance_id(body[i + 1 :])
                if isinstance(left, RegularMHA):
                    left = left.algebra
                if isinstance(right, RegularMHA):
                    right = right.algebra
                return tensor_algebra(left, right)
        raise UnknownInstance(instance_id)
    raise UnknownInstance(instance_id)


def instance_to_json(h: RegularMHA) -> dict:
    """Explicit-table description of a finite instance (plus provenance)."""
    alg = h.algebra
    if not alg.is_finite:
        rule = h.meta.get("kind")
        if rule:
            return {"rule": rule, "group": h.meta.get("group")}
        raise MalformedSpec(f"{h.name}: infinite instance without a rule id")
    out = {
        "domain": alg.domain,
        "basis": [key_to_json(k) for k in alg.basis],
        "product": [
            [key_to_json(k1), key_to_json(k2), element_to_json(alg.mul_basis(k1, k2))]
            for k1 in alg.basis
            for k2 in alg.basis
        ],
        "coproduct": [
            [key_to_json(k), tensor_to_json(h.delta(alg.basis_element(k)))]
            for k in alg.basis
        ],
        "counit": [
            [key_to_json(k), list(h.counit_key(k).to_tuple())] for k in alg.basis
        ],
        "antipode": [
            [key_to_json(k), element_to_json(h.antipode_key(k))] for k in alg.basis
        ],
    }
    if h.meta:
        meta = {k: v for k, v in h.meta.items() if isinstance(v, (str, int, bool))}
        if meta:
            out["meta"] = meta
    return out


def instance_from_json(obj) -> RegularMHA:
    """Build an instance from a rule id or explicit finite tables."""
    from .aqg import from_hopf_data
    from .instances import function_algebra, get_group, group_algebra

    if "rule" in obj:
        rule = obj["rule"]
        group = get_group(obj.get("group", ""))
        if rule == "function_algebra":
            return function_algebra(group)
        if rule == "group_algebra":
            return group_algebra(group)
        raise MalformedSpec(f"unknown rule {rule!r}", field="rule")
    try:
        domain = obj["domain"]
        basis = [key_from_json(k) for k in obj["basis"]]
        product = {
            (key_from_json(k1), key_from_json(k2)): element_from_json(e)
            for k1, k2, e in obj["product"]
        }
        coproduct = {key_from_json(k): tensor_from_json(t) for k, t in obj["coproduct"]}
        counit = {
            key_from_json(k): Scalar(Fraction(t[0], t[1]), Fraction(t[2], t[3]))
            for k, t in obj["counit"]
        }
        antipode = {key_from_json(k): element_from_json(e) for k, e in obj["antipode"]}
    except (KeyError, IndexError, TypeError) as ex:
        raise MalformedSpec(f"bad instance description: {ex}") from None

    identity = None
    if "identity" in obj:
        identity = element_from_json(obj["identity"])
    else:
        identity = _find_identity(domain, basis, product)
    alg = Algebra(
        domain,
        lambda k1, k2: product[(k1, k2)],
        basis=basis,
        identity=identity,
        name=domain,
    )
    return from_hopf_data(
        alg,
        lambda k: coproduct[k],
        lambda k: counit.get(k, Scalar(0)),
        lambda k: antipode[k],
        name=domain,
        meta={"kind": "explicit"},
    )


def _find_identity(domain, basis, product) -> Element | None:
    """Solve for a two-sided identity in the span of the basis."""
    from .linalg import linear_solve

    # stack the equations 1 * e_j = e_j over all j into one solve
    gens = []
    for cand in basis:
        acc = {}
        for j, kj in enumerate(basis):
            for k, c in product[(cand, kj)].coeffs.items():
                acc[(j, k)] = c
        gens.append(Element(f"stack({domain})", acc))
    target_acc = {}
    for j, kj in enumerate(basis):
        target_acc[(j, kj)] = Scalar(1)
    target = Element(f"stack({domain})", target_acc)
    sol = linear_solve(gens, target)
    if sol is None:
        return None
    e = Element(domain, dict(zip(basis, sol)))
    for kj in basis:
        prod_r = {}
        for k, c in e.coeffs.items():
            for k2, c2 in product[(kj, k)].coeffs.items():
                prod_r[k2] = prod_r.get(k2, Scalar(0)) + c * c2
        if Element(domain, prod_r) != Element.basis(domain, kj):
            return None
    return e


# -- actions ---------------------------------------------------------------------


def action_to_json(spec) -> dict:
    return {
        "algebra_id": spec.mha.name,
        "space_id": spec.ralg.name,
        "rule": spec.rule,
    }


def action_from_json(obj):
    """{"algebra_id", "space_id", "rule"} with builtin or explicit rules."""
    from .actions import (
        ActionSpec,
        adjoint_action,
        trivial_action,
    )
    from .instances import (
        get_group,
        grading_action,
        scalar_algebra,
        translation_action,
    )

    try:
        rule = obj["rule"]
        algebra_id = obj["algebra_id"]
    except KeyError as ex:
        raise MalformedSpec(f"action description missing {ex}") from None

    def group_of(instance_id):
        if instance_id.startswith("K(") or instance_id.startswith("C["):
            return get_group(instance_id[2:-1])
        raise MalformedSpec(f"cannot infer group from {instance_id!r}")

    if rule == "translation":
        return translation_action(group_of(algebra_id))
    if rule == "grading":
        return grading_action(group_of(algebra_id))
    if rule == "adjoint":
        h = parse_instance_id(algebra_id)
        return adjoint_action(h)
    if rule == "trivial":
        h = parse_instance_id(algebra_id)
        space_id = obj.get("space_id", "C")
        space = parse_instance_id(space_id)
        if isinstance(space, RegularMHA):
            space = space.algebra
        return trivial_action(h, space)
    if rule == "table":
        h = parse_instance_id(algebra_id)
        space = parse_instance_id(obj["space_id"])
        if isinstance(space, RegularMHA):
            space = space.algebra
        table = {
            (key_from_json(ka), key_from_json(kx)): element_from_json(e)
            for ka, kx, e in obj["entries"]
        }

        def act(a, x):
            out = Element.zero(space.domain)
            for ka, ca in a.coeffs.items():
                for kx, cx in x.coeffs.items():
                    out = out + table[(ka, kx)].scale(ca * cx)
            return out

        return ActionSpec.build(h, space, act, rule="table")
    raise MalformedSpec(f"unknown action rule {rule!r}", field="rule")


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as ex:
        raise MalformedSpec(f"{path}: line {ex.lineno}: {ex.msg}") from None
    except OSError as ex:
        raise UnknownInstance(f"{path}: {ex}") from None
