import json

import pytest

from mhopf.algebras import Algebra
from mhopf.elements import Element
from mhopf.errors import MalformedSpec, UnknownInstance
from mhopf.mha import RegularMHA, verify_mha_axioms
from mhopf.scalars import Scalar, sc
from mhopf.serialize import (
    action_from_json,
    action_to_json,
    element_from_json,
    element_to_json,
    instance_from_json,
    instance_to_json,
    parse_instance_id,
)


def test_element_round_trip():
    e = Element("K(Z2)", {0: sc(1, 2), 1: Scalar(-3)})
    blob = element_to_json(e)
    assert blob["terms"] == [[0, 1, 1, 2, 1], [1, -3, 1, 0, 1]]
    assert element_from_json(blob) == e
    # canonical: serialising the parse reproduces the blob byte for byte
    assert json.dumps(element_to_json(element_from_json(blob))) == json.dumps(blob)


def test_tuple_keys_round_trip():
    e = Element("C[S3]", {(1, 0, 2): sc(5)})
    assert element_from_json(element_to_json(e)) == e


def test_malformed_element():
    with pytest.raises(MalformedSpec):
        element_from_json({"domain": "D", "terms": [[0, 1]]})


def test_builtin_instance_ids(kz2, cz2):
    h = parse_instance_id("K(Z2)")
    assert isinstance(h, RegularMHA) and h.domain == kz2.domain
    h2 = parse_instance_id("C[S3]")
    assert h2.algebra.dim == 6
    d = parse_instance_id("dual(C[Z2])")
    assert d.algebra.dim == 2
    m = parse_instance_id("M(2,C[Z2])")
    assert isinstance(m, Algebra) and m.dim == 8
    t = parse_instance_id("tensor(K(Z2),C[Z2])")
    assert t.dim == 4
    with pytest.raises(UnknownInstance):
        parse_instance_id("Q(8)")


def test_instance_table_round_trip(cz2):
    blob = instance_to_json(cz2)
    rebuilt = instance_from_json(blob)
    assert verify_mha_axioms(rebuilt).ok
    assert rebuilt.algebra.dim == 2
    assert rebuilt.algebra.identity == Element.basis(rebuilt.domain, 0)


def test_instance_rule_round_trip(kz):
    blob = instance_to_json(kz)
    assert blob == {"rule": "function_algebra", "group": "Z"}
    rebuilt = instance_from_json(blob)
    assert rebuilt.domain == kz.domain


def test_corrupted_instance_fails_axioms(cz2):
    blob = instance_to_json(cz2)
    # corrupt the antipode: S := 0
    blob["antipode"] = [[k, {"domain": blob["domain"], "terms": []}] for k, _ in blob["antipode"]]
    rebuilt = instance_from_json(blob)
    rep = verify_mha_axioms(rebuilt)
    assert rep.status_of("antipode-laws") == "fail"
    failing = [e for e in rep.entries if e.status == "fail"]
    assert failing and failing[0].witness is not None


def test_action_round_trip(translation_z2):
    blob = action_to_json(translation_z2)
    assert blob["rule"] == "translation"
    spec = action_from_json(blob)
    assert spec.ralg.domain == translation_z2.ralg.domain
    for rule in ("grading", "adjoint"):
        spec2 = action_from_json({"algebra_id": "K(Z2)" if rule == "grading" else "C[Z2]", "rule": rule})
        assert spec2.rule == rule


def test_explicit_action_table(cz2):
    entries = []
    for ka in cz2.algebra.basis:
        for kx in cz2.algebra.basis:
            entries.append(
                [ka, kx, element_to_json(Element.basis(cz2.domain, kx))]
            )
    spec = action_from_json(
        {
            "algebra_id": "C[Z2]",
            "space_id": "C[Z2]",
            "rule": "table",
            "entries": entries,
        }
    )
    from mhopf.actions import verify_module_algebra

    assert verify_module_algebra(spec).ok  # the trivial action as a table


def test_unknown_action_rule():
    with pytest.raises(MalformedSpec):
        action_from_json({"algebra_id": "C[Z2]", "rule": "mystery"})
