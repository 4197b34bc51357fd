from hypothesis import given, strategies as st

from mhopf.elements import Element
from mhopf.linalg import (
    Matrix,
    SparseEliminator,
    in_span,
    linear_solve,
    span_rank,
    spans_same,
)
from mhopf.scalars import ONE, Scalar, sc


def el(domain, **kw):
    return Element(domain, {int(k[1:]): sc(v) for k, v in kw.items()})


def test_solve_two_dim_identity_adjacent():
    d0, d1 = Element.basis("D", 0), Element.basis("D", 1)
    c = linear_solve([d0 + d1, d1], d0)
    assert c == [sc(1), sc(-1)]


def test_solve_disjoint_support():
    assert linear_solve([Element.basis("D", 0)], Element.basis("D", 1)) is None


def test_solve_local_unit_span():
    # span{ b*(a_1, a_2) : b basis of K(Z2) } contains (a_1, a_2): stacked
    # two-component system over the pointwise product algebra on Z2
    a1 = {0: sc(1), 1: sc(2)}
    a2 = {0: sc(-1), 1: sc(1)}

    def stacked(b):
        # b is a basis index of K(Z2): b * a_i is pointwise masking
        acc = {}
        for slot, a in ((0, a1), (1, a2)):
            if b in a:
                acc[(slot, b)] = a[b]
        return Element("K(Z2)^2", acc)

    target = Element(
        "K(Z2)^2",
        {(0, 0): a1[0], (0, 1): a1[1], (1, 0): a2[0], (1, 1): a2[1]},
    )
    c = linear_solve([stacked(0), stacked(1)], target)
    assert c == [ONE, ONE]  # the local unit is the all-ones indicator


def test_solution_is_exact():
    gens = [
        Element("D", {0: sc(1), 1: sc(3)}),
        Element("D", {1: sc(1), 2: sc(-2)}),
        Element("D", {0: sc(2), 2: sc(1)}),
    ]
    target = Element("D", {0: sc(5), 1: sc(7), 2: sc(-3)})
    c = linear_solve(gens, target)
    assert c is not None
    total = Element.zero("D")
    for ci, g in zip(c, gens):
        total = total + g.scale(ci)
    assert total == target


coeffs = st.fractions(min_value=-7, max_value=7, max_denominator=3).map(Scalar)
vecs = st.lists(
    st.dictionaries(st.integers(0, 4), coeffs, max_size=4).map(
        lambda d: Element("D", d)
    ),
    min_size=1,
    max_size=5,
)


@given(vecs, st.dictionaries(st.integers(0, 4), coeffs, max_size=4))
def test_solve_round_trip(gens, td):
    target = Element("D", td)
    c = linear_solve(gens, target)
    if c is not None:
        total = Element.zero("D")
        for ci, g in zip(c, gens):
            total = total + g.scale(ci)
        assert total == target
    else:
        assert not in_span(gens, target)


def test_matrix_inverse_and_nullspace():
    m = Matrix([[sc(2), sc(1)], [sc(1), sc(1)]])
    inv = m.inverse()
    assert m.mul(inv).rows == Matrix.identity(2).rows
    singular = Matrix([[sc(1), sc(2)], [sc(2), sc(4)]])
    assert singular.inverse() is None
    ns = singular.nullspace()
    assert len(ns) == 1 and ns[0] == [sc(-2), sc(1)]


def test_empty_constraint_system_has_full_nullspace():
    assert len(Matrix.zeros(0, 3).nullspace()) == 3


def test_sparse_eliminator_matches_dense_rank():
    vectors = [
        Element("D", {0: sc(1), 2: sc(1)}),
        Element("D", {1: sc(1)}),
        Element("D", {0: sc(1), 1: sc(1), 2: sc(1)}),
    ]
    assert span_rank(vectors) == 2
    elim = SparseEliminator()
    for v in vectors:
        elim.add(v.coeffs)
    assert elim.rank == 2
    assert elim.contains({0: sc(2), 1: sc(2), 2: sc(2)})


def test_spans_same():
    a = [Element("D", {0: sc(1)}), Element("D", {1: sc(1)})]
    b = [Element("D", {0: sc(1), 1: sc(1)}), Element("D", {0: sc(1), 1: sc(-1)})]
    assert spans_same(a, b)
    assert not spans_same(a, [Element("D", {0: sc(1)})])
