import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclord.mv_core import (
    Shape,
    StructureError,
    algebra_predicates,
    build_mv,
    check_mv_axioms,
    decompose_product,
    derived_op,
    element_predicates,
    interval_algebra,
    is_chain,
    lukasiewicz,
    make_gamma,
    polar,
    product,
    shape_classify,
    verify_decomposition,
)


def truncated_tables(n):
    """Integer oracle for L_n: x + y = min(x + y, n), neg x = n - x."""
    op = [[min(x + y, n) for y in range(n + 1)] for x in range(n + 1)]
    return op, [n - x for x in range(n + 1)]


def test_boolean_two_element():
    A = build_mv([[0, 1], [1, 1]], [1, 0], 0)
    assert check_mv_axioms(A).passed
    assert A.size == 2 and A.one == 1


def test_out_of_range_entry_rejected():
    with pytest.raises(StructureError, match="outside"):
        build_mv([[0, 2], [2, 1]], [1, 0], 0)


def test_ragged_and_shape_errors():
    with pytest.raises(StructureError):
        build_mv([[0, 1], [1]], [1, 0], 0)
    with pytest.raises(StructureError):
        build_mv([[0, 1, 1]], [1, 0], 0)
    with pytest.raises(StructureError):
        build_mv([[0]], [0], 3)


def test_l3_from_integer_oracle():
    op, ng = truncated_tables(3)
    A = build_mv(op, ng, 0)
    assert check_mv_axioms(A).passed
    assert np.array_equal(A.oplus, lukasiewicz(3).oplus)


@pytest.mark.parametrize("n", range(1, 13))
def test_lukasiewicz_matches_oracle(n):
    A = lukasiewicz(n)
    op, ng = truncated_tables(n)
    assert A.oplus.tolist() == op and A.neg.tolist() == ng
    for x, y in itertools.product(range(n + 1), repeat=2):
        assert A.odot[x, y] == max(x + y - n, 0)
        assert A.leq[x, y] == (x <= y)
        assert A.meet[x, y] == min(x, y)
        assert A.join[x, y] == max(x, y)


def test_l2_passes_and_broken_negation_fails():
    A = lukasiewicz(2)
    assert check_mv_axioms(A).passed
    ng = A.neg.copy()
    ng[0] = 0
    rep = check_mv_axioms(build_mv(A.oplus, ng, 0))
    assert not rep.passed
    assert set(rep.failed()) & {"MV5", "MV6"}
    assert all(rep.witnesses[k] is not None for k in rep.failed())


def test_l4_passes():
    assert check_mv_axioms(lukasiewicz(4)).passed


def test_derived_ops_examples():
    A = lukasiewicz(3)
    assert derived_op(A, "odot", 2, 2) == 1
    assert derived_op(A, "leq", 1, 2) is True
    for B in (A, make_gamma((2, 3)), make_gamma((1, 1))):
        for x in range(B.size):
            assert derived_op(B, "meet", x, B.zero) == B.zero
    with pytest.raises(StructureError):
        derived_op(A, "nand", 0, 1)
    with pytest.raises(StructureError):
        derived_op(A, "meet", 0, 9)


@pytest.mark.parametrize("u", [(3,), (1, 1), (2, 3), (1, 2, 1)])
def test_derived_ops_agree_with_cached_tables(u):
    A = make_gamma(u)
    for x, y in itertools.product(range(A.size), repeat=2):
        assert derived_op(A, "odot", x, y) == A.odot[x, y]
        assert derived_op(A, "meet", x, y) == A.meet[x, y]
        assert derived_op(A, "join", x, y) == A.join[x, y]
        assert derived_op(A, "leq", x, y) == A.leq[x, y]


def test_make_gamma_examples():
    A = make_gamma((4,))
    assert A.size == 5
    assert A.label(A.oplus[A.index(2), A.index(3)]) == 4
    assert A.label(A.neg[A.index(1)]) == 3
    B = make_gamma((1, 1))
    assert B.size == 4 and not is_chain(B)
    assert make_gamma((2, 3)).size == 12
    with pytest.raises(StructureError):
        make_gamma((0, 2))
    with pytest.raises(StructureError):
        make_gamma(())


def test_gamma_matches_componentwise_oracle():
    u = (2, 1, 3)
    A = make_gamma(u)
    for x, y in itertools.product(range(A.size), repeat=2):
        a, b = A.label(x), A.label(y)
        assert A.label(A.oplus[x, y]) == tuple(min(p + q, c) for p, q, c in zip(a, b, u))
        assert A.leq[x, y] == all(p <= q for p, q in zip(a, b))


def test_product_examples():
    P = product(lukasiewicz(2), lukasiewicz(3))
    assert P.size == 12 and check_mv_axioms(P).passed
    B = product(lukasiewicz(1), lukasiewicz(1))
    s = B.oplus[B.index((1, 0)), B.index((0, 1))]
    assert s == B.one and B.label(s) == (1, 1)


def test_shape_examples():
    assert shape_classify(lukasiewicz(1)) is Shape.TWO
    assert shape_classify(lukasiewicz(2)) is Shape.THREE
    assert shape_classify(make_gamma((1, 1))) is Shape.FOUR_X_NEGX
    assert shape_classify(lukasiewicz(4)) is Shape.DENSE_COMPARABLE
    # the four-element chain satisfies two branches; the earlier one wins
    assert shape_classify(lukasiewicz(3)) is Shape.FOUR_X_NEGX


def test_element_predicates_examples():
    A = lukasiewicz(4)
    assert element_predicates(A, 1).is_atom
    assert not element_predicates(A, 2).is_atom
    assert element_predicates(A, 2).is_torsion
    for B in (A, make_gamma((2, 3)), make_gamma((1, 1))):
        assert all(element_predicates(B, x, torsion=False).is_archimedean for x in range(B.size))


def test_algebra_predicates_examples():
    p = algebra_predicates(lukasiewicz(4))
    assert p.is_chain and p.is_atomic and p.is_hyperarchimedean
    q = algebra_predicates(make_gamma((1, 1)))
    assert not q.is_chain and q.is_projectable
    r = algebra_predicates(lukasiewicz(1))
    assert r.is_chain and r.is_atomic and r.is_hyperarchimedean


def test_polar_examples():
    P = product(lukasiewicz(2), lukasiewicz(3))
    got = {P.label(x) for x in polar(P, [P.index((1, 0))])}
    assert got == {(0, j) for j in range(4)}
    assert sorted(polar(P, [P.zero])) == list(range(P.size))
    assert polar(P, range(P.size)) == [P.zero]


def test_decompositions():
    P = product(lukasiewicz(2), lukasiewicz(3))
    d = decompose_product(P)
    assert {P.label(u) for u in d.units} == {(2, 0), (0, 3)}
    assert verify_decomposition(P, d.units)
    assert decompose_product(lukasiewicz(4)).units == (lukasiewicz(4).one,)
    B = make_gamma((1, 1))
    assert {B.label(u) for u in decompose_product(B).units} == {(1, 0), (0, 1)}
    sizes = sorted(interval_algebra(P, u).size for u in d.units)
    assert sizes == [3, 4]
    assert decompose_product(make_gamma((1, 1, 1, 1, 1)), max_width=4) is None


def _random_tables(data, n):
    op = data.draw(st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n),
                            min_size=n, max_size=n))
    ng = data.draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return op, ng


def _brute_axioms(op, ng, zero):
    n = len(ng)
    r = range(n)
    one = ng[zero]
    return (
        all(op[x][op[y][z]] == op[op[x][y]][z] for x in r for y in r for z in r)
        and all(op[x][y] == op[y][x] for x in r for y in r)
        and all(op[x][zero] == x for x in r)
        and all(ng[ng[x]] == x for x in r)
        and all(op[x][one] == one for x in r)
        and all(op[ng[op[ng[x]][y]]][y] == op[ng[op[ng[y]][x]]][x] for x in r for y in r)
    )


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_axiom_check_matches_brute_force(data):
    n = data.draw(st.integers(1, 4))
    op, ng = _random_tables(data, n)
    assert check_mv_axioms(build_mv(op, ng, 0)).passed == _brute_axioms(op, ng, 0)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_gamma_is_product_of_chains(u):
    from cyclord.correspondence import iso

    acc = lukasiewicz(u[0])
    for c in u[1:]:
        acc = product(acc, lukasiewicz(c))
    assert iso(make_gamma(u), acc, max_size=64) is not None
