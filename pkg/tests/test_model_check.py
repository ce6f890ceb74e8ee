import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclord.correspondence import co_from_chain
from cyclord.mv_core import StructureError, lukasiewicz, make_gamma, product
from cyclord.model_check import (
    chain_regular,
    co_predicates,
    d_formula,
    d_law,
    d_spectrum,
    element_order_profile,
    eq_invariants,
    invariant_factors,
    prime_power,
    pseudo_classify,
    torsion_subgroup,
    zakon_invariant,
)
from cyclord.pco import co_order, make_cyclic_group, make_product_pco


def group_table(*orders):
    """Addition table and zero of Z/a1 x ... x Z/ak."""
    idx = list(itertools.product(*(range(a) for a in orders)))
    pos = {p: i for i, p in enumerate(idx)}
    add = [[pos[tuple((a + b) % m for a, b, m in zip(p, q, orders))] for q in idx] for p in idx]
    return np.array(add), 0


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    assert prime_power(6) is None and prime_power(1) is None


# -- c.o. predicates ----------------------------------------------------------

def brute_regular(C):
    order = co_order(C)
    rank = {x: i for i, x in enumerate(order)}
    nz = order[1:]

    def increasing(x, n):
        ms = [C.multiple(j, x) for j in range(1, n + 1)]
        return all(C.lt0(a, b) for a, b in zip(ms, ms[1:]))

    for n in range(2, C.size + 2):
        for xs in itertools.combinations(nz, n):
            lo, hi = rank[xs[0]], rank[xs[-1]]
            if not any(increasing(x, n) and lo <= rank[C.multiple(n, x)] <= hi for x in nz):
                return False
    return True


def test_co_predicates_examples():
    p = co_predicates(make_cyclic_group(6))
    assert p.c_archimedean and p.discrete and p.c_regular and p.epsilon == 1
    q = co_predicates(make_cyclic_group(1))
    assert q.c_archimedean and q.discrete and q.c_regular
    assert co_predicates(make_cyclic_group(12)).c_regular
    with pytest.raises(StructureError):
        co_predicates(make_product_pco(make_cyclic_group(2), make_cyclic_group(2)))


@pytest.mark.parametrize("n", range(1, 10))
def test_c_regular_matches_brute_force(n):
    C = make_cyclic_group(n)
    assert co_predicates(C).c_regular == brute_regular(C)


def test_chain_regular_examples():
    assert chain_regular(lukasiewicz(6))
    assert chain_regular(lukasiewicz(1))
    assert chain_regular(lukasiewicz(12)) == co_predicates(make_cyclic_group(12)).c_regular
    with pytest.raises(StructureError):
        chain_regular(make_gamma((1, 1)))


# -- D formulas ---------------------------------------------------------------

def brute_d(C, q, k):
    eps = co_order(C)[1]
    target = C.multiple(k, eps)
    for x in C.elements():
        if x == C.zero:
            continue
        ms = [C.multiple(j, x) for j in range(1, q)]
        if q >= 3 and not all(C.lt0(a, b) for a, b in zip(ms, ms[1:])):
            continue
        if C.multiple(q, x) == target:
            return True
    return False


def test_d_formula_examples():
    assert d_formula(make_cyclic_group(5), 2, 1)
    assert not d_formula(make_cyclic_group(6), 4, 2)
    assert d_formula(make_cyclic_group(8), 4, 0)


def test_d_formula_errors():
    C = make_cyclic_group(6)
    with pytest.raises(StructureError):
        d_formula(C, 6, 1)
    with pytest.raises(StructureError):
        d_formula(C, 3, 3)
    with pytest.raises(StructureError):
        d_formula(make_cyclic_group(1), 2, 0)


@pytest.mark.parametrize("n", range(2, 31))
def test_d_formula_matches_search_and_law(n):
    C = make_cyclic_group(n)
    for q in (2, 3, 4, 5, 7, 8, 9):
        for k in range(q):
            assert d_formula(C, q, k) == brute_d(C, q, k) == d_law(n, q, k), (q, k)


def test_d_spectrum_distinguishes_chains():
    s5, s7 = d_spectrum(lukasiewicz(5)), d_spectrum(lukasiewicz(7))
    assert s5[(2, 1)] and s7[(2, 1)]
    assert s5 != s7


# -- groups -------------------------------------------------------------------

def test_zakon_examples():
    C = make_cyclic_group(6)
    assert zakon_invariant(C, 2) == 2
    assert zakon_invariant(C, 5) == 1
    assert zakon_invariant(make_cyclic_group(1), 3) == 1
    assert zakon_invariant(group_table(2, 2), 2) == 4
    with pytest.raises(StructureError):
        zakon_invariant(C, 4)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=3))
def test_invariant_factors_match_structure(orders):
    B = group_table(*orders)
    got = invariant_factors(B)
    assert math.prod(got) == math.prod(orders)
    assert all(b % a == 0 for a, b in zip(got, got[1:]))
    assert all(d > 1 for d in got)
    # a p-rank check independent of the factor algorithm
    for p in (2, 3, 5):
        assert zakon_invariant(B, p) == p ** sum(1 for d in got if d % p == 0)


def test_invariant_factor_examples():
    assert invariant_factors(group_table(6)) == (6,)
    assert invariant_factors(group_table(2, 4)) == (2, 4)
    assert invariant_factors(group_table(4, 6)) == (2, 12)
    assert invariant_factors(group_table(1)) == ()


def test_torsion_examples():
    t = torsion_subgroup(make_cyclic_group(6))
    assert t.elements == tuple(range(6)) and t.invariant_factors == (6,)
    A = lukasiewicz(4)
    assert tuple(A.label(x) for x in torsion_subgroup(A).elements) == (1, 2, 3)
    assert torsion_subgroup(lukasiewicz(1)).elements == ()


def test_eq_invariants_examples():
    Z4 = make_cyclic_group(4)
    V = make_product_pco(make_cyclic_group(2), make_cyclic_group(2))
    a, b = eq_invariants(Z4), eq_invariants(V)
    assert a.zakon[2] == 2 and b.zakon[2] == 4
    assert a.comparable_key() != b.comparable_key()
    assert eq_invariants(Z4).comparable_key() == a.comparable_key()
    assert eq_invariants(lukasiewicz(5)).d_spectrum != eq_invariants(lukasiewicz(7)).d_spectrum


def test_element_order_profile():
    assert element_order_profile(make_cyclic_group(6)) == ((1, 1), (2, 1), (3, 2), (6, 2))


# -- classification -----------------------------------------------------------

def test_pseudo_classify_examples():
    r = pseudo_classify(lukasiewicz(6))
    assert r.chain_criteria and r.satisfied
    s = pseudo_classify(product(lukasiewicz(2), lukasiewicz(3)))
    assert s.product_criteria and s.satisfied and len(s.factors) == 2
    t = pseudo_classify(make_gamma((1, 1)))
    assert not t.chain_criteria and t.product_criteria and t.satisfied
    assert [f.size for f in t.factors] == [2, 2]
    assert "product criteria: True" in str(t)
    with pytest.raises(StructureError):
        pseudo_classify(make_gamma((1, 1, 1, 1, 1)))


@pytest.mark.parametrize("n", range(1, 25))
def test_chain_view_of_d_formula(n):
    A = lukasiewicz(n)
    C = co_from_chain(A)
    if n >= 2:
        for q in (2, 3, 4, 5):
            for k in range(q):
                assert d_formula(A, q, k) == d_formula(C, q, k)
    assert chain_regular(A) == co_predicates(C).c_regular
