import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclord.correspondence import (
    SizeCapExceeded,
    chain_from_co,
    chang_of_chain_op,
    co_from_chain,
    iso,
    rieger_check,
    round_trip,
    unit_vector,
    unwound_window,
)
from cyclord.mv_core import StructureError, build_mv, check_mv_axioms, lukasiewicz, make_gamma, product
from cyclord.pco import (
    build_pco,
    canonical_mv,
    check_pco_axioms,
    make_cyclic_group,
    make_product_pco,
    unwound_lt,
    wound_round,
)


def relabel_mv(A, perm):
    """Copy of A with element x renamed perm[x]."""
    perm = np.asarray(perm)
    inv = np.argsort(perm)
    return build_mv(perm[A.oplus[np.ix_(inv, inv)]], perm[A.neg[inv]], int(perm[A.zero]))


def relabel_pco(C, perm):
    perm = np.asarray(perm)
    inv = np.argsort(perm)
    return build_pco(perm[C.add_table[np.ix_(inv, inv)]], perm[C.neg_table[inv]],
                     int(perm[C.zero]), rel=C.rel_table[np.ix_(inv, inv, inv)])


def brute_iso_mv(A, B):
    if A.size != B.size:
        return False
    for p in itertools.permutations(range(A.size)):
        f = np.array(p)
        if (f[A.zero] == B.zero and np.array_equal(f[A.neg], B.neg[f])
                and np.array_equal(f[A.oplus], B.oplus[np.ix_(f, f)])):
            return True
    return False


# -- chain <-> c.o. group -----------------------------------------------------

def test_co_from_chain_examples():
    C = co_from_chain(lukasiewicz(4))
    assert iso(C, make_cyclic_group(4), kind="pco") is not None
    assert co_from_chain(lukasiewicz(1)).size == 1
    A = lukasiewicz(4)
    idx = {A.label(x): i for i, x in enumerate(sorted(range(5), key=A.label)) if A.label(x) != 4}
    assert C.label(C.add(idx[2], idx[3])) == 1
    with pytest.raises(StructureError):
        co_from_chain(make_gamma((1, 1)))


def test_chain_from_co_examples():
    assert iso(chain_from_co(make_cyclic_group(4)), lukasiewicz(4)) is not None
    M = chain_from_co(make_cyclic_group(5))
    assert M.oplus[2, 2] == 4
    assert M.oplus[3, 3] == M.one
    with pytest.raises(StructureError):
        chain_from_co(make_product_pco(make_cyclic_group(2), make_cyclic_group(3)))


@pytest.mark.parametrize("n", range(1, 16))
def test_chain_group_chain(n):
    A = lukasiewicz(n)
    C = co_from_chain(A)
    assert check_pco_axioms(C).is_co
    M = chain_from_co(C)
    assert check_mv_axioms(M).passed
    assert iso(A, M) is not None


def test_chang_of_chain_examples():
    A = lukasiewicz(4)
    assert chang_of_chain_op(A, "add", (0, 2), (0, 3)) == (1, 1)
    assert chang_of_chain_op(A, "add", (2, 0), (3, 0)) == (5, 0)
    assert chang_of_chain_op(A, "add", (0, 1), (0, 2)) == (0, 3)
    assert chang_of_chain_op(A, "unit") == (1, 0)
    assert chang_of_chain_op(A, "leq", (0, 3), (1, 0))
    with pytest.raises(StructureError):
        chang_of_chain_op(A, "add", (0, 4), (0, 1))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 9), st.integers(-5, 5), st.integers(0, 8), st.integers(-5, 5), st.integers(0, 8))
def test_chang_of_chain_is_integers(n, m, x, k, y):
    A = lukasiewicz(n)
    x, y = x % n, y % n
    s = chang_of_chain_op(A, "add", (m, x), (k, y))
    assert s[0] * n + s[1] == (m * n + x) + (k * n + y)
    assert chang_of_chain_op(A, "leq", (m, x), (k, y)) == (m * n + x <= k * n + y)


# -- isomorphism search -------------------------------------------------------

def test_iso_examples():
    V = make_product_pco(make_cyclic_group(2), make_cyclic_group(2))
    assert iso(make_cyclic_group(4), V, kind="group") is None
    A = make_gamma((2, 3))
    w = iso(A, A)
    assert w.mapping == tuple(range(A.size)) and w.verify(A, A)
    assert iso(canonical_mv(wound_round((2, 3))), A) is not None
    assert iso(product(lukasiewicz(2), lukasiewicz(3)), A) is not None
    assert iso(lukasiewicz(3), make_gamma((1, 1))) is None


def test_iso_cap(monkeypatch):
    A = make_gamma((4, 4))
    with pytest.raises(SizeCapExceeded):
        iso(A, A)
    assert iso(A, A, max_size=25) is not None
    monkeypatch.setenv("CYCLORD_MAX_SIZE", "30")
    assert iso(A, A) is not None


def test_iso_rejects_mixed_kinds():
    with pytest.raises(StructureError):
        iso(lukasiewicz(2), make_cyclic_group(3))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(1,), (3,), (1, 1), (1, 2), (2, 1), (1, 1, 1)]), st.randoms(use_true_random=False))
def test_iso_finds_relabelings(u, rnd):
    A = make_gamma(u)
    perm = list(range(A.size))
    rnd.shuffle(perm)
    B = relabel_mv(A, perm)
    w = iso(A, B)
    assert w is not None and w.verify(A, B)


@pytest.mark.parametrize("pair", [((1, 2), (3,)), ((1, 1), (3,)), ((2,), (2,)), ((1, 1), (1, 1))])
def test_iso_matches_permutation_oracle(pair):
    A, B = make_gamma(pair[0]), make_gamma(pair[1])
    assert (iso(A, B) is not None) == brute_iso_mv(A, B)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.randoms(use_true_random=False))
def test_iso_pco_relabel(n, rnd):
    C = make_cyclic_group(n)
    perm = list(range(n))
    rest = perm[1:]
    rnd.shuffle(rest)
    D = relabel_pco(C, [0] + rest)
    w = iso(C, D, kind="pco")
    assert w is not None and w.verify(C, D)


def test_iso_pco_orientation_reversal_is_iso():
    # reversing the circle is an isomorphism of Z/n onto the reversed order via x -> -x
    C = make_cyclic_group(7)
    D = build_pco(C.add_table, C.neg_table, 0, rel=C.rel_table.transpose(0, 2, 1))
    assert iso(C, D, kind="pco") is not None


# -- round trips --------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 8))
def test_round_trip_chains(n):
    rep = round_trip(lukasiewicz(n))
    assert rep.ok and rep.rieger_ok and rep.path == "chain"


def test_round_trip_non_chains():
    rep = round_trip(make_gamma((2, 3)))
    assert rep.ok and rep.path == "lattice quotient"
    assert "u = " in str(rep)
    assert round_trip(make_gamma((1, 1))).ok


def test_unit_vector():
    assert unit_vector(lukasiewicz(5)) == (5,)
    assert sorted(unit_vector(product(lukasiewicz(2), lukasiewicz(3)))) == [2, 3]


@pytest.mark.parametrize("n", range(1, 11))
def test_rieger(n):
    assert rieger_check(make_cyclic_group(n))


def test_unwound_window_is_increasing():
    C = make_cyclic_group(5)
    win = unwound_window(C, 2)
    assert len(win) == 25
    assert all(unwound_lt(C, a, b) for a, b in zip(win, win[1:]))
