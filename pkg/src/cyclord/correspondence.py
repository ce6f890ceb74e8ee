"""Translations between finite MV-chains and cyclically ordered groups, and
isomorphism search for finite MV-algebras and p.c.o. groups."""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .mv_core import (
    MvAlgebra,
    StructureError,
    build_mv,
    decompose_product,
    interval_algebra,
    is_chain,
)
from .pco import (
    FinitePco,
    LatticeQuotientPco,
    UnwoundElement,
    build_pco,
    canonical_mv,
    co_order,
    is_co,
    quotient_relation,
    unwound_lt,
    unwound_op,
    wound_round,
)

DEFAULT_MAX_SIZE = 24


class SizeCapExceeded(StructureError):
    pass


def _chain_order(A: MvAlgebra) -> list[int]:
    return sorted(range(A.size), key=lambda x: int(A.leq[:, x].sum()))


# -- chain <-> c.o. group --------------------------------------------------

def co_from_chain(A: MvAlgebra) -> FinitePco:
    """C(A): the elements below 1, with wrap-around addition and the rotated order."""
    if not is_chain(A):
        raise StructureError("co_from_chain needs an MV-chain")
    order = [x for x in _chain_order(A) if x != A.one]
    pos = {x: i for i, x in enumerate(order)}
    n = len(order)
    add = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(order):
        for j, y in enumerate(order):
            s = int(A.oplus[x, y])
            add[i, j] = pos[s] if s != A.one else pos[int(A.odot[x, y])]
    neg = [pos[int(A.neg[x])] if x != A.zero else pos[A.zero] for x in order]
    i, j, k = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    rel = ((i < j) & (j < k)) | ((j < k) & (k < i)) | ((k < i) & (i < j))
    labels = [A.label(x) for x in order] if A.labels is not None else None
    return build_pco(add, neg, pos[A.zero], rel=rel, labels=labels)


def chain_from_co(C: FinitePco) -> MvAlgebra:
    """The MV-chain on C plus a top element, with carry-aware truncated sum."""
    if not is_co(C):
        raise StructureError("chain_from_co needs a cyclically ordered group")
    n = C.size
    top = n
    z = C.zero

    def le0(a, b):
        return a == b or a == z or C.lt0(a, b)

    oplus = np.empty((n + 1, n + 1), dtype=np.int64)
    oplus[top, :] = top
    oplus[:, top] = top
    for x in range(n):
        for y in range(n):
            if x == z:
                oplus[x, y] = y
            elif y == z:
                oplus[x, y] = x
            else:
                s = C.add(x, y)
                lo = x if le0(x, y) else y
                oplus[x, y] = s if (s != z and lo != s and le0(lo, s)) else top
    neg = [top if x == z else C.neg(x) for x in range(n)] + [z]
    labels = [C.label(x) for x in range(n)] + [n if C.labels is None else "top"]
    return build_mv(oplus, neg, z, labels)


def chang_of_chain_op(A: MvAlgebra, op: str, a=None, b=None):
    """Z x (A minus 1): lexicographic order, carry when the truncated sum saturates."""
    if not is_chain(A):
        raise StructureError("needs an MV-chain")
    if op == "unit":
        return (1, A.zero)
    for p in (a, b):
        if p is not None and p[1] == A.one:
            raise StructureError("second component must lie below 1")
    (m, x), (n, y) = a, b
    if op == "add":
        s = int(A.oplus[x, y])
        if s != A.one:
            return (m + n, s)
        return (m + n + 1, int(A.odot[x, y]))
    if op == "leq":
        return m < n or (m == n and bool(A.leq[x, y]))
    raise StructureError(f"unknown operation {op!r}")


# -- isomorphism search ----------------------------------------------------

@dataclass(frozen=True)
class IsoWitness:
    kind: str
    mapping: tuple[int, ...]

    def verify(self, S, T) -> bool:
        return _verify(self.kind, S, T, self.mapping)


def _max_size() -> int:
    raw = os.environ.get("CYCLORD_MAX_SIZE")
    return int(raw) if raw else DEFAULT_MAX_SIZE


def _kind_of(S, T, kind):
    if kind is not None:
        return kind
    if isinstance(S, MvAlgebra) and isinstance(T, MvAlgebra):
        return "mv"
    if isinstance(S, FinitePco) and isinstance(T, FinitePco):
        return "pco"
    raise StructureError("iso needs two MV-algebras or two finite p.c.o. groups")


def _finite(S):
    if isinstance(S, LatticeQuotientPco):
        return S.as_finite()
    return S


def _verify(kind, S, T, f) -> bool:
    f = np.asarray(f, dtype=np.int64)
    if len(f) != len(np.unique(f)):
        return False
    if kind == "mv":
        return (
            f[S.zero] == T.zero
            and np.array_equal(f[S.neg], T.neg[f])
            and np.array_equal(f[S.oplus], T.oplus[np.ix_(f, f)])
        )
    ok = f[S.zero] == T.zero and np.array_equal(f[S.add_table], T.add_table[np.ix_(f, f)])
    if kind == "pco":
        ok = ok and np.array_equal(S.rel_table, T.rel_table[np.ix_(f, f, f)])
    return bool(ok)


def _mv_profile(A: MvAlgebra):
    below = A.leq.sum(axis=0)
    above = A.leq.sum(axis=1)
    out = []
    for x in range(A.size):
        seq, acc = [], A.zero
        for _ in range(A.size):
            acc = int(A.oplus[acc, x])
            seq.append(int(below[acc]))
        out.append((int(below[x]), int(above[x]), tuple(seq)))
    return out


def _pco_profile(C: FinitePco, use_rel: bool):
    from .pco import element_orders

    orders = element_orders(C)
    if not use_rel:
        return [(o,) for o in orders]
    r0 = C.rel_table[C.zero]
    up = r0.sum(axis=1)
    down = r0.sum(axis=0)
    return [(orders[x], int(up[x]), int(down[x])) for x in range(C.size)]


def _tables(kind, S):
    if kind == "mv":
        return S.oplus, S.zero, S.neg
    return S.add_table, S.zero, S.neg_table


def _invariants_differ(kind, S, T) -> bool:
    if kind == "mv":
        from .mv_core import shape_classify

        return shape_classify(S) != shape_classify(T)
    from .model_check import eq_invariants

    if kind == "pco" and is_co(S) and is_co(T):
        return eq_invariants(S).comparable_key() != eq_invariants(T).comparable_key()
    from .model_check import zakon_invariant

    return any(zakon_invariant(S, p) != zakon_invariant(T, p) for p in (2, 3, 5, 7, 11, 13))


def iso(S, T, kind: str | None = None, max_size: int | None = None) -> IsoWitness | None:
    """Find an isomorphism S -> T, or None when none exists.

    ``kind`` is "mv", "pco" (group and relation) or "group" (tables only).
    """
    S, T = _finite(S), _finite(T)
    kind = _kind_of(S, T, kind)
    cap = max_size if max_size is not None else _max_size()
    n = S.size
    if max(n, T.size) > cap:
        raise SizeCapExceeded(f"size {max(n, T.size)} exceeds the cap {cap}")
    if n != T.size:
        return None
    if kind == "mv":
        ps, pt = _mv_profile(S), _mv_profile(T)
    else:
        ps, pt = _pco_profile(S, kind == "pco"), _pco_profile(T, kind == "pco")
    if Counter(ps) != Counter(pt) or _invariants_differ(kind, S, T):
        return None

    opS, zS, negS = (np.asarray(t) for t in _tables(kind, S))
    opT, zT, negT = (np.asarray(t) for t in _tables(kind, T))
    opS, opT = opS.tolist(), opT.tolist()
    negS, negT = negS.tolist(), negT.tolist()
    zS, zT = int(zS), int(zT)
    cands = {x: [y for y in range(n) if pt[y] == ps[x]] for x in range(n)}

    def propagate(f, inv, queue):
        # extend f along the operations; False on contradiction
        while queue:
            a = queue.pop()
            for b in list(f):
                for c, d in ((opS[a][b], opT[f[a]][f[b]]), (opS[b][a], opT[f[b]][f[a]])):
                    if c in f:
                        if f[c] != d:
                            return False
                    elif d in inv or ps[c] != pt[d]:
                        return False
                    else:
                        f[c], inv[d] = d, c
                        queue.append(c)
            c, d = negS[a], negT[f[a]]
            if c in f:
                if f[c] != d:
                    return False
            elif d in inv or ps[c] != pt[d]:
                return False
            else:
                f[c], inv[d] = d, c
                queue.append(c)
        return True

    order = sorted(range(n), key=lambda x: (len(cands[x]), x))

    def search(f, inv):
        if len(f) == n:
            m = tuple(f[x] for x in range(n))
            return m if _verify(kind, S, T, m) else None
        x = next(v for v in order if v not in f)
        for y in cands[x]:
            if y in inv:
                continue
            f2, inv2 = dict(f), dict(inv)
            f2[x], inv2[y] = y, x
            if propagate(f2, inv2, [x]):
                found = search(f2, inv2)
                if found is not None:
                    return found
        return None

    f0, inv0 = {zS: zT}, {zT: zS}
    if not propagate(f0, inv0, [zS]):
        return None
    m = search(f0, inv0)
    return IsoWitness(kind, m) if m is not None else None


# -- round trips -----------------------------------------------------------

@dataclass(frozen=True)
class RoundTripReport:
    ok: bool
    path: str
    witness: IsoWitness | None
    rieger_ok: bool | None = None
    detail: str = ""

    def __str__(self):
        s = f"round trip via {self.path}: {'ok' if self.ok else 'FAILED'}"
        if self.rieger_ok is not None:
            s += f"; unwound consistency: {'ok' if self.rieger_ok else 'FAILED'}"
        return s + (f" ({self.detail})" if self.detail else "")


def rieger_check(C: FinitePco) -> bool:
    """The unwound of C winds back onto C, and carries happen exactly on wrap."""
    n = C.size
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if quotient_relation(C, x, y, z) != C.rel(x, y, z):
                    return False
    unit = unwound_op(C, "unit")
    for x in range(n):
        for y in range(n):
            if x == C.zero or y == C.zero:
                continue
            g, h = UnwoundElement(0, x), UnwoundElement(0, y)
            s = unwound_op(C, "add", g, h)
            below_unit = unwound_lt(C, s, unit)
            if below_unit != (s.n == 0) or below_unit != C.lt0(x, C.add(x, y)):
                return False
    return True


def round_trip(A: MvAlgebra) -> RoundTripReport:
    """Rebuild A from its cyclically ordered group and compare."""
    if is_chain(A):
        C = co_from_chain(A)
        w = iso(A, canonical_mv(C))
        return RoundTripReport(w is not None, "chain", w, rieger_check(C))
    u = unit_vector(A)
    W = wound_round(u)
    M = canonical_mv(W)
    w = iso(A, M) if M.size == A.size else None
    return RoundTripReport(w is not None, "lattice quotient", w, None, f"u = {u}")


def unit_vector(A: MvAlgebra) -> tuple[int, ...]:
    """Chain lengths of the factors of A, so that A is Gamma(Z^k, u)."""
    if is_chain(A):
        return (A.size - 1,)
    dec = decompose_product(A)
    if dec is None:
        raise StructureError("algebra is not a bounded-width product of chains")
    u = []
    for unit in dec.units:
        F = interval_algebra(A, unit)
        if not is_chain(F):
            raise StructureError("decomposition factor is not a chain")
        u.append(F.size - 1)
    return tuple(u)


def unwound_window(C: FinitePco, radius: int = 2) -> list[UnwoundElement]:
    """Elements (m, x) with |m| <= radius, in increasing order."""
    order = co_order(C)
    return [UnwoundElement(m, x) for m in range(-radius, radius + 1) for x in order]
