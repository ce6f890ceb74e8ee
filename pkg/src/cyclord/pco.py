"""Partially cyclically ordered (p.c.o.) abelian groups.

Two carriers share one operation surface:

* :class:`FinitePco` -- explicit group tables plus the ternary relation as a
  boolean ``size x size x size`` array;
* :class:`LatticeQuotientPco` -- ``Z^k / Z u`` for a positive integer vector
  ``u`` (componentwise order), with elements kept as the unique
  representative ``v >= 0, v not >= u``. The carrier is infinite for k >= 2,
  so everything is computed on demand.

Both expose ``zero``, ``add``, ``neg``, ``sub``, ``rel`` and ``lt0`` and a
finite list of non-isolated elements, which is all the MV-side machinery needs.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .mv_core import MvAlgebra, StructureError, build_mv


class NotInACClass(ValueError):
    """The non-isolated elements do not define an MV-algebra canonically."""


class ResourceBound(RuntimeError):
    """An exhaustive quantifier would exceed its configured cap."""


class _Top:
    """The element adjoined above A(C); absorbs nothing and adds as identity."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "TOP"

    def __lt__(self, other):
        return False


TOP = _Top()


@dataclass(frozen=True, eq=False)
class FinitePco:
    add_table: np.ndarray
    neg_table: np.ndarray
    zero: int
    rel_table: np.ndarray
    labels: tuple | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.neg_table)

    def label(self, x):
        return self.labels[x] if self.labels is not None else x

    def elements(self) -> range:
        return range(self.size)

    def add(self, x: int, y: int) -> int:
        return int(self.add_table[x, y])

    def neg(self, x: int) -> int:
        return int(self.neg_table[x])

    def sub(self, x: int, y: int) -> int:
        return int(self.add_table[x, self.neg_table[y]])

    def rel(self, x: int, y: int, z: int) -> bool:
        return bool(self.rel_table[x, y, z])

    def lt0(self, x: int, y: int) -> bool:
        return bool(self.rel_table[self.zero, x, y])

    def multiple(self, n: int, x: int) -> int:
        acc = self.zero
        for _ in range(n):
            acc = int(self.add_table[acc, x])
        return acc

    def triples(self) -> list[tuple[int, int, int]]:
        return [tuple(int(i) for i in t) for t in np.argwhere(self.rel_table)]

    @cached_property
    def axiom_report(self) -> "PcoReport":
        return check_pco_axioms(self)

    @cached_property
    def _non_isolated(self) -> tuple[int, ...]:
        r0 = self.rel_table[self.zero]
        hit = r0.any(axis=1) | r0.any(axis=0)
        hit[self.zero] = True
        return tuple(int(x) for x in np.flatnonzero(hit))

    def non_isolated(self) -> list[int]:
        return list(self._non_isolated)

    def __eq__(self, other):
        if not isinstance(other, FinitePco):
            return NotImplemented
        return (
            self.zero == other.zero
            and np.array_equal(self.add_table, other.add_table)
            and np.array_equal(self.neg_table, other.neg_table)
            and np.array_equal(self.rel_table, other.rel_table)
        )

    __hash__ = object.__hash__

    def __repr__(self):
        return f"FinitePco(size={self.size}, |R|={int(self.rel_table.sum())})"


def build_pco(add, neg, zero: int, rel=None, triples: Iterable | None = None,
              labels: Sequence | None = None) -> FinitePco:
    """Wrap group tables and a ternary relation; no axioms are checked."""
    try:
        ad = np.array(add, dtype=np.int64)
        ng = np.array(neg, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise StructureError(f"group tables must be rectangular integer arrays: {exc}") from None
    n = len(ng)
    if ng.ndim != 1 or n == 0 or ad.shape != (n, n):
        raise StructureError(f"add must be {n}x{n} and neg of length {n}")
    for name, t in (("add", ad), ("neg", ng)):
        bad = np.argwhere((t < 0) | (t >= n))
        if len(bad):
            pos = tuple(int(i) for i in bad[0])
            raise StructureError(f"{name}{list(pos)} = {int(t[pos])} is outside 0..{n - 1}")
    if not 0 <= zero < n:
        raise StructureError(f"zero index {zero} outside 0..{n - 1}")
    if rel is None:
        r = np.zeros((n, n, n), dtype=bool)
        for t in triples or ():
            t = tuple(int(c) for c in t)
            if len(t) != 3 or not all(0 <= c < n for c in t):
                raise StructureError(f"relation triple {t} is not a triple over 0..{n - 1}")
            r[t] = True
    else:
        r = np.array(rel, dtype=bool)
        if r.shape != (n, n, n):
            raise StructureError(f"relation must have shape {(n, n, n)}")
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != n:
            raise StructureError("labels length does not match table size")
    for t in (ad, ng, r):
        t.setflags(write=False)
    return FinitePco(ad, ng, int(zero), r, labels)


# -- axioms ---------------------------------------------------------------

@dataclass(frozen=True)
class PcoReport:
    witnesses: dict
    linear_witness: tuple | None

    @property
    def passed(self) -> bool:
        return all(w is None for w in self.witnesses.values())

    @property
    def is_co(self) -> bool:
        return self.passed and self.linear_witness is None

    def failed(self) -> list[str]:
        return [k for k, w in self.witnesses.items() if w is not None]

    def __str__(self):
        lines = [f"{k}: pass" if w is None else f"{k}: FAIL at {w}" for k, w in self.witnesses.items()]
        lines.append("cyclically ordered: yes" if self.is_co else
                     f"cyclically ordered: no (incomparable at {self.linear_witness})")
        return "\n".join(lines)


def _group_witness(C: FinitePco):
    ad, ng, z = C.add_table, C.neg_table, C.zero
    n = C.size
    idx = np.arange(n)
    hits = np.argwhere(ad[idx[:, None, None], ad[None, :, :]] != ad[ad[:, :, None], idx[None, None, :]])
    if len(hits):
        return ("associative",) + tuple(int(i) for i in hits[0])
    hits = np.argwhere(ad != ad.T)
    if len(hits):
        return ("commutative",) + tuple(int(i) for i in hits[0])
    hits = np.flatnonzero(ad[:, z] != idx)
    if len(hits):
        return ("identity", int(hits[0]))
    hits = np.flatnonzero(ad[idx, ng] != z)
    if len(hits):
        return ("inverse", int(hits[0]))
    return None


def _generators(C: FinitePco) -> list[int]:
    # greedy generating set; closure grows by at least a factor 2 per pick
    ad = C.add_table
    inside = np.zeros(C.size, dtype=bool)
    inside[C.zero] = True
    gens = []
    for g in range(C.size):
        if inside[g]:
            continue
        gens.append(g)
        while True:
            grown = inside.copy()
            grown[ad[np.flatnonzero(inside), g]] = True
            if (grown == inside).all():
                break
            inside = grown
    return gens


def check_pco_axioms(C: FinitePco) -> PcoReport:
    group = _group_witness(C)
    # translations fixing R form a subgroup, so generators suffice on a group
    shifts = _generators(C) if group is None else None
    strict, cyclic, antisym, trans, compat, linear = kernels.pco_axiom_scan(
        C.add_table, C.rel_table, shifts)
    if compat is not None and shifts is not None:
        compat = kernels.pco_axiom_scan(C.add_table, C.rel_table)[4]
    order = None
    if antisym is not None:
        order = ("antisymmetry",) + antisym
    elif trans is not None:
        order = ("transitivity",) + trans
    w = {
        "group": group,
        "strict": strict,
        "cyclic": cyclic,
        "order_per_base": order,
        "compatible": compat,
    }
    return PcoReport(w, linear)


def is_co(C) -> bool:
    return isinstance(C, FinitePco) and C.axiom_report.is_co


def _require_co(C) -> None:
    if not is_co(C):
        raise StructureError("operation needs a finite cyclically ordered group")


# -- constructions --------------------------------------------------------

def _cyclic_tables(n: int):
    idx = np.arange(n)
    return (idx[:, None] + idx[None, :]) % n, (-idx) % n


def make_cyclic_group(n: int) -> FinitePco:
    """Z/nZ with the cyclic order read off the lifts 0..n-1."""
    if n < 1:
        raise StructureError(f"cyclic group order must be positive, got {n}")
    add, neg = _cyclic_tables(n)
    i = np.arange(n)
    x, y, z = i[:, None, None], i[None, :, None], i[None, None, :]
    rel = ((x < y) & (y < z)) | ((y < z) & (z < x)) | ((z < x) & (x < y))
    return build_pco(add, neg, 0, rel=rel)


def make_product_pco(C1: FinitePco, C2: FinitePco) -> FinitePco:
    """C1 x C2 with R holding iff it holds in both components."""
    n1, n2 = C1.size, C2.size
    i1 = np.repeat(np.arange(n1), n2)
    i2 = np.tile(np.arange(n2), n1)
    add = C1.add_table[i1[:, None], i1[None, :]] * n2 + C2.add_table[i2[:, None], i2[None, :]]
    neg = C1.neg_table[i1] * n2 + C2.neg_table[i2]
    r1 = C1.rel_table[np.ix_(i1, i1, i1)]
    r2 = C2.rel_table[np.ix_(i2, i2, i2)]
    labels = tuple((C1.label(a), C2.label(b)) for a, b in zip(i1.tolist(), i2.tolist()))
    # a one-element factor carries no relation and imposes none
    rel = r2 if n1 == 1 else r1 if n2 == 1 else r1 & r2
    return build_pco(add, neg, C1.zero * n2 + C2.zero, rel=rel, labels=labels)


def r_from_order(add, neg, zero: int, pairs: Iterable[tuple[int, int]],
                 labels: Sequence | None = None) -> FinitePco:
    """Build R(x,y,z) <=> 0 != y-x < z-x from a strict order on C minus 0.

    The order is closed transitively first; it must be irreflexive, avoid 0,
    and satisfy x < y => y-x < -x.
    """
    ad = np.asarray(add, dtype=np.int64)
    ng = np.asarray(neg, dtype=np.int64)
    n = len(ng)
    lt = np.zeros((n, n), dtype=bool)
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise StructureError(f"pair {(x, y)} outside the group")
        if zero in (x, y):
            raise StructureError(f"pair {(x, y)} involves 0; the order lives on C minus 0")
        lt[x, y] = True
    for k in range(n):  # Warshall closure
        lt |= lt[:, k:k + 1] & lt[k:k + 1, :]
    if lt.diagonal().any():
        x = int(np.flatnonzero(lt.diagonal())[0])
        raise StructureError(f"order is not strict: {x} < {x} after closure")
    for x, y in np.argwhere(lt):
        if not lt[ad[y, ng[x]], ng[x]]:
            raise StructureError(
                f"hypothesis fails at {int(x)} < {int(y)}: "
                f"{int(ad[y, ng[x]])} is not below {int(ng[x])}"
            )
    rel = np.zeros((n, n, n), dtype=bool)
    for x in range(n):
        diff = ad[:, ng[x]]  # diff[y] = y - x
        rel[x] = lt[diff[:, None], diff[None, :]]
    return build_pco(ad, ng, zero, rel=rel, labels=labels)


def order_from(C: FinitePco) -> set[tuple[int, int]]:
    """The strict order <_0 restricted to C minus 0, as pairs."""
    return {(int(x), int(y)) for x, y in np.argwhere(C.rel_table[C.zero])}


def r_tuple(C, xs: Sequence) -> bool:
    """R(x1, ..., xn): R(x1, x_i, x_{i+1}) for every 2 <= i < n."""
    if len(xs) < 3:
        raise StructureError("the tuple relation needs at least three elements")
    first = xs[0]
    return all(C.rel(first, a, b) for a, b in zip(xs[1:], xs[2:]))


# -- lattice quotients ----------------------------------------------------

@dataclass(frozen=True)
class LatticeQuotientPco:
    """Z^k / Z u, partially cyclically ordered by lifted strict inequalities."""

    u: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.u)

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.k

    @property
    def is_finite(self) -> bool:
        return self.k == 1

    def normalize(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.k:
            raise StructureError(f"vector {tuple(v)} has dimension {len(v)}, expected {self.k}")
        m = min(a // c for a, c in zip(v, self.u))
        return tuple(int(a - m * c) for a, c in zip(v, self.u))

    def add(self, x, y):
        return self.normalize([a + b for a, b in zip(x, y)])

    def neg(self, x):
        return self.normalize([-a for a in x])

    def sub(self, x, y):
        return self.normalize([a - b for a, b in zip(x, y)])

    def rel(self, x, y, z) -> bool:
        return lq_relation(self, x, y, z)

    def lt0(self, x, y) -> bool:
        return lq_relation(self, self.zero, x, y)

    def box_interior(self) -> list[tuple[int, ...]]:
        pts = itertools.product(*(range(c + 1) for c in self.u))
        return [p for p in pts if p != self.zero and p != self.u]

    @cached_property
    def _non_isolated(self) -> tuple:
        inner = self.box_interior()
        keep = [
            p for p in inner
            if any(q != p and (_vle(p, q) or _vle(q, p)) for q in inner)
        ]
        return (self.zero,) + tuple(keep)

    def non_isolated(self) -> list:
        return list(self._non_isolated)

    def elements(self) -> list:
        if not self.is_finite:
            raise StructureError(f"Z^{self.k}/Z{self.u} is infinite")
        return [(i,) for i in range(self.u[0])]

    def as_finite(self) -> FinitePco:
        """Tables for the finite case k = 1 (relation evaluated by lifting)."""
        els = self.elements()
        pos = {e: i for i, e in enumerate(els)}
        n = len(els)
        add = [[pos[self.add(a, b)] for b in els] for a in els]
        neg = [pos[self.neg(a)] for a in els]
        rel = np.zeros((n, n, n), dtype=bool)
        for i, j, l in itertools.product(range(n), repeat=3):
            rel[i, j, l] = lq_relation(self, els[i], els[j], els[l])
        return build_pco(add, neg, pos[self.zero], rel=rel)


def _vle(a, b) -> bool:
    return all(p <= q for p, q in zip(a, b))


def _vlt(a, b) -> bool:
    return a != b and _vle(a, b)


def wound_round(u: Sequence[int]) -> LatticeQuotientPco:
    u = tuple(int(c) for c in u)
    if not u or any(c < 1 for c in u):
        raise StructureError(f"unit vector needs k >= 1 positive components, got {u}")
    return LatticeQuotientPco(u)


def lq_normalize(C: LatticeQuotientPco, v: Sequence[int]) -> tuple[int, ...]:
    return C.normalize(v)


def _shift_range(lo_vec, hi_vec, y, u):
    # integers n with lo_vec <= y + n u <= hi_vec componentwise
    lo = max(-((yi - a) // c) for a, yi, c in zip(lo_vec, y, u))
    hi = min((b - yi) // c for b, yi, c in zip(hi_vec, y, u))
    return range(lo, hi + 1)


def lq_relation(C: LatticeQuotientPco, x, y, z) -> bool:
    """Whether some n2, n3 give x < y + n2 u < z + n3 u < x + u (strict, product order)."""
    u = C.u
    top = tuple(a + c for a, c in zip(x, u))
    for n2 in _shift_range(x, top, y, u):
        y2 = tuple(a + n2 * c for a, c in zip(y, u))
        if not (_vlt(x, y2) and _vlt(y2, top)):
            continue
        for n3 in _shift_range(y2, top, z, u):
            z3 = tuple(a + n3 * c for a, c in zip(z, u))
            if _vlt(y2, z3) and _vlt(z3, top):
                return True
    return False


# -- non-isolated elements and the AC class ------------------------------

def non_isolated(C) -> list:
    return C.non_isolated()


def _carrier(C, fallback: bool = True) -> list:
    """A(C), or the box [0, u[ (the whole group when finite c.o.) if A(C) = {0}.

    In the nondegenerate case A(C) is order-isomorphic to [0, u[; the
    fallback keeps that shape when no two interior points compare.
    """
    elems = C.non_isolated()
    if len(elems) > 1 or not fallback:
        return elems
    if isinstance(C, LatticeQuotientPco):
        return [C.zero] + C.box_interior()
    if is_co(C):
        return [C.zero] + [x for x in C.elements() if x != C.zero]
    return elems


class _AView:
    """Finite tables over A(C) for the order <=_0 and its lattice operations."""

    def __init__(self, C, fallback: bool = True):
        self.C = C
        self.elems = _carrier(C, fallback)
        self.pos = {e: i for i, e in enumerate(self.elems)}
        self.zero = C.zero
        n = len(self.elems)
        lt = np.zeros((n, n), dtype=bool)
        for i, a in enumerate(self.elems):
            for j, b in enumerate(self.elems):
                if i != j and (a == C.zero or C.lt0(a, b)):
                    lt[i, j] = True
        self.lt = lt
        le = lt | np.eye(n, dtype=bool)
        self.le = le
        self.meet = self._bound(le, lower=True)
        self.join = self._bound(le, lower=False)

    @staticmethod
    def _bound(le, lower):
        n = len(le)
        out = np.full((n, n), -1, dtype=np.int64)
        below = le if lower else le.T  # below[w, x]: w is on the near side of x
        for i in range(n):
            for j in range(i, n):
                common = np.flatnonzero(below[:, i] & below[:, j])
                if len(common) == 0:
                    continue
                # the bound is the common element every other one sits below
                for c in common:
                    if below[common, c].all():
                        out[i, j] = out[j, i] = c
                        break
        return out

    def member(self, v) -> bool:
        return v in self.pos

    def meet0(self, x, y):
        """Infimum in (C, <=_0); None when it does not exist."""
        if x is TOP:
            return y
        if y is TOP or x == y:
            return x
        if x not in self.pos or y not in self.pos:
            return self.zero
        m = self.meet[self.pos[x], self.pos[y]]
        return None if m < 0 else self.elems[m]

    def join1(self, x, y):
        """Supremum in A(C) with TOP adjoined; None when it does not exist."""
        if x is TOP or y is TOP:
            return TOP
        i, j = self.pos[x], self.pos[y]
        m = self.join[i, j]
        if m >= 0:
            return self.elems[m]
        has_upper = (self.le[i] & self.le[j]).any()
        return None if has_upper else TOP

    def plus(self, x, y):
        if x is TOP:
            return y
        if y is TOP:
            return x
        return self.C.add(x, y)


def _aview(C, fallback: bool = True) -> _AView:
    # cache on the instance; both carrier classes are frozen dataclasses
    cache = C.__dict__.get("_aview_cache")
    if cache is None:
        cache = {}
        object.__setattr__(C, "_aview_cache", cache)
    if fallback not in cache:
        cache[fallback] = _AView(C, fallback)
    return cache[fallback]


def is_lco(C) -> bool:
    """Meets exist on A(C) and negation reverses <_0 there."""
    V = _aview(C)
    if (V.meet < 0).any():
        return False
    nz = [e for e in V.elems if e != V.zero]
    return all(
        V.C.lt0(x, y) == V.C.lt0(V.C.neg(y), V.C.neg(x)) for x in nz for y in nz
    )


@dataclass(frozen=True)
class AcReport:
    witnesses: dict

    @property
    def passed(self) -> bool:
        return all(w is None for w in self.witnesses.values())

    def failed(self) -> list[str]:
        return [k for k, w in self.witnesses.items() if w is not None]

    def first_witness(self):
        for k, w in self.witnesses.items():
            if w is not None:
                return k, w
        return None

    def __str__(self):
        return "\n".join(
            f"condition {k}: pass" if w is None else f"condition {k}: FAIL at {w}"
            for k, w in self.witnesses.items()
        )


def _ac_condition1(V: _AView):
    C = V.C
    nz = [e for e in V.elems if e != V.zero]
    for x in nz:
        for y in nz:
            if C.lt0(x, y) != C.lt0(C.neg(y), C.neg(x)):
                return (x, y)
    return None


def _ac_condition2(V: _AView):
    carrier = V.elems + [TOP]
    for x, y in itertools.product(carrier, repeat=2):
        if V.meet0(x, y) is None:
            return ("no meet", x, y)
        if V.join1(x, y) is None:
            return ("no join", x, y)
    for x, y, z in itertools.product(carrier, repeat=3):
        left = V.meet0(x, V.join1(y, z))
        right = V.join1(V.meet0(x, y), V.meet0(x, z))
        if left != right:
            return ("not distributive", x, y, z)
    return None


def _ac_condition3(V: _AView):
    for x, y in itertools.product(V.elems, repeat=2):
        m, j = V.meet0(x, y), V.join1(x, y)
        if m is None or j is None or V.C.add(x, y) != V.plus(m, j):
            return (x, y)
    return None


def _ac_condition4(V: _AView, literal: bool = False):
    C = V.C

    def shifted(a, z):
        # a ^ -z + z; a collapse to 0 is the TOP of the adjoined lattice
        m = V.meet0(a, C.neg(z))
        if m is None:
            return None
        s = C.add(m, z)
        return TOP if (s == V.zero and not literal) else s

    nz = [e for e in V.elems if e != V.zero]
    for x, y, z in itertools.product(nz, repeat=3):
        a, b = shifted(x, z), shifted(y, z)
        left = None if a is None else V.meet0(a, C.neg(y))
        right = None if b is None else V.meet0(b, C.neg(x))
        if left is None or right is None or C.sub(x, y) != C.sub(left, right):
            return (x, y, z)
    return None


def check_ac_class(C, literal: bool = False, fallback: bool = True) -> AcReport:
    """Check the four conditions under which A(C) carries a canonical MV-algebra.

    In condition 4 an inner sum ``x ^ -z + z`` equal to 0 (that is, -z <= x)
    is read as TOP, matching the sum rule of the canonical MV-algebra;
    ``literal=True`` keeps the plain group value instead. ``fallback`` is
    passed on to :func:`canonical_mv`.
    """
    V = _aview(C, fallback)
    return AcReport({
        "1": _ac_condition1(V),
        "2": _ac_condition2(V),
        "3": _ac_condition3(V),
        "4": _ac_condition4(V, literal),
    })


def sum_rule_witness(C):
    """First x, y in A(C) breaking  x+y in A(C) <=> (x <=_0 -y or -y <=_0 x)."""
    V = _aview(C)
    for x, y in itertools.product(V.elems, repeat=2):
        ny = C.neg(y)
        lhs = V.member(C.add(x, y))
        rhs = x == ny or x == V.zero or ny == V.zero or C.lt0(x, ny) or C.lt0(ny, x)
        if lhs != rhs:
            return (x, y)
    return None


def _top_label(C):
    if isinstance(C, LatticeQuotientPco):
        return C.u
    if C.labels is None:
        return C.size
    return "top"


def _elem_label(C, e):
    return C.label(e) if isinstance(C, FinitePco) else e


def canonical_mv(C, check: bool = True, fallback: bool = True) -> MvAlgebra:
    """The MV-algebra on A(C) + {TOP} with x (+) y = (x ^ -y) + y or TOP.

    When A(C) = {0} and ``fallback`` is set, the box [0, u[ (or the whole
    finite c.o. group) stands in for A(C); with ``fallback=False`` that case
    gives the two-element algebra.
    """
    if check:
        rep = check_ac_class(C, fallback=fallback)
        if not rep.passed:
            raise NotInACClass(f"not in the AC class: {rep.first_witness()}")
    V = _aview(C, fallback)
    carrier = V.elems + [TOP]
    pos = {e: i for i, e in enumerate(V.elems)}
    top = len(V.elems)

    def index(v):
        if v is TOP:
            return top
        if v not in pos:
            raise NotInACClass(f"sum {v} leaves A(C)")
        return pos[v]

    def mv_neg(x):
        if x is TOP:
            return V.zero
        if x == V.zero:
            return TOP
        return C.neg(x)

    n = len(carrier)
    oplus = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(carrier):
        for j, y in enumerate(carrier):
            m = V.meet0(x, mv_neg(y))
            if m is None:
                raise NotInACClass(f"no meet for {x} and {mv_neg(y)}")
            s = V.plus(m, y)
            both_zero = x == V.zero and y == V.zero
            oplus[i, j] = index(s) if (s != V.zero or both_zero) else top
    neg = [index(mv_neg(x)) for x in carrier]
    labels = [_elem_label(C, e) for e in V.elems] + [_top_label(C)]
    return build_mv(oplus, neg, pos[V.zero], labels)


def generated_subgroup(C: FinitePco) -> list[int]:
    seen = set(C.non_isolated())
    frontier = list(seen)
    gens = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                for b in (C.add(a, g), C.sub(a, g)):
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
        frontier = nxt
    return sorted(seen)


# -- good-sequence formula families --------------------------------------

def _good_tuples(V: _AView, n: int):
    C = V.C
    out = []
    for ys in itertools.product(V.elems, repeat=n):
        ok = True
        for a, b in zip(ys, ys[1:]):
            if (a == V.zero and b != V.zero) or V.meet0(b, C.neg(a)) != V.zero:
                ok = False
                break
        if ok:
            out.append(ys)
    return out


def _tuple_sum(C, xs):
    acc = C.zero
    for x in xs:
        acc = C.add(acc, x)
    return acc


def good_seq_formulas(C, n: int, cap: int = 500_000) -> bool:
    """Evaluate both good-sequence formula families at length n over A(C).

    Family one: every sum of n elements of A(C) has exactly one good
    representation of length n. Family two: when good x, y, z of length n
    satisfy sum x + sum y = sum z, then z is the good-sequence sum of x and y
    in the canonical MV-algebra with its leading top terms removed.
    """
    if n < 1:
        raise StructureError("formula length must be at least 1")
    rep = check_ac_class(C)
    if not rep.passed:
        raise NotInACClass(f"not in the AC class: {rep.first_witness()}")
    V = _aview(C)
    if len(V.elems) ** n > cap:
        raise ResourceBound(f"|A(C)|^{n} = {len(V.elems) ** n} exceeds cap {cap}")
    good = _good_tuples(V, n)
    by_sum: dict = {}
    for ys in good:
        by_sum.setdefault(_tuple_sum(C, ys), []).append(ys)
    for xs in itertools.product(V.elems, repeat=n):
        if len(by_sum.get(_tuple_sum(C, xs), ())) != 1:
            return False

    from .good_seq import GoodSequence, good_add

    M = canonical_mv(C, check=False)
    pos = {e: i for i, e in enumerate(V.elems)}

    def as_seq(ts):
        terms = [pos[t] for t in ts]
        while terms and terms[-1] == M.zero:
            terms.pop()
        return GoodSequence(M, tuple(terms))

    seqs = {ys: as_seq(ys) for ys in good}
    for xs in good:
        for ys in good:
            w = good_add(seqs[xs], seqs[ys]).terms
            i = 0
            while i < len(w) and w[i] == M.one:
                i += 1
            w = w[i:]
            target = _tuple_sum(C, xs + ys)
            for zs in by_sum.get(target, ()):
                if seqs[zs].terms != w:
                    return False
    return True


# -- homomorphisms and the unwound ---------------------------------------

def c_hom_check(f: Sequence[int] | Callable, C: FinitePco, C2: FinitePco) -> bool:
    """Group homomorphism that keeps R whenever the images stay distinct."""
    fm = [f(x) for x in C.elements()] if callable(f) else list(f)
    if len(fm) != C.size:
        raise StructureError("map must be total on the source")
    for x, y in itertools.product(C.elements(), repeat=2):
        if fm[C.add(x, y)] != C2.add(fm[x], fm[y]):
            return False
    for x, y, z in C.triples():
        a, b, c = fm[x], fm[y], fm[z]
        if a != b and b != c and c != a and not C2.rel(a, b, c):
            return False
    return True


@dataclass(frozen=True, order=True)
class UnwoundElement:
    n: int
    c: int


def co_order(C: FinitePco) -> list[int]:
    """Elements of a c.o. group listed along <=_0, starting at 0."""
    _require_co(C)
    r0 = C.rel_table[C.zero]
    below = r0.sum(axis=0)  # below[y] = #{x : x <_0 y}
    rest = sorted((x for x in C.elements() if x != C.zero), key=lambda x: below[x])
    return [C.zero] + rest


def _le0(C: FinitePco, x: int, y: int) -> bool:
    return x == y or x == C.zero or C.lt0(x, y)


def unwound_op(C: FinitePco, op: str, a: UnwoundElement | None = None,
               b: UnwoundElement | None = None):
    """Arithmetic in the unwound Z x C of a finite c.o. group."""
    _require_co(C)
    if op == "unit":
        return UnwoundElement(1, C.zero)
    if op == "add":
        x, y = a.c, b.c
        s = C.add(x, y)
        lo = x if _le0(C, x, y) else y
        if (x == C.zero and y == C.zero) or (lo != s and _le0(C, lo, s)):
            return UnwoundElement(a.n + b.n, s)
        return UnwoundElement(a.n + b.n + 1, s)
    if op == "neg":
        if a.c == C.zero:
            return UnwoundElement(-a.n, C.zero)
        return UnwoundElement(-a.n - 1, C.neg(a.c))
    if op == "leq":
        if a.n != b.n:
            return a.n < b.n
        return _le0(C, a.c, b.c)
    raise StructureError(f"unknown unwound operation {op!r}")


def unwound_lt(C: FinitePco, a: UnwoundElement, b: UnwoundElement) -> bool:
    return a != b and unwound_op(C, "leq", a, b)


def quotient_relation(C: FinitePco, x: int, y: int, z: int) -> bool:
    """R on C recomputed by lifting to the unwound and searching the shifts."""
    _require_co(C)
    g1, g2, g3 = UnwoundElement(0, x), UnwoundElement(0, y), UnwoundElement(0, z)
    top = unwound_op(C, "add", g1, unwound_op(C, "unit"))
    for n2 in (-1, 0, 1):
        h2 = UnwoundElement(g2.n + n2, g2.c)
        if not (unwound_lt(C, g1, h2) and unwound_lt(C, h2, top)):
            continue
        for n3 in (-1, 0, 1):
            h3 = UnwoundElement(g3.n + n3, g3.c)
            if unwound_lt(C, h2, h3) and unwound_lt(C, h3, top):
                return True
    return False


def element_orders(C: FinitePco) -> list[int]:
    """Order of every element, indexed by element."""
    out = []
    for x in C.elements():
        k, acc = 1, x
        while acc != C.zero:
            acc = C.add(acc, x)
            k += 1
        out.append(k)
    return out


def lcm_exponent(C: FinitePco) -> int:
    return math.lcm(*element_orders(C))
