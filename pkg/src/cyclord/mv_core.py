"""Finite MV-algebras stored as explicit operation tables.

Elements are the indices ``0..size-1``. Everything else (order, lattice
operations, polars, decompositions) is derived from the ``oplus``/``neg``
tables and the zero index.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class StructureError(ValueError):
    """Malformed tables or an operation applied outside its domain."""


AXIOMS = ("MV1", "MV2", "MV3", "MV4", "MV5", "MV6")


@dataclass(frozen=True, eq=False)
class MvAlgebra:
    oplus: np.ndarray
    neg: np.ndarray
    zero: int
    labels: tuple | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.neg)

    @property
    def one(self) -> int:
        return int(self.neg[self.zero])

    def label(self, x: int):
        return self.labels[x] if self.labels is not None else x

    def index(self, label) -> int:
        if self.labels is None:
            return int(label)
        return self.labels.index(label)

    @cached_property
    def odot(self) -> np.ndarray:
        ng = self.neg
        return ng[self.oplus[ng[:, None], ng[None, :]]]

    @cached_property
    def leq(self) -> np.ndarray:
        # x <= y iff some z has x + z = y
        n = self.size
        out = np.zeros((n, n), dtype=bool)
        rows = np.repeat(np.arange(n), n)
        out[rows, self.oplus.reshape(-1)] = True
        return out

    @cached_property
    def meet(self) -> np.ndarray:
        ng, op = self.neg, self.oplus
        t = op[:, ng]  # x + neg y
        return ng[op[ng[t], ng[None, :]]]

    @cached_property
    def join(self) -> np.ndarray:
        ng, op = self.neg, self.oplus
        idx = np.arange(self.size)
        return op[ng[op[ng[:, None], idx[None, :]]], idx[None, :]]

    @cached_property
    def tables(self):
        """Plain nested lists, for scalar-heavy Python loops."""
        return self.oplus.tolist(), self.odot.tolist(), self.neg.tolist()

    def __eq__(self, other):
        if not isinstance(other, MvAlgebra):
            return NotImplemented
        return (
            self.zero == other.zero
            and np.array_equal(self.oplus, other.oplus)
            and np.array_equal(self.neg, other.neg)
        )

    __hash__ = object.__hash__

    def __repr__(self):
        return f"MvAlgebra(size={self.size}, zero={self.zero})"

    def multiple(self, n: int, x: int) -> int:
        """``n.x = x + ... + x`` (n times); ``0.x = 0``."""
        acc = self.zero
        for _ in range(n):
            acc = int(self.oplus[acc, x])
        return acc

    def power(self, n: int, x: int) -> int:
        acc = self.one
        for _ in range(n):
            acc = int(self.odot[acc, x])
        return acc

    def elements_below(self, u: int) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.leq[:, u])]


def build_mv(oplus, neg, zero: int, labels: Sequence | None = None) -> MvAlgebra:
    """Wrap tables as an :class:`MvAlgebra` without checking the axioms."""
    try:
        op = np.array(oplus, dtype=np.int64)
        ng = np.array(neg, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise StructureError(f"tables must be rectangular integer arrays: {exc}") from None
    n = len(ng)
    if ng.ndim != 1 or n == 0:
        raise StructureError("neg must be a non-empty 1-d table")
    if op.shape != (n, n):
        raise StructureError(f"oplus must be {n}x{n}, got shape {op.shape}")
    for name, t in (("oplus", op), ("neg", ng)):
        bad = np.argwhere((t < 0) | (t >= n))
        if len(bad):
            pos = tuple(int(i) for i in bad[0])
            raise StructureError(f"{name}{list(pos)} = {int(t[pos])} is outside 0..{n - 1}")
    if not 0 <= zero < n:
        raise StructureError(f"zero index {zero} outside 0..{n - 1}")
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != n:
            raise StructureError("labels length does not match table size")
    op.setflags(write=False)
    ng.setflags(write=False)
    return MvAlgebra(op, ng, int(zero), labels)


@dataclass(frozen=True)
class AxiomReport:
    witnesses: dict

    @property
    def passed(self) -> bool:
        return all(w is None for w in self.witnesses.values())

    def failed(self) -> list[str]:
        return [k for k, w in self.witnesses.items() if w is not None]

    def __str__(self):
        lines = []
        for name, w in self.witnesses.items():
            lines.append(f"{name}: pass" if w is None else f"{name}: FAIL at {w}")
        return "\n".join(lines)


def check_mv_axioms(A: MvAlgebra) -> AxiomReport:
    found = kernels.mv_axiom_scan(A.oplus, A.neg, A.zero)
    return AxiomReport(dict(zip(AXIOMS, found)))


def _check_index(A: MvAlgebra, *xs: int) -> None:
    for x in xs:
        if not 0 <= x < A.size:
            raise StructureError(f"element {x} outside 0..{A.size - 1}")


def derived_op(A: MvAlgebra, op: str, x: int, y: int):
    """Evaluate odot/meet/join/leq straight from the defining oplus/neg terms."""
    _check_index(A, x, y)
    o, ng = A.oplus, A.neg
    if op == "odot":
        return int(ng[o[ng[x], ng[y]]])
    if op == "meet":
        return int(ng[o[ng[o[x, ng[y]]], ng[y]]])
    if op == "join":
        return int(o[ng[o[ng[x], y]], y])
    if op == "leq":
        return bool(any(o[x, z] == y for z in range(A.size)))
    raise StructureError(f"unknown derived operation {op!r}")


def make_gamma(u: Sequence[int]) -> MvAlgebra:
    """Gamma(Z^k, u): the integer box [0, u] with truncated addition."""
    u = tuple(int(c) for c in u)
    if not u or any(c < 1 for c in u):
        raise StructureError(f"unit vector needs k >= 1 positive components, got {u}")
    points = list(itertools.product(*(range(c + 1) for c in u)))
    index = {p: i for i, p in enumerate(points)}
    n = len(points)
    oplus = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(points):
        for j, q in enumerate(points):
            oplus[i, j] = index[tuple(min(a + b, c) for a, b, c in zip(p, q, u))]
    neg = np.array([index[tuple(c - a for a, c in zip(p, u))] for p in points])
    labels = tuple(p[0] for p in points) if len(u) == 1 else tuple(points)
    return build_mv(oplus, neg, index[(0,) * len(u)], labels)


def lukasiewicz(n: int) -> MvAlgebra:
    """The (n+1)-element chain {0, 1, ..., n} with truncated addition."""
    return make_gamma((n,))


def product(A: MvAlgebra, B: MvAlgebra) -> MvAlgebra:
    na, nb = A.size, B.size
    ia = np.repeat(np.arange(na), nb)
    ib = np.tile(np.arange(nb), na)
    oplus = A.oplus[ia[:, None], ia[None, :]] * nb + B.oplus[ib[:, None], ib[None, :]]
    neg = A.neg[ia] * nb + B.neg[ib]
    labels = tuple((A.label(a), B.label(b)) for a, b in zip(ia.tolist(), ib.tolist()))
    return build_mv(oplus, neg, A.zero * nb + B.zero, labels)


class Shape(enum.Enum):
    TWO = "two-elt"
    THREE = "three-elt"
    FOUR_X_NEGX = "four-elt-x-negx"
    DENSE_COMPARABLE = "dense-comparable"


def _shape_condition(A: MvAlgebra, shape: Shape) -> bool:
    zero, one = A.zero, A.one
    inner = [x for x in range(A.size) if x not in (zero, one)]
    if shape is Shape.TWO:
        return A.size == 2
    if shape is Shape.THREE:
        return A.size == 3
    if shape is Shape.FOUR_X_NEGX:
        return A.size == 4 and any(set(inner) == {x, int(A.neg[x])} for x in inner)
    lt = A.leq & ~np.eye(A.size, dtype=bool)
    return all(any(lt[z, w] or lt[w, z] for w in inner) for z in inner)


def shape_classify(A: MvAlgebra) -> Shape:
    """First branch of the small-shape trichotomy that applies.

    The four branches overlap on the 4-element chain; branches are tried in
    order, so that chain is reported as ``FOUR_X_NEGX``.
    """
    for shape in Shape:
        if _shape_condition(A, shape):
            return shape
    raise StructureError("no shape branch applies; the MV axioms must fail")


@dataclass(frozen=True)
class ElementPredicates:
    is_atom: bool
    is_archimedean: bool
    is_torsion: bool | None
    is_group_torsion: bool | None


def is_chain(A: MvAlgebra) -> bool:
    return bool((A.leq | A.leq.T).all())


def _is_atom(A: MvAlgebra, x: int) -> bool:
    if x == A.zero:
        return False
    return all(y in (A.zero, x) for y in A.elements_below(x))


def _is_archimedean(A: MvAlgebra, x: int) -> bool:
    nx = int(A.neg[x])
    acc = A.zero
    for _ in range(A.size):
        acc = int(A.oplus[acc, x])
        if A.join[nx, acc] == A.one:
            return True
    return False


def _is_torsion(A: MvAlgebra, x: int) -> bool:
    mult, pw = A.zero, A.one
    for _ in range(A.size + 1):
        mult = int(A.oplus[mult, x])
        pw = int(A.odot[pw, x])
        if mult == A.one and pw == A.zero:
            return True
    return False


def element_predicates(A: MvAlgebra, x: int, torsion: bool = True) -> ElementPredicates:
    """Atom/archimedean/torsion flags for one element.

    ``is_torsion`` follows the chain formula (some n with n.x = 1 and x^n = 0),
    which never holds at 0. ``is_group_torsion`` is the reading in the
    associated cyclically ordered group, where 0 is torsion and 1 is not an
    element at all (reported as False).
    """
    _check_index(A, x)
    tor = gtor = None
    if torsion:
        if not is_chain(A):
            raise StructureError("torsion is only defined on MV-chains")
        tor = _is_torsion(A, x)
        gtor = x == A.zero or (tor and x != A.one)
    return ElementPredicates(_is_atom(A, x), _is_archimedean(A, x), tor, gtor)


@dataclass(frozen=True)
class AlgebraPredicates:
    is_chain: bool
    is_atomic: bool
    is_atomless: bool
    is_hyperarchimedean: bool
    is_projectable: bool


def atoms(A: MvAlgebra) -> list[int]:
    return [x for x in range(A.size) if _is_atom(A, x)]


def is_projectable(A: MvAlgebra) -> bool:
    """Every b splits uniquely as b1 + b2 with b1 in a^perp, b2 in a^perp-perp."""
    for a in range(A.size):
        p1 = polar(A, [a])
        p2 = polar(A, p1)
        counts = np.zeros(A.size, dtype=np.int64)
        for b1 in p1:
            for b2 in p2:
                counts[A.oplus[b1, b2]] += 1
        if not (counts == 1).all():
            return False
    return True


def algebra_predicates(A: MvAlgebra) -> AlgebraPredicates:
    ats = atoms(A)
    atomic = all(
        any(A.leq[a, x] for a in ats) for x in range(A.size) if x != A.zero
    )
    hyper = all(_is_archimedean(A, x) for x in range(A.size))
    return AlgebraPredicates(is_chain(A), atomic, not ats, hyper, is_projectable(A))


def polar(A: MvAlgebra, S: Iterable[int]) -> list[int]:
    """``S^perp``: elements whose meet with every member of S is 0."""
    S = list(S)
    _check_index(A, *S)
    if not S:
        return list(range(A.size))
    ok = (A.meet[:, S] == A.zero).all(axis=1)
    return [int(x) for x in np.flatnonzero(ok)]


def is_basic(A: MvAlgebra, x: int) -> bool:
    """The downset [0, x] is linearly ordered."""
    below = A.elements_below(x)
    sub = A.leq[np.ix_(below, below)]
    return bool((sub | sub.T).all())


@dataclass(frozen=True)
class Decomposition:
    units: tuple[int, ...]

    @property
    def width(self) -> int:
        return len(self.units)


def decompose_product(A: MvAlgebra, max_width: int = 4) -> Decomposition | None:
    """Split the unit into pairwise-orthogonal basic pieces summing to 1.

    Returns the widest decomposition with at most ``max_width`` pieces, or
    None when every valid decomposition is wider than the bound.
    """
    if A.size == 1:
        return Decomposition(())
    cands = [x for x in range(A.size) if x != A.zero and is_basic(A, x)]
    best: list[tuple[int, ...]] = []

    def extend(chosen: list[int], start: int, total: int) -> None:
        if total == A.one and (not best or len(chosen) > len(best[0])):
            best[:] = [tuple(chosen)]
        if len(chosen) == max_width:
            return
        for i in range(start, len(cands)):
            c = cands[i]
            if all(A.meet[c, d] == A.zero for d in chosen):
                chosen.append(c)
                extend(chosen, i + 1, int(A.oplus[total, c]))
                chosen.pop()

    extend([], 0, A.zero)
    return Decomposition(best[0]) if best else None


def verify_decomposition(A: MvAlgebra, units: Sequence[int]) -> bool:
    """Re-check the three defining conditions of a chain-product decomposition."""
    total = A.zero
    for u in units:
        if u == A.zero:
            return False
        total = int(A.oplus[total, u])
    if total != A.one:
        return False
    for i, j in itertools.combinations(units, 2):
        if A.meet[i, j] != A.zero:
            return False
    return all(is_basic(A, u) for u in units)


def interval_algebra(A: MvAlgebra, u: int) -> MvAlgebra:
    """The MV-algebra [0, u] for an idempotent u (u + u = u)."""
    if A.oplus[u, u] != u:
        raise StructureError(f"element {u} is not idempotent")
    below = A.elements_below(u)
    pos = {x: i for i, x in enumerate(below)}
    m = len(below)
    oplus = np.array([[pos[int(A.oplus[x, y])] for y in below] for x in below]).reshape(m, m)
    neg = [pos[int(A.meet[u, A.neg[x]])] for x in below]
    return build_mv(oplus, neg, pos[A.zero], [A.label(x) for x in below])
