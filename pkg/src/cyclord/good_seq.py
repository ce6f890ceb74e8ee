"""Good sequences over a finite MV-algebra and the Chang group built from them.

A :class:`GoodSequence` is an eventually-zero sequence ``x1, x2, ...`` with
``x_i + x_{i+1} = x_i``; trailing zeros are trimmed, so tuple equality is
sequence equality. A :class:`ChangElement` is a difference ``pos - neg`` of
two good sequences kept in the normal form where ``pos`` and ``neg`` meet in 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .mv_core import MvAlgebra, StructureError


class NotComparable(ArithmeticError):
    """good_subtract(q, p) was asked for a difference that is not positive."""


def _trim(A: MvAlgebra, terms: Iterable[int]) -> tuple[int, ...]:
    out = [int(t) for t in terms]
    while out and out[-1] == A.zero:
        out.pop()
    return tuple(out)


@dataclass(frozen=True, eq=False)
class GoodSequence:
    base: MvAlgebra
    terms: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, GoodSequence):
            return NotImplemented
        return self.base is other.base and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.base), self.terms))

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i] if i < len(self.terms) else self.base.zero

    def __add__(self, other):
        return good_add(self, other)

    def __repr__(self):
        return f"GoodSequence{tuple(self.base.label(t) for t in self.terms)}"


def is_good_sequence(A: MvAlgebra, terms: Sequence[int]) -> bool:
    op = A.oplus
    return all(op[a, b] == a for a, b in zip(terms, terms[1:]))


def good_sequence(A: MvAlgebra, terms: Sequence[int]) -> GoodSequence:
    terms = _trim(A, terms)
    if not is_good_sequence(A, terms):
        raise StructureError(f"{terms} is not a good sequence")
    return GoodSequence(A, terms)


def _same_base(p: GoodSequence, q: GoodSequence) -> MvAlgebra:
    if p.base is not q.base:
        raise StructureError("good sequences over different algebras")
    return p.base


def _raw_add(A: MvAlgebra, xs: Sequence[int], ys: Sequence[int]) -> tuple[int, ...]:
    if not xs:
        return tuple(ys)
    if not ys:
        return tuple(xs)
    if kernels.BACKEND == "cython":
        out = kernels.good_add(A.oplus, A.odot, xs, ys, A.zero, A.one)
    else:
        op, od, _ = A.tables
        out = kernels.good_add(op, od, xs, ys, A.zero, A.one)
    return tuple(out)


def good_add(p: GoodSequence, q: GoodSequence) -> GoodSequence:
    A = _same_base(p, q)
    return GoodSequence(A, _raw_add(A, p.terms, q.terms))


def good_decompose(A: MvAlgebra, parts: Iterable[int]) -> GoodSequence:
    """The good sequence whose sum equals the sum of ``parts``."""
    acc: tuple[int, ...] = ()
    for x in parts:
        acc = _raw_add(A, acc, _trim(A, [x]))
    return GoodSequence(A, acc)


def good_subtract(q: GoodSequence, p: GoodSequence) -> GoodSequence:
    """The z with p + z = q.

    Adds the reversed negations of p to q, which overshoots by one copy of
    the unit per term of p, then strips those leading unit terms.
    """
    A = _same_base(p, q)
    rev = _trim(A, [A.neg[x] for x in reversed(p.terms)])
    total = _raw_add(A, q.terms, rev)
    n = len(p.terms)
    head = total[:n] + (A.zero,) * (n - len(total[:n]))
    if any(t != A.one for t in head):
        raise NotComparable(f"{p} is not below {q}")
    return GoodSequence(A, total[n:])


def good_meet(p: GoodSequence, q: GoodSequence) -> GoodSequence:
    A = _same_base(p, q)
    m = max(len(p), len(q))
    return GoodSequence(A, _trim(A, (A.meet[p[i], q[i]] for i in range(m))))


def good_join(p: GoodSequence, q: GoodSequence) -> GoodSequence:
    A = _same_base(p, q)
    m = max(len(p), len(q))
    return GoodSequence(A, _trim(A, (A.join[p[i], q[i]] for i in range(m))))


def good_leq(p: GoodSequence, q: GoodSequence) -> bool:
    try:
        good_subtract(q, p)
    except NotComparable:
        return False
    return True


@dataclass(frozen=True)
class ChangElement:
    pos: GoodSequence
    neg: GoodSequence

    @property
    def base(self) -> MvAlgebra:
        return self.pos.base

    def __add__(self, other):
        return chang_op("add", self, other)

    def __neg__(self):
        return chang_op("neg", self)

    def __sub__(self, other):
        return chang_op("add", self, chang_op("neg", other))

    def __le__(self, other):
        return chang_op("leq", self, other)

    def __repr__(self):
        return f"ChangElement(+{self.pos.terms}, -{self.neg.terms})"


def chang_normalize(pos: GoodSequence, neg: GoodSequence) -> ChangElement:
    m = good_meet(pos, neg)
    return ChangElement(good_subtract(pos, m), good_subtract(neg, m))


def chang_element(A: MvAlgebra, pos: Sequence[int] = (), neg: Sequence[int] = ()) -> ChangElement:
    return chang_normalize(good_sequence(A, pos), good_sequence(A, neg))


def chang_zero(A: MvAlgebra) -> ChangElement:
    e = GoodSequence(A, ())
    return ChangElement(e, e)


def _shifted(a: ChangElement, b: ChangElement):
    # a + s and b + s for s = a.neg + b.neg are both positive
    return good_add(a.pos, b.neg), good_add(b.pos, a.neg), good_add(a.neg, b.neg)


def chang_op(op: str, a: ChangElement, b: ChangElement | None = None):
    if op == "neg":
        return ChangElement(a.neg, a.pos)
    if b is None:
        raise StructureError(f"{op} needs two operands")
    _same_base(a.pos, b.pos)
    if op == "add":
        return chang_normalize(good_add(a.pos, b.pos), good_add(a.neg, b.neg))
    if op == "leq":
        return good_leq(good_add(a.pos, b.neg), good_add(b.pos, a.neg))
    if op in ("meet", "join"):
        x, y, s = _shifted(a, b)
        m = good_meet(x, y) if op == "meet" else good_join(x, y)
        return chang_normalize(m, s)
    raise StructureError(f"unknown Chang-group operation {op!r}")
