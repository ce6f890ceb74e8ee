"""First-order invariants of finite cyclically ordered groups and MV-chains.

Every quantifier here ranges over a finite carrier, so each predicate is
decided exactly. Chain-side order formulas are read in the associated
cyclically ordered group ``C(A)``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .mv_core import (
    MvAlgebra,
    StructureError,
    algebra_predicates,
    decompose_product,
    interval_algebra,
    is_chain,
    shape_classify,
)
from .pco import FinitePco, co_order, is_co


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, m) with q = p**m, or None."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not _is_prime(p):
                return None
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            return (p, m) if q == 1 else None
    return None


def _as_co(S) -> FinitePco:
    if isinstance(S, MvAlgebra):
        from .correspondence import co_from_chain

        return co_from_chain(S)
    if not is_co(S):
        raise StructureError("expected a finite cyclically ordered group or MV-chain")
    return S


# -- cyclically ordered groups -------------------------------------------

@dataclass(frozen=True)
class CoPredicates:
    c_archimedean: bool
    discrete: bool
    epsilon: int | None
    c_regular: bool


def _ranks(C: FinitePco) -> np.ndarray:
    order = co_order(C)
    rank = np.empty(C.size, dtype=np.int64)
    rank[order] = np.arange(C.size)
    return rank


def _multiples(C: FinitePco, n: int) -> np.ndarray:
    """Row j holds j*x for every x, j = 0..n."""
    out = np.empty((n + 1, C.size), dtype=np.int64)
    out[0] = C.zero
    xs = np.arange(C.size)
    for j in range(1, n + 1):
        out[j] = C.add_table[out[j - 1], xs]
    return out


def _increasing_multiples(C: FinitePco, n: int, mult: np.ndarray) -> np.ndarray:
    """Mask of x with x <_0 2x <_0 ... <_0 nx."""
    ok = np.ones(C.size, dtype=bool)
    r0 = C.rel_table[C.zero]
    for j in range(1, n):
        ok &= r0[mult[j], mult[j + 1]]
    return ok


def _regular_from_ranks(size: int, targets_by_n) -> bool:
    # targets_by_n(n): sorted ranks of admissible n-th multiples. A tuple
    # x_1 < ... < x_n matters only through its end ranks a < b with
    # b - a >= n - 1, and widening the window only helps, so it suffices
    # that every window [a, a + n - 1] inside the nonzero ranks is hit.
    for n in range(2, size):
        t = targets_by_n(n)
        for a in range(1, size - n + 1):
            i = np.searchsorted(t, a)
            if i == len(t) or t[i] > a + n - 1:
                return False
    return True


def c_regular(C: FinitePco) -> bool:
    """Exact c-regularity: n ranges up to |C| - 1, beyond that no tuple exists."""
    rank = _ranks(C)
    mult = _multiples(C, max(C.size - 1, 1))

    def targets(n):
        ok = _increasing_multiples(C, n, mult)
        return np.unique(rank[mult[n][ok]])

    return _regular_from_ranks(C.size, targets)


def co_predicates(C: FinitePco) -> CoPredicates:
    if not is_co(C):
        raise StructureError("c.o. predicates need a cyclically ordered group")
    mult = _multiples(C, C.size)
    r0 = C.rel_table[C.zero]
    # escaped[x, y]: some n >= 1 has not R(0, n x, y)
    escaped = (~r0[mult[1:], :]).any(axis=0)
    nz = np.arange(C.size) != C.zero
    arch = bool(escaped[np.ix_(nz, nz)].all())
    order = co_order(C)
    eps = order[1] if C.size > 1 else None
    # a finite linear order is discretely ordered
    return CoPredicates(arch, True, eps, c_regular(C))


# -- D formulas -----------------------------------------------------------

@lru_cache(maxsize=64)
def _d_values(C: FinitePco, q: int) -> frozenset:
    mult = _multiples(C, q)
    ok = mult[1] != C.zero
    if q >= 3:
        ok &= _increasing_multiples(C, q - 1, mult)
    return frozenset(int(v) for v in mult[q][ok])


def d_formula(S, q: int, k: int) -> bool:
    """D_{q,k}: some x has 0 < x < 2x < ... < (q-1)x and q x = k eps.

    For q = 2 the increasing-chain part reads as x != 0. MV-chains are
    evaluated in their associated cyclically ordered group.
    """
    if prime_power(q) is None:
        raise StructureError(f"{q} is not a prime power")
    if not 0 <= k < q:
        raise StructureError(f"k = {k} outside 0..{q - 1}")
    C = _as_co(S)
    if C.size < 2:
        raise StructureError("D formulas need a discrete structure with a first positive element")
    eps = co_order(C)[1]
    return C.multiple(k, eps) in _d_values(C, q)


def d_law(n: int, q: int, k: int) -> bool:
    """Closed form of D_{q,k} on Z/nZ."""
    return (n + k) % q == 0 and n > (q - 1) * k


def d_spectrum(S, q_max: int = 9) -> dict:
    qs = [q for q in range(2, q_max + 1) if prime_power(q)]
    return {(q, k): d_formula(S, q, k) for q in qs for k in range(q)}


# -- group invariants -----------------------------------------------------

def _group_of(B):
    if isinstance(B, FinitePco):
        return B.add_table, B.zero
    add, zero = B
    return np.asarray(add), int(zero)


def zakon_invariant(B, p: int) -> int:
    """[p]B = |B / pB|, by counting cosets of pB.

    ``B`` is a FinitePco or a pair (addition table, zero index).
    """
    if not _is_prime(p):
        raise StructureError(f"{p} is not prime")
    add, zero = _group_of(B)
    n = len(add)
    xs = np.arange(n)
    pb = np.full(n, zero, dtype=np.int64)
    for _ in range(p):
        pb = add[pb, xs]
    sub = np.unique(pb)
    seen = np.zeros(n, dtype=bool)
    cosets = 0
    for x in range(n):
        if not seen[x]:
            cosets += 1
            seen[add[x, sub]] = True
    return cosets


def invariant_factors(B) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of a finite abelian group."""
    add, zero = _group_of(B)
    n = len(add)
    primes = [p for p in range(2, n + 1) if n % p == 0 and _is_prime(p)]
    factors: list[int] = []
    for p in primes:
        # logs[j] = log_p #{x : p^j x = 0}; factors of order >= p^j number logs[j] - logs[j-1]
        logs = [0]
        cur = np.arange(n)
        while True:
            nxt = np.full(n, zero, dtype=np.int64)
            for _ in range(p):
                nxt = add[nxt, cur]
            cur = nxt
            cnt, e = int((cur == zero).sum()), 0
            while cnt > 1:
                cnt //= p
                e += 1
            if e == logs[-1]:
                break
            logs.append(e)
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))] + [0]
        exps = []
        for j in range(len(at_least) - 1, 0, -1):
            exps += [j] * (at_least[j - 1] - at_least[j])
        # exps is largest first; pair the i-th largest powers across primes
        for i, e in enumerate(exps):
            if i == len(factors):
                factors.append(1)
            factors[i] *= p ** e
    return tuple(sorted(factors))


@dataclass(frozen=True)
class TorsionReport:
    elements: tuple
    invariant_factors: tuple[int, ...]
    zero_is_group_torsion: bool = True


def _chain_torsion(A: MvAlgebra) -> list[int]:
    out = []
    for x in range(A.size):
        mult, pw = A.zero, A.one
        for _ in range(A.size + 1):
            mult = int(A.oplus[mult, x])
            pw = int(A.odot[pw, x])
            if mult == A.one and pw == A.zero:
                out.append(x)
                break
    return out


def torsion_subgroup(S) -> TorsionReport:
    """Torsion part of a finite c.o. group, or the torsion elements of an MV-chain.

    For chains the set follows the chain formula (so 0 is excluded; the flag
    ``zero_is_group_torsion`` records the group-side convention) and the
    invariant factors are those of the associated group.
    """
    if isinstance(S, MvAlgebra):
        if not is_chain(S):
            raise StructureError("chain torsion needs an MV-chain")
        C = _as_co(S)
        return TorsionReport(tuple(_chain_torsion(S)), invariant_factors(C))
    return TorsionReport(tuple(S.elements()), invariant_factors(S))


# -- chains ---------------------------------------------------------------

def chain_regular(A: MvAlgebra) -> bool:
    """Regularity of a finite MV-chain, decided with its own n.x multiples."""
    if not is_chain(A):
        raise StructureError("regularity is defined on MV-chains")
    order = sorted(range(A.size), key=lambda x: int(A.leq[:, x].sum()))
    rank = np.empty(A.size, dtype=np.int64)
    rank[order] = np.arange(A.size)
    n_max = max(A.size - 1, 1)
    mult = np.empty((n_max + 1, A.size), dtype=np.int64)
    mult[0] = A.zero
    xs = np.arange(A.size)
    for j in range(1, n_max + 1):
        mult[j] = A.oplus[mult[j - 1], xs]

    def targets(n):
        ok = np.ones(A.size, dtype=bool)
        for j in range(0, n):
            ok &= rank[mult[j]] < rank[mult[j + 1]]
        return np.unique(rank[mult[n][ok]])

    return _regular_from_ranks(A.size, targets)


# -- invariant vectors and classification --------------------------------

@dataclass(frozen=True)
class InvariantVector:
    shape: str | None
    is_discrete: bool | None
    epsilon: object
    c_archimedean: bool | None
    c_regular: bool | None
    d_spectrum: dict = field(hash=False)
    zakon: dict = field(hash=False)
    torsion_factors: tuple | None = None

    def as_dict(self) -> dict:
        return {
            "shape": self.shape,
            "is_discrete": self.is_discrete,
            "epsilon": self.epsilon,
            "c_archimedean": self.c_archimedean,
            "c_regular": self.c_regular,
            "d_spectrum": {f"{q},{k}": v for (q, k), v in sorted(self.d_spectrum.items())},
            "zakon": {str(p): v for p, v in sorted(self.zakon.items())},
            "torsion_factors": list(self.torsion_factors) if self.torsion_factors is not None else None,
        }

    def comparable_key(self) -> tuple:
        # epsilon is an element name, not an invariant
        d = self.as_dict()
        d.pop("epsilon")
        return tuple(sorted((k, repr(v)) for k, v in d.items()))


def eq_invariants(S, q_max: int = 9, p_max: int = 13) -> InvariantVector:
    qs = [q for q in range(2, q_max + 1) if prime_power(q)]
    grid = [(q, k) for q in qs for k in range(q)]
    primes = [p for p in range(2, p_max + 1) if _is_prime(p)]
    shape = None
    C = None
    if isinstance(S, MvAlgebra):
        shape = shape_classify(S).value
        if is_chain(S):
            C = _as_co(S)
    elif is_co(S):
        C = S
        from .correspondence import chain_from_co

        shape = shape_classify(chain_from_co(S)).value
    if C is None:
        group = S if isinstance(S, FinitePco) else None
        zakon = {p: (zakon_invariant(group, p) if group is not None else None) for p in primes}
        factors = invariant_factors(group) if group is not None else None
        return InvariantVector(shape, None, None, None, None,
                               {g: None for g in grid}, zakon, factors)
    cp = co_predicates(C)
    if C.size > 1:
        spectrum = {(q, k): d_formula(C, q, k) for q, k in grid}
    else:
        spectrum = {g: None for g in grid}
    zakon = {p: zakon_invariant(C, p) for p in primes}
    return InvariantVector(shape, cp.discrete, cp.epsilon, cp.c_archimedean, cp.c_regular,
                           spectrum, zakon, invariant_factors(C))


@dataclass(frozen=True)
class FactorCriteria:
    size: int
    is_chain: bool
    atomic: bool
    regular: bool


@dataclass(frozen=True)
class PseudoReport:
    is_chain: bool
    atomic: bool
    regular: bool | None
    projectable: bool
    units: tuple
    factors: tuple

    @property
    def chain_criteria(self) -> bool:
        """Atomic and regular chain: the pseudofinite criterion for chains."""
        return self.is_chain and self.atomic and bool(self.regular)

    @property
    def product_criteria(self) -> bool:
        """Projectable, a finite product of chains, each factor atomic and regular."""
        return self.projectable and bool(self.factors) and all(
            f.is_chain and f.atomic and f.regular for f in self.factors
        )

    @property
    def satisfied(self) -> bool:
        return self.chain_criteria or self.product_criteria

    def __str__(self):
        lines = [
            f"chain: {self.is_chain}, atomic: {self.atomic}, regular: {self.regular}",
            f"projectable: {self.projectable}, units: {list(self.units)}",
        ]
        for i, f in enumerate(self.factors):
            lines.append(f"factor {i}: size {f.size}, chain {f.is_chain}, "
                         f"atomic {f.atomic}, regular {f.regular}")
        lines.append(f"chain criteria: {self.chain_criteria}")
        lines.append(f"product criteria: {self.product_criteria}")
        return "\n".join(lines)


def pseudo_classify(A: MvAlgebra, max_width: int = 4) -> PseudoReport:
    preds = algebra_predicates(A)
    regular = chain_regular(A) if preds.is_chain else None
    dec = decompose_product(A, max_width=max_width)
    if dec is None:
        raise StructureError(f"no chain decomposition of width <= {max_width}")
    factors = []
    for u in dec.units:
        F = interval_algebra(A, u)
        fp = algebra_predicates(F)
        factors.append(FactorCriteria(F.size, fp.is_chain, fp.is_atomic,
                                      chain_regular(F) if fp.is_chain else False))
    return PseudoReport(preds.is_chain, preds.is_atomic, regular, preds.is_projectable,
                        tuple(A.label(u) for u in dec.units), tuple(factors))


def element_order_profile(C: FinitePco) -> tuple:
    """Sorted multiset of element orders."""
    from .pco import element_orders

    return tuple(sorted(Counter(element_orders(C)).items()))
