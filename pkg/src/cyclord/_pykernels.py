"""Pure Python/numpy versions of the exhaustive-scan kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same witness-selection rule (lexicographically least violation).
"""
import numpy as np


def _first(mask):
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(i) for i in hits[0])


def mv_axiom_scan(oplus, neg, zero):
    oplus = np.asarray(oplus, dtype=np.int64)
    neg = np.asarray(neg, dtype=np.int64)
    n = len(neg)
    top = neg[zero]
    idx = np.arange(n)

    # MV1: x+(y+z) == (x+y)+z, scanned over (x, y, z)
    left = oplus[idx[:, None, None], oplus[None, :, :]]
    right = oplus[oplus[:, :, None], idx[None, None, :]]
    mv1 = _first(left != right)
    mv2 = _first(oplus != oplus.T)
    mv3 = _first(oplus[:, zero] != idx)
    mv4 = _first(neg[neg] != idx)
    mv5 = _first(oplus[:, top] != top)
    # MV6: neg(neg x + y) + y == neg(neg y + x) + x
    a = oplus[neg[oplus[neg[:, None], idx[None, :]]], idx[None, :]]
    mv6 = _first(a != a.T)
    return [mv1, mv2, mv3, mv4, mv5, mv6]


def pco_axiom_scan(add, rel, shifts=None):
    add = np.asarray(add, dtype=np.int64)
    r = np.asarray(rel, dtype=bool)
    n = r.shape[0]
    idx = np.arange(n)

    x, y, z = np.meshgrid(idx, idx, idx, indexing="ij")
    strict = _first(r & ((x == y) | (y == z) | (z == x)))
    cyclic = _first(r & ~r.transpose(2, 0, 1))  # r[y, z, x]
    antisym = _first(r & r.transpose(0, 2, 1))

    trans = None
    for b in range(n):
        m = r[b].astype(np.int64)
        reach = (m @ m) > 0
        bad = reach & ~r[b] & ~np.eye(n, dtype=bool)
        if not bad.any():
            continue
        yy = int(np.argmax(bad.any(axis=1)))
        for zz in np.flatnonzero(r[b, yy]):
            ws = r[b, zz] & ~r[b, yy]
            ws[yy] = False
            if ws.any():
                trans = (b, yy, int(zz), int(np.argmax(ws)))
                break
        break

    compat = None
    for v in (range(n) if shifts is None else shifts):
        v = int(v)
        shifted = r[add[:, v][:, None, None], add[:, v][None, :, None], add[:, v][None, None, :]]
        hit = _first(r & ~shifted)
        if hit is not None:
            cand = hit + (v,)
            if compat is None or cand < compat:
                compat = cand

    distinct = (x != y) & (y != z) & (z != x)
    linear = _first(distinct & ~r & ~r.transpose(0, 2, 1))
    return [strict, cyclic, antisym, trans, compat, linear]


def good_add(oplus, odot, xs, ys, zero, top):
    lx, ly = len(xs), len(ys)
    out = []
    for i in range(lx + ly):
        acc = xs[i] if i < lx else zero
        if acc != top:
            for j in range(max(0, i - lx), min(i, ly)):
                # term x_{i-j} (1-based) times y_j
                acc = oplus[acc][odot[xs[i - 1 - j]][ys[j]]]
                if acc == top:
                    break
        if acc != top and i < ly:
            acc = oplus[acc][ys[i]]
        out.append(int(acc))
    while out and out[-1] == zero:
        out.pop()
    return out
