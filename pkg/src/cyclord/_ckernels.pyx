# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exhaustive-scan kernels; twins of ``_pykernels``."""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def mv_axiom_scan(oplus, neg, Py_ssize_t zero):
    cdef const i64[:, ::1] op = np.ascontiguousarray(oplus, dtype=np.int64)
    cdef const i64[::1] ng = np.ascontiguousarray(neg, dtype=np.int64)
    cdef Py_ssize_t n = ng.shape[0]
    cdef Py_ssize_t x, y, z
    cdef i64 top = ng[zero], a, b
    mv1 = mv2 = mv3 = mv4 = mv5 = mv6 = None

    for x in range(n):
        for y in range(n):
            for z in range(n):
                if op[x, op[y, z]] != op[op[x, y], z]:
                    mv1 = (x, y, z)
                    break
            if mv1 is not None:
                break
        if mv1 is not None:
            break
    for x in range(n):
        for y in range(n):
            if op[x, y] != op[y, x]:
                mv2 = (x, y)
                break
        if mv2 is not None:
            break
    for x in range(n):
        if mv3 is None and op[x, zero] != x:
            mv3 = (x,)
        if mv4 is None and ng[ng[x]] != x:
            mv4 = (x,)
        if mv5 is None and op[x, top] != top:
            mv5 = (x,)
    for x in range(n):
        for y in range(n):
            a = op[ng[op[ng[x], y]], y]
            b = op[ng[op[ng[y], x]], x]
            if a != b:
                mv6 = (x, y)
                break
        if mv6 is not None:
            break
    return [mv1, mv2, mv3, mv4, mv5, mv6]


def pco_axiom_scan(add, rel, shifts=None):
    cdef const i64[:, ::1] ad = np.ascontiguousarray(add, dtype=np.int64)
    cdef const cnp.uint8_t[:, :, ::1] r = np.ascontiguousarray(rel, dtype=np.uint8)
    cdef Py_ssize_t n = r.shape[0]
    cdef Py_ssize_t x, y, z, w, v, t
    cdef const i64[::1] sh = np.ascontiguousarray(
        np.arange(n) if shifts is None else shifts, dtype=np.int64)
    cdef Py_ssize_t ns = sh.shape[0]
    cdef Py_ssize_t nw = (n + 63) >> 6
    cdef cnp.uint64_t word, one = 1
    packed = np.zeros((n, n, nw * 64), dtype=np.uint8)
    packed[:, :, :n] = np.asarray(r)
    cdef const cnp.uint64_t[:, :, ::1] bits = np.ascontiguousarray(
        np.packbits(packed, axis=2, bitorder="little").view(np.uint64))
    strict = cyclic = antisym = trans = compat = linear = None

    for x in range(n):
        for y in range(n):
            for z in range(n):
                if not r[x, y, z]:
                    if linear is None and x != y and y != z and z != x and not r[x, z, y]:
                        linear = (x, y, z)
                    continue
                if strict is None and (x == y or y == z or z == x):
                    strict = (x, y, z)
                if cyclic is None and not r[y, z, x]:
                    cyclic = (x, y, z)
                if antisym is None and r[x, z, y]:
                    antisym = (x, y, z)
                if trans is None:
                    # rows of base x as bitsets: row z must lie inside row y plus {y}
                    for t in range(nw):
                        word = bits[x, z, t] & ~bits[x, y, t]
                        if t == y >> 6:
                            word &= ~(one << (y & 63))
                        if word:
                            w = t * 64
                            while not (word & one):
                                word >>= 1
                                w += 1
                            trans = (x, y, z, w)
                            break
                if compat is None:
                    for t in range(ns):
                        v = sh[t]
                        if not r[ad[x, v], ad[y, v], ad[z, v]]:
                            compat = (x, y, z, v)
                            break
    return [strict, cyclic, antisym, trans, compat, linear]


def good_add(oplus, odot, xs, ys, i64 zero, i64 top):
    cdef const i64[:, ::1] op = oplus
    cdef const i64[:, ::1] od = odot
    cdef Py_ssize_t lx = len(xs), ly = len(ys)
    cdef Py_ssize_t i, j, lo, hi, m = lx + ly
    cdef i64 acc
    cdef i64[::1] xv = np.empty(lx + 1, dtype=np.int64)
    cdef i64[::1] yv = np.empty(ly + 1, dtype=np.int64)
    for i in range(lx):
        xv[i] = xs[i]
    for i in range(ly):
        yv[i] = ys[i]
    out = [0] * m
    for i in range(m):
        acc = xv[i] if i < lx else zero
        if acc != top:
            lo = i - lx if i > lx else 0
            hi = i if i < ly else ly
            for j in range(lo, hi):
                acc = op[acc, od[xv[i - 1 - j], yv[j]]]
                if acc == top:
                    break
        if acc != top and i < ly:
            acc = op[acc, yv[i]]
        out[i] = acc
    while m > 0 and out[m - 1] == zero:
        m -= 1
    del out[m:]
    return out
