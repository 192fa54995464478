# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled twins of the _kernels_py functions.

Same contracts as twistzeta._kernels_py; see that module.  Coefficients
stay Python objects (exact rationals), the speedup comes from C loops,
tuple handling and native complex arithmetic.
"""

import math

comb = math.comb


def mul_terms(dict A, dict B):
    """Distributive product of two term tables, zero results pruned."""
    cdef dict out = {}
    cdef tuple ea, eb
    cdef list buf
    cdef Py_ssize_t i, n
    for ea, ca in A.items():
        n = len(ea)
        for eb, cb in B.items():
            buf = [0] * n
            for i in range(n):
                buf[i] = ea[i] + eb[i]
            e = tuple(buf)
            prev = out.get(e)
            if prev is None:
                out[e] = ca * cb
            else:
                s = prev + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def shift_terms(dict A, tuple a):
    """Substitute X_i -> X_i + a_i, one variable at a time via Pascal rows."""
    cdef dict out = A
    cdef dict nxt
    cdef tuple e, ne
    cdef Py_ssize_t i
    cdef long ai, ei, j
    for i in range(len(a)):
        ai = a[i]
        if ai == 0:
            continue
        nxt = {}
        for e, c in out.items():
            ei = e[i]
            if ei == 0:
                prev = nxt.get(e)
                if prev is None:
                    nxt[e] = c
                else:
                    s = prev + c
                    if s:
                        nxt[e] = s
                    else:
                        del nxt[e]
                continue
            pw = 1
            for j in range(ei, -1, -1):
                coef = c * (comb(ei, j) * pw)
                pw = pw * ai
                ne = e[:i] + (j,) + e[i + 1:]
                prev = nxt.get(ne)
                if prev is None:
                    nxt[ne] = coef
                else:
                    s = prev + coef
                    if s:
                        nxt[ne] = s
                    else:
                        del nxt[ne]
        out = nxt
    if out is A:
        return dict(out)
    return out


def cyclo_mul(tuple xs, tuple ys, tuple rows):
    """Coordinate product in Q(zeta_r); rows reduce z^phi .. z^(2phi-2)."""
    cdef Py_ssize_t phi = len(xs)
    cdef Py_ssize_t n = 2 * phi - 1
    cdef Py_ssize_t i, j
    cdef list conv = [0] * n
    cdef list out
    cdef tuple row
    for i in range(phi):
        x = xs[i]
        if not x:
            continue
        for j in range(phi):
            y = ys[j]
            if y:
                conv[i + j] = conv[i + j] + x * y
    out = conv[:phi]
    for j in range(phi, n):
        t = conv[j]
        if t:
            row = rows[j - phi]
            for i in range(phi):
                ri = row[i]
                if ri:
                    out[i] = out[i] + t * ri
    return tuple(out)


def power_sums_box(double wre, double wim, long M, int maxdeg):
    """S_d = sum_{m=1..M} w^m m^d for d = 0..maxdeg, in complex doubles."""
    if maxdeg < 0 or maxdeg > 63:
        raise ValueError("maxdeg out of supported range 0..63")
    cdef double complex w = wre + 1j * wim
    cdef double complex p = 1
    cdef double complex acc[64]
    cdef double md
    cdef long m
    cdef int d
    for d in range(maxdeg + 1):
        acc[d] = 0
    for m in range(1, M + 1):
        p = p * w
        md = 1.0
        for d in range(maxdeg + 1):
            acc[d] = acc[d] + p * md
            md = md * m
    return [acc[d] for d in range(maxdeg + 1)]
