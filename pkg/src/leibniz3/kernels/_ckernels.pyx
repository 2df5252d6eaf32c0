# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels on int64. Callers must rule out overflow first."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

ctypedef cnp.int64_t i64


def cocycle_operator(f, int variant):
    cdef cnp.ndarray[i64, ndim=4] F = np.ascontiguousarray(f, dtype=np.int64)
    cdef Py_ssize_t n = F.shape[0]
    cdef Py_ssize_t n2 = n * n, n3 = n2 * n, n4 = n3 * n
    cdef cnp.ndarray[i64, ndim=2] M = np.zeros((n4 * n2, n4), dtype=np.int64)
    cdef Py_ssize_t i, s, t, j, k, m, p, q, r, part, lo, hi
    cdef i64 a, b, c
    if variant == 0:
        lo, hi = 1, 4
    else:
        lo, hi = variant, variant + 1
    for i in range(n):
        for s in range(n):
            for t in range(n):
                for j in range(n):
                    for k in range(n):
                        for m in range(n):
                            r = ((((i * n + s) * n + t) * n + j) * n + k) * n + m
                            for p in range(n):
                                M[r, j * n3 + k * n2 + m * n + p] += F[i, s, t, p]
                            for part in range(lo, hi):
                                for q in range(n):
                                    if part == 1:
                                        a = F[q, s, t, j]; b = F[q, s, t, k]; c = F[q, s, t, m]
                                        p = i
                                    elif part == 2:
                                        a = F[i, q, t, j]; b = F[i, q, t, k]; c = F[i, q, t, m]
                                        p = s
                                    else:
                                        a = F[i, s, q, j]; b = F[i, s, q, k]; c = F[i, s, q, m]
                                        p = t
                                    if a:
                                        M[r, q * n3 + k * n2 + m * n + p] -= a
                                    if b:
                                        M[r, j * n3 + q * n2 + m * n + p] -= b
                                    if c:
                                        M[r, j * n3 + k * n2 + q * n + p] -= c
    return M


def grid_zero_points(Q, grid):
    cdef cnp.ndarray[i64, ndim=3] QQ = np.ascontiguousarray(Q, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] G = np.ascontiguousarray(grid, dtype=np.int64)
    cdef Py_ssize_t nc = QQ.shape[0], d = QQ.shape[1], g = G.shape[0]
    cdef cnp.ndarray[cnp.intp_t, ndim=1] idx = np.zeros(d, dtype=np.intp)
    cdef cnp.ndarray[i64, ndim=1] t = np.zeros(d, dtype=np.int64)
    cdef Py_ssize_t a, b, cc, pos
    cdef i64 acc
    cdef bint ok
    out = []
    if g == 0 and d > 0:
        return out
    for a in range(d):
        t[a] = G[0]
    while True:
        ok = True
        for cc in range(nc):
            acc = 0
            for a in range(d):
                if t[a] == 0:
                    continue
                for b in range(d):
                    acc += QQ[cc, a, b] * t[a] * t[b]
            if acc != 0:
                ok = False
                break
        if ok:
            point = []
            for a in range(d):
                point.append(idx[a])
            out.append(tuple(point))
        pos = d - 1
        while pos >= 0:
            idx[pos] += 1
            if idx[pos] < g:
                t[pos] = G[idx[pos]]
                break
            idx[pos] = 0
            t[pos] = G[0]
            pos -= 1
        if pos < 0:
            break
    return out
