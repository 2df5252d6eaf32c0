"""Reference kernels in pure Python (unbounded integers)."""

from __future__ import annotations

import itertools

import numpy as np

BACKEND = "python"


def _terms(variant: int):
    # (part, slot of the contracted f index); part 0 is the left-hand side
    parts = {1: (1,), 2: (2,), 3: (3,), 0: (1, 2, 3)}[variant]
    return parts


def cocycle_operator(f, variant: int):
    """Integer matrix M with residual = M @ vec(ft).

    ``f`` is an (n, n, n, n) integer array, 0-based. Rows enumerate
    (i, s, n, j, k, m) and columns (j, k, m, p) in C order.
    """
    f = np.asarray(f)
    n = f.shape[0]
    F = f.tolist()
    rows, cols = n ** 6, n ** 4
    M = np.zeros((rows, cols), dtype=object)
    rng = range(n)

    def col(a, b, c, d):
        return ((a * n + b) * n + c) * n + d

    for i, s, t, j, k, m in itertools.product(rng, repeat=6):
        r = ((((i * n + s) * n + t) * n + j) * n + k) * n + m
        row = M[r]
        for p in rng:
            v = F[i][s][t][p]
            if v:
                row[col(j, k, m, p)] += v
        for part in _terms(variant):
            for q in rng:
                if part == 1:
                    a, b, c = F[q][s][t][j], F[q][s][t][k], F[q][s][t][m]
                    lower = i
                elif part == 2:
                    a, b, c = F[i][q][t][j], F[i][q][t][k], F[i][q][t][m]
                    lower = s
                else:
                    a, b, c = F[i][s][q][j], F[i][s][q][k], F[i][s][q][m]
                    lower = t
                if a:
                    row[col(q, k, m, lower)] -= a
                if b:
                    row[col(j, q, m, lower)] -= b
                if c:
                    row[col(j, k, q, lower)] -= c
    return M


def grid_zero_points(Q, grid) -> list:
    """Index tuples ``idx`` (lexicographic) with ``t^T Q_c t == 0`` for all c, ``t = grid[idx]``."""
    Q = np.asarray(Q)
    c, d = Q.shape[0], (Q.shape[1] if Q.ndim == 3 else 0)
    forms = [[(a, b, int(Q[r, a, b])) for a in range(d) for b in range(d) if Q[r, a, b]]
             for r in range(c)]
    values = [int(x) for x in grid]
    out = []
    for idx in itertools.product(range(len(values)), repeat=d):
        t = [values[x] for x in idx]
        if all(sum(w * t[a] * t[b] for a, b, w in form) == 0 for form in forms):
            out.append(idx)
    return out
