"""Sparse pairwise contraction of 4-index tensors."""

from __future__ import annotations

from collections import defaultdict

from .exactmath import ZERO


def index_by(entries, pos: int) -> dict:
    table = defaultdict(list)
    for idx, v in entries:
        table[idx[pos]].append((idx, v))
    return table


def accumulate(acc: dict, left, lpos: int, right_table: dict, out, sign: int = 1) -> None:
    """acc[out(l, r)] += sign * L[l] * R[r] over entries sharing ``l[lpos] == r[rpos]``.

    ``right_table`` is ``index_by(R, rpos)``.
    """
    for lidx, lv in left:
        bucket = right_table.get(lidx[lpos])
        if not bucket:
            continue
        for ridx, rv in bucket:
            key = out(lidx, ridx)
            prod = lv * rv
            acc[key] = acc.get(key, ZERO) + (prod if sign > 0 else -prod)


def prune(acc: dict) -> dict:
    return {k: v for k, v in acc.items() if v}
