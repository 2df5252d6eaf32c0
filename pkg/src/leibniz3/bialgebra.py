"""1-cocycle compatibility between a ternary algebra and its dual.

The dual algebra's tensor ``ft`` is read with ``ft[j, k, m, p]`` the
coefficient of the p-th dual basis vector in the bracket of dual basis
vectors ``j, k, m``. The cocommutator is then
``gamma(e_p) = sum ft[j, k, m, p] e_j (x) e_k (x) e_m``.

Residual tensors are indexed ``(i, s, n, j, k, m)``: the bracket
``[e_i, e_s, e_n]`` on one side and the triple ``e_j (x) e_k (x) e_m`` on
the other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from . import _sparse
from .algebras import Algebra3, AlgebraKind, StructuralError, check
from .exactmath import ZERO
from .reports import Report, ResidualReport
from .structure import (
    SC3,
    Matrix,
    Tensor3Element,
    is_antisymmetric,
    slice_chi,
    slice_Y,
    slice_Y_prime,
)

__all__ = [
    "BialgebraPair",
    "CocycleSystem",
    "Variant",
    "variant_for",
    "gamma_of",
    "cocycle_residual_sc",
    "cocycle_residual_tensor",
    "cocycle_residual_matrix",
    "pair_check",
]

Variant = Union[int, str]  # 1, 2, 3 or "lie"
VARIANTS = (1, 2, 3, "lie")


@dataclass(frozen=True)
class BialgebraPair:
    a: Algebra3
    astar: Algebra3

    def __post_init__(self):
        if self.a.dim != self.astar.dim:
            raise StructuralError(f"dimension mismatch: {self.a.dim} vs {self.astar.dim}")

    @property
    def dim(self) -> int:
        return self.a.dim

    def eval(self, assignment) -> "BialgebraPair":
        return BialgebraPair(self.a.eval(assignment), self.astar.eval(assignment))


def variant_for(kind: AlgebraKind) -> Variant:
    return {AlgebraKind.LEIBNIZ_FIRST: 1, AlgebraKind.LEIBNIZ_SECOND: 2,
            AlgebraKind.LEIBNIZ_THIRD: 3, AlgebraKind.LIE3: "lie"}[kind]


@dataclass(frozen=True)
class CocycleSystem:
    """The two-equation system solved for a given pair of kinds."""

    a_kind: AlgebraKind
    astar_kind: AlgebraKind

    def __post_init__(self):
        if (self.a_kind is AlgebraKind.LIE3) != (self.astar_kind is AlgebraKind.LIE3):
            raise StructuralError("the 3-Lie system pairs two lie3 algebras")

    @property
    def variant(self) -> Variant:
        return variant_for(self.a_kind)

    @property
    def dual_identity_slot(self) -> int:
        return self.astar_kind.identity_slot

    @classmethod
    def all(cls) -> list:
        leib = [AlgebraKind.LEIBNIZ_FIRST, AlgebraKind.LEIBNIZ_SECOND, AlgebraKind.LEIBNIZ_THIRD]
        systems = [cls(a, b) for a, b in itertools.product(leib, leib)]
        systems.append(cls(AlgebraKind.LIE3, AlgebraKind.LIE3))
        return systems


def gamma_of(astar: Algebra3 | SC3) -> dict:
    """Map ``p -> gamma(e_p)`` for p = 1..n."""
    ft = astar.sc if isinstance(astar, Algebra3) else astar
    buckets: dict = {p: {} for p in range(1, ft.dim + 1)}
    for (j, k, m, p), v in ft.items():
        buckets[p][(j, k, m)] = v
    return {p: Tensor3Element(ft.dim, entries) for p, entries in buckets.items()}


# (sign, f position of the contracted index, ft position, output builder)
# l = f entry, r = ft entry.
_LHS = [(+1, 3, 3, lambda l, r: (l[0], l[1], l[2], r[0], r[1], r[2]))]
_RHS = {
    1: [
        (-1, 0, 0, lambda l, r: (r[3], l[1], l[2], l[3], r[1], r[2])),
        (-1, 0, 1, lambda l, r: (r[3], l[1], l[2], r[0], l[3], r[2])),
        (-1, 0, 2, lambda l, r: (r[3], l[1], l[2], r[0], r[1], l[3])),
    ],
    2: [
        (-1, 1, 0, lambda l, r: (l[0], r[3], l[2], l[3], r[1], r[2])),
        (-1, 1, 1, lambda l, r: (l[0], r[3], l[2], r[0], l[3], r[2])),
        (-1, 1, 2, lambda l, r: (l[0], r[3], l[2], r[0], r[1], l[3])),
    ],
    3: [
        (-1, 2, 0, lambda l, r: (l[0], l[1], r[3], l[3], r[1], r[2])),
        (-1, 2, 1, lambda l, r: (l[0], l[1], r[3], r[0], l[3], r[2])),
        (-1, 2, 2, lambda l, r: (l[0], l[1], r[3], r[0], r[1], l[3])),
    ],
}


def _normalize_variant(variant) -> Variant:
    if isinstance(variant, str):
        variant = variant.lower()
        if variant.isdigit():
            variant = int(variant)
    if variant not in VARIANTS:
        raise ValueError(f"unknown cocycle variant {variant!r}")
    return variant


def _terms(variant: Variant) -> list:
    if variant == "lie":
        return _LHS + _RHS[1] + _RHS[2] + _RHS[3]
    return _LHS + _RHS[variant]


def cocycle_residual_sc(f: SC3, ft: SC3, variant: Variant) -> dict:
    """Sparse residual of the cocycle equation, linear in each of ``f`` and ``ft``."""
    variant = _normalize_variant(variant)
    if f.dim != ft.dim:
        raise StructuralError("dimension mismatch")
    f_entries = list(f.items())
    ft_entries = list(ft.items())
    tables = {pos: _sparse.index_by(ft_entries, pos) for pos in range(4)}
    acc: dict = {}
    for sign, fpos, tpos, out in _terms(variant):
        _sparse.accumulate(acc, f_entries, fpos, tables[tpos], out, sign)
    return _sparse.prune(acc)


def _validate(pair: BialgebraPair, variant) -> Variant:
    variant = _normalize_variant(variant)
    if variant == "lie":
        if pair.a.kind is not AlgebraKind.LIE3 or pair.astar.kind is not AlgebraKind.LIE3:
            raise StructuralError("the lie variant requires two lie3 algebras")
        for alg, label in ((pair.a, "algebra"), (pair.astar, "dual")):
            if not is_antisymmetric(alg.sc):
                raise StructuralError(f"{label} structure constants are not skew-symmetric")
    return variant


def cocycle_residual_tensor(pair: BialgebraPair, variant: Variant) -> ResidualReport:
    variant = _validate(pair, variant)
    return ResidualReport(f"cocycle variant {variant} (tensor)",
                          cocycle_residual_sc(pair.a.sc, pair.astar.sc, variant))


class _Slices:
    """Lazily cached slice matrices of one tensor."""

    def __init__(self, t: SC3):
        self.t = t
        self._cache: dict = {}

    def _get(self, key, fn, *args):
        k = (key, *args)
        if k not in self._cache:
            self._cache[k] = fn(self.t, *args)
        return self._cache[k]

    def chi(self, a, b) -> Matrix:
        return self._get("chi", slice_chi, a, b)

    def Y(self, a, p) -> Matrix:
        return self._get("Y", slice_Y, a, p)

    def Yp(self, a, p) -> Matrix:
        return self._get("Yp", slice_Y_prime, a, p)


def _sum(mats: list, rows: int, cols: int) -> Matrix:
    out = Matrix.zeros(rows, cols)
    for mat in mats:
        out = out + mat
    return out


def _rhs_matrix(F: _Slices, T: _Slices, variant: int, i, s, j, k, n: int) -> Matrix:
    rng = range(1, n + 1)
    if variant == 1:
        return _sum([
            F.Yp(s, j).T @ T.Yp(k, i),
            F.Yp(s, k).T @ T.Y(j, i),
            *[F.chi(mp, s).scale(T.chi(j, k).get(mp, i)) for mp in rng],
        ], n, n)
    if variant == 2:
        return _sum([
            F.Y(i, j).T @ T.Yp(k, s),
            F.Y(i, k).T @ T.Y(j, s),
            *[F.chi(i, mp).scale(T.chi(j, k).get(mp, s)) for mp in rng],
        ], n, n)
    # variant 3; the second sum runs over the middle upper index of the dual slice
    chi_is = F.chi(i, s)
    return _sum([
        *[T.chi(jp, k).T.scale(chi_is.get(jp, j)) for jp in rng],
        *[T.chi(j, kp).T.scale(chi_is.get(kp, k)) for kp in rng],
        T.chi(j, k).T @ chi_is,
    ], n, n)


def cocycle_residual_matrix(pair: BialgebraPair, variant: Variant) -> ResidualReport:
    """Same residual assembled from slice-matrix products, one n x n block per (i, s, j, k)."""
    variant = _validate(pair, variant)
    n = pair.dim
    F, T = _Slices(pair.a.sc), _Slices(pair.astar.sc)
    parts = (1, 2, 3) if variant == "lie" else (variant,)
    entries = {}
    rng = range(1, n + 1)
    for i, s, j, k in itertools.product(rng, repeat=4):
        block = F.chi(i, s) @ T.chi(j, k).T
        for v in parts:
            block = block - _rhs_matrix(F, T, v, i, s, j, k, n)
        for (row, col), value in block.nonzero().items():
            entries[(i, s, row, j, k, col)] = value
    return ResidualReport(f"cocycle variant {variant} (matrix)", entries)


def pair_check(pair: BialgebraPair) -> Report:
    a, astar = pair.a, pair.astar
    name = f"({a.name or 'A'}, {astar.name or 'A*'})"
    details = {"algebra_kind": a.kind.value, "dual_kind": astar.kind.value, "dim": pair.dim}
    try:
        system = CocycleSystem(a.kind, astar.kind)
    except StructuralError as exc:
        return Report(name, False, stage="kinds", message=str(exc), details=details)
    details["variant"] = system.variant

    rep_a = check(a)
    if not rep_a.passed:
        return Report(name, False, stage=f"algebra {rep_a.stage}", message=rep_a.message,
                      residuals=rep_a.residuals, details=details)
    rep_d = check(astar)
    if not rep_d.passed:
        return Report(name, False, stage=f"dual {rep_d.stage}", message=rep_d.message,
                      residuals=rep_d.residuals, details=details)
    try:
        res = cocycle_residual_tensor(pair, system.variant)
    except StructuralError as exc:
        return Report(name, False, stage="structure", message=str(exc), details=details)
    return Report(name, res.is_zero, stage="" if res.is_zero else "cocycle",
                  residuals=[rep_a.residuals[0], rep_d.residuals[0], res], details=details)


def zero_residual_entries(n: int) -> dict:
    return {idx: ZERO for idx in itertools.product(range(1, n + 1), repeat=6)}
