"""Ternary algebras: kinds, brackets, adjoint maps and fundamental identities."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from . import _sparse
from .exactmath import ZERO, Scalar, as_scalar
from .reports import REPORT_LIMIT, Report, ResidualReport
from .structure import SC3, Matrix, is_antisymmetric

__all__ = [
    "AlgebraKind",
    "Algebra3",
    "Vector",
    "StructuralError",
    "bracket",
    "ad_matrix",
    "fi_residual",
    "check",
]


class StructuralError(ValueError):
    """Input violates a structural precondition (dimensions, kinds, antisymmetry)."""


class AlgebraKind(enum.Enum):
    """Which argument slot of the adjoint map is a derivation."""

    LEIBNIZ_FIRST = "leibniz1"
    LEIBNIZ_SECOND = "leibniz2"
    LEIBNIZ_THIRD = "leibniz3"
    LIE3 = "lie3"

    @classmethod
    def parse(cls, text: str) -> "AlgebraKind":
        aliases = {"first": "leibniz1", "second": "leibniz2", "third": "leibniz3", "lie": "lie3"}
        text = aliases.get(text.lower(), text.lower())
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"unknown algebra kind {text!r}; expected one of "
                             f"{', '.join(k.value for k in cls)}") from None

    @property
    def identity_slot(self) -> int:
        """Slot whose adjoint map is a derivation (the Filippov identity is slot 3)."""
        return {"leibniz1": 1, "leibniz2": 2, "leibniz3": 3, "lie3": 3}[self.value]


@dataclass(frozen=True)
class Algebra3:
    sc: SC3
    kind: AlgebraKind
    name: str = ""

    @property
    def dim(self) -> int:
        return self.sc.dim

    def with_kind(self, kind: AlgebraKind) -> "Algebra3":
        return Algebra3(self.sc, kind, self.name)

    def eval(self, assignment) -> "Algebra3":
        return Algebra3(self.sc.eval(assignment), self.kind, self.name)


@dataclass(frozen=True)
class Vector:
    dim: int
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.dim:
            raise StructuralError(f"vector has {len(self.coords)} coordinates, expected {self.dim}")
        object.__setattr__(self, "coords", tuple(as_scalar(c) for c in self.coords))

    @classmethod
    def basis(cls, dim: int, i: int) -> "Vector":
        return cls(dim, tuple(1 if k == i else 0 for k in range(1, dim + 1)))

    @classmethod
    def of(cls, *coords) -> "Vector":
        return cls(len(coords), tuple(coords))

    def __getitem__(self, i: int) -> Scalar:
        return self.coords[i - 1]

    def __add__(self, other: "Vector") -> "Vector":
        return Vector(self.dim, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "Vector":
        return Vector(self.dim, tuple(as_scalar(c) * a for a in self.coords))


def bracket(alg: Algebra3, x: Vector, y: Vector, z: Vector) -> Vector:
    n = alg.dim
    if not (x.dim == y.dim == z.dim == n):
        raise StructuralError("dimension mismatch in bracket")
    out = [ZERO] * n
    for (i, j, k, m), v in alg.sc.items():
        c = x[i] * y[j] * z[k]
        if c:
            out[m - 1] = out[m - 1] + c * v
    return Vector(n, tuple(out))


def ad_matrix(alg: Algebra3, slot: int, u: Vector, v: Vector) -> Matrix:
    """Matrix of z -> [z,u,v] (slot 1), [u,z,v] (slot 2) or [u,v,z] (slot 3).

    Column c is the image of the basis vector e_c.
    """
    if slot not in (1, 2, 3):
        raise ValueError(f"slot must be 1, 2 or 3, got {slot}")
    n = alg.dim
    if u.dim != n or v.dim != n:
        raise StructuralError("dimension mismatch in ad_matrix")
    columns = []
    for c in range(1, n + 1):
        z = Vector.basis(n, c)
        args = [u, v]
        args.insert(slot - 1, z)
        columns.append(bracket(alg, *args).coords)
    return Matrix.from_function(n, n, lambda r, c: columns[c - 1][r - 1])


# Each identity is LHS - RHS = sum of sign * f[l] * f[r] over l[3] == r[rpos].
# Residual index order is (a, b, c, s, t, m): bracket arguments y = (a, b, c)
# and the two fixed arguments x = (s, t) of the derivation, upper index m.
_FI_TERMS = {
    1: [
        (+1, 0, lambda l, r: (l[0], l[1], l[2], r[1], r[2], r[3])),
        (-1, 0, lambda l, r: (l[0], r[1], r[2], l[1], l[2], r[3])),
        (-1, 1, lambda l, r: (r[0], l[0], r[2], l[1], l[2], r[3])),
        (-1, 2, lambda l, r: (r[0], r[1], l[0], l[1], l[2], r[3])),
    ],
    2: [
        (+1, 1, lambda l, r: (l[0], l[1], l[2], r[0], r[2], r[3])),
        (-1, 0, lambda l, r: (l[1], r[1], r[2], l[0], l[2], r[3])),
        (-1, 1, lambda l, r: (r[0], l[1], r[2], l[0], l[2], r[3])),
        (-1, 2, lambda l, r: (r[0], r[1], l[1], l[0], l[2], r[3])),
    ],
    3: [
        (+1, 2, lambda l, r: (l[0], l[1], l[2], r[0], r[1], r[3])),
        (-1, 0, lambda l, r: (l[2], r[1], r[2], l[0], l[1], r[3])),
        (-1, 1, lambda l, r: (r[0], l[2], r[2], l[0], l[1], r[3])),
        (-1, 2, lambda l, r: (r[0], r[1], l[2], l[0], l[1], r[3])),
    ],
}


def fi_residual_sc(f: SC3, slot: int) -> dict:
    """Sparse residual of the slot-``slot`` fundamental identity of ``f``."""
    entries = list(f.items())
    tables = {pos: _sparse.index_by(entries, pos) for pos in (0, 1, 2)}
    acc: dict = {}
    for sign, rpos, out in _FI_TERMS[slot]:
        _sparse.accumulate(acc, entries, 3, tables[rpos], out, sign)
    return _sparse.prune(acc)


def fi_residual(alg: Algebra3) -> ResidualReport:
    slot = alg.kind.identity_slot
    return ResidualReport(f"fundamental identity ({alg.kind.value})", fi_residual_sc(alg.sc, slot))


def check(alg: Algebra3) -> Report:
    name = alg.name or "algebra"
    if alg.kind is AlgebraKind.LIE3 and not is_antisymmetric(alg.sc):
        return Report(name, False, stage="antisymmetry",
                      message="lie3 structure constants are not skew in the lower indices",
                      details={"kind": alg.kind.value, "dim": alg.dim})
    res = fi_residual(alg)
    return Report(name, res.is_zero, stage="" if res.is_zero else "fundamental identity",
                  residuals=[res], details={"kind": alg.kind.value, "dim": alg.dim})


def satisfied_kinds(f: SC3) -> list:
    """The Leibniz kinds whose identity holds identically for ``f`` (plus lie3 if skew)."""
    kinds = [k for k in (AlgebraKind.LEIBNIZ_FIRST, AlgebraKind.LEIBNIZ_SECOND,
                         AlgebraKind.LEIBNIZ_THIRD) if not fi_residual_sc(f, k.identity_slot)]
    if AlgebraKind.LEIBNIZ_THIRD in kinds and is_antisymmetric(f):
        kinds.append(AlgebraKind.LIE3)
    return kinds


def basis_vectors(dim: int) -> Sequence[Vector]:
    return [Vector.basis(dim, i) for i in range(1, dim + 1)]


__all__ += ["fi_residual_sc", "satisfied_kinds", "basis_vectors", "REPORT_LIMIT"]
