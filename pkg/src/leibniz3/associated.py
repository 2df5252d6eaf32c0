"""Binary Leibniz algebras on A (x) A induced by a ternary bracket, and their 1-cocycles.

Basis vectors of A (x) A are numbered by the pair index ``I = (i - 1) * n + j``
for ``e_i (x) e_j``. Structure constants are stored sparsely as
``sc2[(I, J, K)]``, the coefficient of ``e_K`` in ``[e_I, e_J]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import _sparse
from .algebras import Algebra3, AlgebraKind, StructuralError
from .exactmath import Scalar, as_scalar
from .reports import ResidualReport

__all__ = [
    "LeibnizAlgebra",
    "DeltaMap",
    "FORMS",
    "COCYCLE_FORMS",
    "encode_pair",
    "decode_pair",
    "admissible_forms",
    "associated",
    "leibniz_residual",
    "delta_cocycle_residual",
]

FORMS = (1, 21, 22, 3)
COCYCLE_FORMS = (7, 8, 9, 10)
_SIDE = {1: "right", 21: "left", 22: "right", 3: "left"}


def encode_pair(i: int, j: int, n: int) -> int:
    return (i - 1) * n + j


def decode_pair(index: int, n: int) -> tuple:
    return (index - 1) // n + 1, (index - 1) % n + 1


def admissible_forms(kind: AlgebraKind) -> tuple:
    return {
        AlgebraKind.LEIBNIZ_FIRST: (1,),
        AlgebraKind.LEIBNIZ_SECOND: (21, 22),
        AlgebraKind.LEIBNIZ_THIRD: (3,),
        AlgebraKind.LIE3: (3,),
    }[kind]


def _check_form(form) -> int:
    form = int(form)
    if form not in FORMS:
        raise ValueError(f"bracket form must be one of {FORMS}, got {form}")
    return form


@dataclass(frozen=True)
class LeibnizAlgebra:
    base_dim: int
    form: int
    sc2: dict = field(default_factory=dict)

    def __post_init__(self):
        _check_form(self.form)
        top = self.dim
        for idx in self.sc2:
            if len(idx) != 3 or not all(1 <= x <= top for x in idx):
                raise StructuralError(f"pair index {idx} out of range 1..{top}")

    @property
    def dim(self) -> int:
        return self.base_dim * self.base_dim

    @property
    def side(self) -> str:
        return _SIDE[self.form]

    def bracket_basis(self, I: int, J: int) -> dict:
        """``[e_I, e_J]`` as ``{K: coefficient}``."""
        return {K: v for (a, b, K), v in self.sc2.items() if a == I and b == J}

    def eval(self, assignment) -> "LeibnizAlgebra":
        sc2 = {k: v.eval(assignment) for k, v in self.sc2.items()}
        return LeibnizAlgebra(self.base_dim, self.form, {k: v for k, v in sc2.items() if v})


@dataclass(frozen=True)
class DeltaMap:
    """``delta(e_I) = sum entries[(I, J, K)] e_J (x) e_K`` on a Leibniz algebra of dim ``dim``."""

    dim: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        for idx in self.entries:
            if len(idx) != 3 or not all(1 <= x <= self.dim for x in idx):
                raise StructuralError(f"delta index {idx} out of range 1..{self.dim}")
        object.__setattr__(self, "entries",
                           {k: as_scalar(v) for k, v in self.entries.items() if as_scalar(v)})

    @classmethod
    def transpose_of(cls, gstar: LeibnizAlgebra) -> "DeltaMap":
        """The cobracket dual to ``gstar``'s bracket: c~_{JK}^I becomes the e_J (x) e_K coefficient of delta(e_I)."""
        return cls(gstar.dim, {(I, J, K): v for (J, K, I), v in gstar.sc2.items()})

    def image(self, I: int) -> dict:
        return {(J, K): v for (a, J, K), v in self.entries.items() if a == I}

    def __add__(self, other: "DeltaMap") -> "DeltaMap":
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = acc[k] + v if k in acc else v
        return DeltaMap(self.dim, acc)

    def __eq__(self, other):
        return isinstance(other, DeltaMap) and self.dim == other.dim and self.entries == other.entries

    __hash__ = None


# Each term: (f position of the contracted index, output position pair)
# for [e_a (x) e_b, e_c (x) e_d] = f[x, y, z, p] e_p (x) e_q  or  e_q (x) e_p.
def _form_terms(form: int):
    # returns functions mapping (a, b, c, d) -> list of (f-lower-triple, fixed, position of p)
    if form == 1:
        return lambda a, b, c, d: [((a, c, d), b, 0), ((b, c, d), a, 1)]
    if form == 21:
        return lambda a, b, c, d: [((a, c, b), d, 0), ((a, d, b), c, 1)]
    if form == 22:
        return lambda a, b, c, d: [((c, a, d), b, 0), ((c, b, d), a, 1)]
    return lambda a, b, c, d: [((a, b, c), d, 0), ((a, b, d), c, 1)]


def associated(alg: Algebra3, form: int) -> LeibnizAlgebra:
    """The Leibniz algebra on A (x) A given by bracket ``form``.

    Forms 1 and 22 give right Leibniz algebras, 21 and 3 left ones.
    """
    form = _check_form(form)
    if form not in admissible_forms(alg.kind):
        raise StructuralError(f"bracket form {form} is not admissible for kind {alg.kind.value}")
    return _associated_sc(alg.sc, form)


def _associated_sc(f, form: int) -> LeibnizAlgebra:
    n = f.dim
    terms = _form_terms(form)
    by_lower: dict = {}
    for (x, y, z, p), v in f.items():
        by_lower.setdefault((x, y, z), []).append((p, v))
    acc: dict = {}
    for a, b, c, d in itertools.product(range(1, n + 1), repeat=4):
        I, J = encode_pair(a, b, n), encode_pair(c, d, n)
        for lower, fixed, pos in terms(a, b, c, d):
            for p, v in by_lower.get(lower, ()):
                K = encode_pair(p, fixed, n) if pos == 0 else encode_pair(fixed, p, n)
                key = (I, J, K)
                acc[key] = acc[key] + v if key in acc else v
    return LeibnizAlgebra(n, form, _sparse.prune(acc))


# Residual indices (X, Y, Z, K). l and r are sc2 entries (I, J, K).
_LEIBNIZ_TERMS = {
    # [[X,Y],Z] - [[X,Z],Y] - [X,[Y,Z]]
    "right": [
        (+1, 0, lambda l, r: (l[0], l[1], r[1], r[2])),
        (-1, 0, lambda l, r: (l[0], r[1], l[1], r[2])),
        (-1, 1, lambda l, r: (r[0], l[0], l[1], r[2])),
    ],
    # [X,[Y,Z]] - [[X,Y],Z] - [Y,[X,Z]]
    "left": [
        (+1, 1, lambda l, r: (r[0], l[0], l[1], r[2])),
        (-1, 0, lambda l, r: (l[0], l[1], r[1], r[2])),
        (-1, 1, lambda l, r: (l[0], r[0], l[1], r[2])),
    ],
}


def leibniz_residual(g: LeibnizAlgebra, side: str | None = None) -> ResidualReport:
    """Residual of the Leibniz identity of ``side`` (default: g's own side) over all basis triples."""
    side = side or g.side
    if side not in _LEIBNIZ_TERMS:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    entries = list(g.sc2.items())
    tables = {pos: _sparse.index_by(entries, pos) for pos in (0, 1)}
    acc: dict = {}
    for sign, rpos, out in _LEIBNIZ_TERMS[side]:
        _sparse.accumulate(acc, entries, 2, tables[rpos], out, sign)
    return ResidualReport(f"{side} Leibniz identity (form {g.form})", _sparse.prune(acc))


# Residual indices (X, Y, J, K) for delta[X,Y] - (actions on delta X, delta Y).
# l = delta entry (I, U, V), r = bracket entry.
_ACTIONS = {
    "r_left_X": (1, 0, lambda l, r: (l[0], r[1], r[2], l[2])),   # (ad_Y^r (x) 1) delta X
    "r_right_X": (2, 0, lambda l, r: (l[0], r[1], l[1], r[2])),  # (1 (x) ad_Y^r) delta X
    "l_left_Y": (1, 1, lambda l, r: (r[0], l[0], r[2], l[2])),   # (ad_X^l (x) 1) delta Y
    "l_right_Y": (2, 1, lambda l, r: (r[0], l[0], l[1], r[2])),  # (1 (x) ad_X^l) delta Y
}
_COCYCLE_ACTIONS = {
    7: ("l_left_Y", "r_left_X"),
    8: ("r_right_X", "r_left_X"),
    9: ("l_right_Y", "l_left_Y"),
    10: ("l_right_Y", "r_right_X"),
}


def delta_cocycle_residual(g: LeibnizAlgebra, delta, form: int) -> ResidualReport:
    """Residual of 1-cocycle ``form`` for ``delta`` on ``g`` over all basis pairs (X, Y).

    ``delta`` is a DeltaMap or a LeibnizAlgebra whose bracket is transposed.
    """
    if form not in COCYCLE_FORMS:
        raise ValueError(f"cocycle form must be one of {COCYCLE_FORMS}, got {form}")
    if isinstance(delta, LeibnizAlgebra):
        delta = DeltaMap.transpose_of(delta)
    if delta.dim != g.dim:
        raise StructuralError(f"dimension mismatch: {g.dim} vs {delta.dim}")
    brackets = list(g.sc2.items())
    d_entries = list(delta.entries.items())
    acc: dict = {}
    _sparse.accumulate(acc, brackets, 2, _sparse.index_by(d_entries, 0),
                       lambda l, r: (l[0], l[1], r[1], r[2]), +1)
    br_tables = {pos: _sparse.index_by(brackets, pos) for pos in (0, 1)}
    for name in _COCYCLE_ACTIONS[form]:
        dpos, bpos, out = _ACTIONS[name]
        _sparse.accumulate(acc, d_entries, dpos, br_tables[bpos], out, -1)
    return ResidualReport(f"1-cocycle form {form}", _sparse.prune(acc))


def bracket_dense(g: LeibnizAlgebra, I: int, J: int) -> list:
    """``[e_I, e_J]`` as a coordinate list (debugging aid)."""
    out = [Scalar.const(0)] * g.dim
    for K, v in g.bracket_basis(I, J).items():
        out[K - 1] = v
    return out
