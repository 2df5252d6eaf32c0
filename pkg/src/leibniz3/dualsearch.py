"""Search for dual tensors compatible with a fixed algebra.

The cocycle equations are linear in the dual tensor, so the first stage is
an exact nullspace. The dual's own fundamental identity is quadratic and is
reported as constraints on the family parameters, then solved by grid
enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from . import kernels
from .algebras import Algebra3, AlgebraKind, StructuralError, fi_residual_sc
from .bialgebra import CocycleSystem
from .exactmath import Scalar, _grlex_key, as_scalar
from .structure import SC3

__all__ = [
    "LinearSystem",
    "LinearFamily",
    "DimensionCapExceeded",
    "DEFAULT_GRID",
    "DEFAULT_MAX_DIM",
    "assemble_cocycle_system",
    "nullspace",
    "quadratic_constraints",
    "verify_member",
    "grid_search",
    "solve_family",
]

DEFAULT_GRID = (-2, -1, 0, 1, 2)
DEFAULT_MAX_DIM = 8


class DimensionCapExceeded(ValueError):
    pass


@dataclass
class LinearSystem:
    """Rows of integer coefficients over ``unknowns``.

    An unknown is either a full index ``(j, k, m, p)`` or, for 3-Lie duals,
    a sorted triple ``j < k < m`` with ``p`` standing for all six signed
    permutations.
    """

    dim: int
    unknowns: list
    rows: list = field(default_factory=list)  # list of {column: int}
    skew: bool = False

    def tensor_of(self, values) -> SC3:
        """The SC3 whose unknowns take ``values`` (same order as ``unknowns``)."""
        entries: dict = {}
        for (j, k, m, p), v in zip(self.unknowns, values):
            v = as_scalar(v)
            if not v:
                continue
            if self.skew:
                for perm, sign in _signed_perms((j, k, m)):
                    entries[(*perm, p)] = v if sign > 0 else -v
            else:
                entries[(j, k, m, p)] = v
        return SC3(self.dim, entries)

    def coordinates_of(self, t: SC3) -> list:
        return [t[u] for u in self.unknowns]


@dataclass
class LinearFamily:
    system: LinearSystem
    basis: list  # list of SC3
    parameters: list
    constraints: list = field(default_factory=list)  # list of Scalar, quadratic in parameters
    vectors: list = field(default_factory=list)  # coordinate vectors of the basis (Fractions)
    pivots: list = field(default_factory=list)  # free columns; basis r has 1 at pivots[r]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def member(self, values) -> SC3:
        out = SC3(self.system.dim)
        for v, b in zip(values, self.basis):
            out = out + b.scale(v)
        return out

    def generic_member(self) -> SC3:
        return self.member([Scalar.var(p) for p in self.parameters])


def _signed_perms(idx):
    for perm in itertools.permutations(range(3)):
        inv = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b])
        yield tuple(idx[x] for x in perm), (-1 if inv % 2 else 1)


def _integer_tensor(sc: SC3):
    if not sc.is_numeric():
        raise StructuralError("dual search needs a parameter-free algebra; "
                              f"found parameters {sorted(sc.variables)}")
    return sc.to_dense()[1]


def assemble_cocycle_system(a: Algebra3, astar_kind: AlgebraKind, backend=None) -> LinearSystem:
    system = CocycleSystem(a.kind, astar_kind)
    n = a.dim
    F = _integer_tensor(a.sc)
    variant = system.variant
    M = kernels.cocycle_operator(F, 0 if variant == "lie" else variant, backend=backend)
    rng = range(1, n + 1)
    full = list(itertools.product(rng, repeat=4))
    if variant == "lie":
        unknowns = [(j, k, m, p) for j, k, m in itertools.combinations(rng, 3) for p in rng]
        cols = np.zeros((M.shape[0], len(unknowns)), dtype=object)
        for c, (j, k, m, p) in enumerate(unknowns):
            for perm, sign in _signed_perms((j - 1, k - 1, m - 1)):
                src = ((perm[0] * n + perm[1]) * n + perm[2]) * n + (p - 1)
                cols[:, c] += sign * M[:, src].astype(object)
        M = cols
    else:
        unknowns = full
    rows = []
    seen = set()
    for r in range(M.shape[0]):
        nz = {c: int(x) for c, x in enumerate(M[r]) if x}
        if not nz:
            continue
        g = 0
        for x in nz.values():
            g = gcd(g, x)
        first = nz[min(nz)]
        if first < 0:
            g = -g
        key = tuple(sorted((c, x // g) for c, x in nz.items()))
        if key in seen:
            continue
        seen.add(key)
        rows.append(dict(key))
    return LinearSystem(n, unknowns, rows, skew=(variant == "lie"))


def _rref(rows: list, ncols: int):
    """Reduced row echelon form over Q. Returns (pivot columns, reduced rows as dicts)."""
    reduced: dict = {}  # pivot column -> row dict with 1 at pivot
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v}
        for pc in sorted(reduced):
            coef = row.get(pc)
            if coef:
                for c, v in reduced[pc].items():
                    nv = row.get(c, 0) - coef * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        pc = min(row)
        inv = 1 / row[pc]
        row = {c: v * inv for c, v in row.items()}
        for other in reduced.values():
            coef = other.get(pc)
            if coef:
                for c, v in row.items():
                    nv = other.get(c, 0) - coef * v
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        reduced[pc] = row
    return sorted(reduced), reduced


def nullspace(sys: LinearSystem, prefix: str = "t") -> LinearFamily:
    ncols = len(sys.unknowns)
    pivots, reduced = _rref(sys.rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    vectors = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for pc in pivots:
            coef = reduced[pc].get(fc)
            if coef:
                vec[pc] = -coef
        vectors.append(vec)
    basis = [sys.tensor_of(v) for v in vectors]
    params = [f"{prefix}{r + 1}" for r in range(len(basis))]
    return LinearFamily(sys, basis, params, [], vectors, free)


def _normalize_poly(p: Scalar) -> Scalar:
    """Scale to integer coefficients with positive leading term (grlex-first)."""
    terms = p.terms
    den = 1
    for v in terms.values():
        den = lcm(den, v.denominator)
    g = 0
    for v in terms.values():
        g = gcd(g, int(v * den))
    lead = terms[min(terms, key=_grlex_key)]
    factor = Fraction(den, g) * (-1 if lead < 0 else 1)
    return p * Scalar.const(factor)


def quadratic_constraints(family: LinearFamily, astar_kind: AlgebraKind) -> LinearFamily:
    """Attach the dual fundamental identity, expressed in the family parameters."""
    if not family.basis:
        family.constraints = []
        return family
    generic = family.generic_member()
    residual = fi_residual_sc(generic, astar_kind.identity_slot)
    seen = {}
    for idx in sorted(residual):
        p = _normalize_poly(residual[idx])
        key = str(p)
        if key not in seen:
            seen[key] = p
    family.constraints = [seen[k] for k in sorted(seen, key=lambda s: (len(s), s))]
    return family


@dataclass
class Membership:
    assignment: dict | None
    reason: str = ""

    def __bool__(self):
        return self.assignment is not None


def verify_member(family: LinearFamily, candidate: SC3) -> Membership:
    """Coordinates of ``candidate`` in the family, if it lies there and meets the constraints."""
    sys = family.system
    if candidate.dim != sys.dim:
        raise StructuralError("dimension mismatch")
    if sys.skew:
        recon = sys.tensor_of(sys.coordinates_of(candidate))
        if recon != candidate:
            return Membership(None, "candidate is not skew in its lower indices")
    coords = sys.coordinates_of(candidate)
    values = [coords[c] for c in family.pivots]
    if family.member(values) != candidate:
        diff = family.member(values) - candidate
        idx = next(iter(diff))
        return Membership(None, f"candidate leaves the linear family at entry {idx}")
    assignment = dict(zip(family.parameters, values))
    for q in family.constraints:
        v = q.eval(assignment)
        if v:
            return Membership(None, f"constraint {q} = 0 fails (value {v})")
    return Membership(assignment)


def _quadratic_matrix(q: Scalar, params: list):
    """Integer symmetric-ish matrix Q with q(t) = t^T Q t (q homogeneous of degree 2)."""
    pos = {p: i for i, p in enumerate(params)}
    d = len(params)
    Q = [[Fraction(0)] * d for _ in range(d)]
    for mono, coef in q.terms.items():
        names = [name for name, e in mono for _ in range(e)]
        if len(names) != 2:
            raise ValueError(f"constraint {q} is not homogeneous quadratic")
        a, b = pos[names[0]], pos[names[1]]
        Q[a][b] += coef
    den = 1
    for row in Q:
        for v in row:
            den = lcm(den, v.denominator)
    return [[int(v * den) for v in row] for row in Q]


def grid_search(family: LinearFamily, grid=DEFAULT_GRID, max_dim: int = DEFAULT_MAX_DIM,
                backend=None) -> list:
    """Members whose parameters come from ``grid`` and satisfy all constraints, lexicographic in t."""
    d = family.dimension
    if d > max_dim:
        raise DimensionCapExceeded(f"family dimension {d} exceeds the cap {max_dim}")
    grid = [Fraction(g) for g in grid]
    den = 1
    for g in grid:
        den = lcm(den, g.denominator)
    int_grid = [int(g * den) for g in grid]
    if family.constraints:
        Q = np.array([_quadratic_matrix(q, family.parameters) for q in family.constraints],
                     dtype=object).reshape(len(family.constraints), d, d)
    else:
        Q = np.zeros((0, d, d), dtype=object)
    points = kernels.grid_zero_points(Q, int_grid, backend=backend)
    return [family.member([grid[i] for i in idx]) for idx in points]


def solve_family(a: Algebra3, astar_kind: AlgebraKind, backend=None) -> LinearFamily:
    """Linear family plus quadratic constraints in one call."""
    family = nullspace(assemble_cocycle_system(a, astar_kind, backend=backend))
    return quadratic_constraints(family, astar_kind)
