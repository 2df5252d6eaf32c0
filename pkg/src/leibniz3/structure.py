"""Structure-constant tensors and the index slices used by the matrix forms.

All indices are 1-based. An :class:`SC3` of dimension ``n`` stores
``f[i, j, k, m]`` for ``[e_i, e_j, e_k] = f[i, j, k, m] e_m``. A dual
algebra uses the same container with ``(j, k, m, p)`` holding the
dual constant with upper indices ``j, k, m`` and lower index ``p``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterator, Mapping

from .exactmath import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "IndexError3",
    "SC3",
    "Matrix",
    "Tensor3Element",
    "slice_chi",
    "slice_chi_prime",
    "slice_Y",
    "slice_Y_prime",
    "antisymmetrize",
    "antisymmetric_extension",
    "is_antisymmetric",
    "permutation_sign",
]


class IndexError3(IndexError):
    """An index outside ``1..dim``."""


def permutation_sign(perm) -> int:
    perm = list(perm)
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


_S3 = [(p, permutation_sign(p)) for p in itertools.permutations(range(3))]


def _check_index(dim: int, *idx: int) -> None:
    for i in idx:
        if not (isinstance(i, int) and 1 <= i <= dim):
            raise IndexError3(f"index {i} outside 1..{dim}")


class SC3:
    """Sparse rank-4 structure-constant tensor. Absent entries are zero."""

    __slots__ = ("dim", "_entries")

    def __init__(self, dim: int, entries: Mapping[tuple, object] | None = None):
        if not isinstance(dim, int) or dim < 0:
            raise ValueError(f"dimension must be a nonnegative integer, got {dim!r}")
        self.dim = dim
        clean = {}
        for idx, value in (entries or {}).items():
            idx = tuple(idx)
            if len(idx) != 4:
                raise IndexError3(f"expected 4 indices, got {idx}")
            _check_index(dim, *idx)
            value = as_scalar(value)
            if value:
                clean[idx] = value
        self._entries = clean

    @classmethod
    def _raw(cls, dim: int, entries: dict) -> "SC3":
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._entries = entries
        return obj

    @classmethod
    def zero(cls, dim: int) -> "SC3":
        return cls(dim)

    def __getitem__(self, idx) -> Scalar:
        return self._entries.get(tuple(idx), ZERO)

    def items(self):
        return self._entries.items()

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def nnz(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator:
        return iter(sorted(self._entries))

    def __eq__(self, other):
        return isinstance(other, SC3) and self.dim == other.dim and self._entries == other._entries

    def __hash__(self):
        return hash((self.dim, frozenset(self._entries.items())))

    def __repr__(self):
        body = ", ".join(f"{idx}: {v}" for idx, v in sorted(self._entries.items()))
        return f"SC3(dim={self.dim}, {{{body}}})"

    # -- linear structure --------------------------------------------
    def __add__(self, other: "SC3") -> "SC3":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = dict(self._entries)
        for idx, v in other._entries.items():
            s = out.get(idx, ZERO) + v
            if s:
                out[idx] = s
            else:
                out.pop(idx, None)
        return SC3._raw(self.dim, out)

    def __neg__(self):
        return SC3._raw(self.dim, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SC3":
        c = as_scalar(c)
        out = {}
        for k, v in self._entries.items():
            p = v * c
            if p:
                out[k] = p
        return SC3._raw(self.dim, out)

    def eval(self, assignment) -> "SC3":
        return SC3(self.dim, {k: v.eval(assignment) for k, v in self._entries.items()})

    def map_indices(self, fn) -> "SC3":
        """Tensor with entry ``fn(idx)`` receiving the value at ``idx``."""
        return SC3(self.dim, {fn(k): v for k, v in self._entries.items()})

    # -- numeric view -------------------------------------------------
    @property
    def variables(self) -> frozenset:
        out = set()
        for v in self._entries.values():
            out |= v.variables
        return frozenset(out)

    def is_numeric(self) -> bool:
        return all(v.is_constant() for v in self._entries.values())

    def integer_scaled(self):
        """Return ``(scale, ints)``: ``self == ints / scale`` with integer entries."""
        values = {k: v.to_rational() for k, v in self._entries.items()}
        scale = lcm(*(q.denominator for q in values.values())) if values else 1
        return scale, {k: int(q * scale) for k, q in values.items()}

    def to_dense(self):
        """Dense ``(scale, ndarray)`` view with 0-based axes; requires numeric entries."""
        import numpy as np

        scale, ints = self.integer_scaled()
        n = self.dim
        arr = np.zeros((n, n, n, n), dtype=object)
        for (i, j, k, m), v in ints.items():
            arr[i - 1, j - 1, k - 1, m - 1] = v
        return scale, arr

    @classmethod
    def from_dense(cls, arr, scale: int = 1) -> "SC3":
        n = arr.shape[0]
        entries = {}
        for idx in itertools.product(range(n), repeat=4):
            v = arr[idx]
            if v:
                entries[tuple(i + 1 for i in idx)] = Scalar.const(Fraction(int(v), scale))
        return cls._raw(n, entries)


@dataclass(frozen=True)
class Matrix:
    """Dense matrix of Scalars, 1-based access through :meth:`get`."""

    rows: int
    cols: int
    data: tuple = field(repr=False)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def from_function(cls, rows: int, cols: int, fn) -> "Matrix":
        return cls(rows, cols, tuple(tuple(as_scalar(fn(r, c)) for c in range(1, cols + 1))
                                     for r in range(1, rows + 1)))

    def get(self, r: int, c: int) -> Scalar:
        return self.data[r - 1][c - 1]

    def nonzero(self) -> dict:
        return {(r + 1, c + 1): v for r, row in enumerate(self.data)
                for c, v in enumerate(row) if v}

    def is_zero(self) -> bool:
        return all(not v for row in self.data for v in row)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else
                      tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for r in range(self.rows):
            row = self.data[r]
            out_row = []
            for c in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a = row[k]
                    if a:
                        b = other.data[k][c]
                        if b:
                            acc = acc + a * b
                out_row.append(acc)
            out.append(tuple(out_row))
        return Matrix(self.rows, other.cols, tuple(out))

    def _zip(self, other, op) -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, tuple(
            tuple(op(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.data, other.data)))

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        if not c:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix(self.rows, self.cols, tuple(tuple(v * c for v in row) for row in self.data))

    def __str__(self):
        return "\n".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.data)


class Tensor3Element:
    """Element of the triple tensor power, entries ``(j, k, m) -> Scalar``."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Mapping[tuple, object] | None = None):
        self.dim = dim
        clean = {}
        for idx, v in (entries or {}).items():
            _check_index(dim, *idx)
            v = as_scalar(v)
            if v:
                clean[tuple(idx)] = v
        self.entries = clean

    def __getitem__(self, idx) -> Scalar:
        return self.entries.get(tuple(idx), ZERO)

    def __eq__(self, other):
        return isinstance(other, Tensor3Element) and self.dim == other.dim and self.entries == other.entries

    def is_zero(self) -> bool:
        return not self.entries

    def __repr__(self):
        terms = " + ".join(f"({v}) e{j}(x)e{k}(x)e{m}" for (j, k, m), v in sorted(self.entries.items()))
        return f"Tensor3Element({terms or '0'})"


# -- slices -------------------------------------------------------------

def slice_chi(f: SC3, i: int, s: int) -> Matrix:
    """Row n, column p holds ``f[i, s, n, p]``."""
    _check_index(f.dim, i, s)
    return Matrix.from_function(f.dim, f.dim, lambda n, p: f[i, s, n, p])


def slice_chi_prime(f: SC3, s: int, i: int) -> Matrix:
    """Primed slice: first two lower indices swapped, so it equals ``slice_chi(f, i, s)``."""
    _check_index(f.dim, s, i)
    return slice_chi(f, i, s)


def slice_Y(f: SC3, i: int, p: int) -> Matrix:
    """Row s, column n holds ``f[i, s, n, p]``."""
    _check_index(f.dim, i, p)
    return Matrix.from_function(f.dim, f.dim, lambda s, n: f[i, s, n, p])


def slice_Y_prime(f: SC3, s: int, p: int) -> Matrix:
    """Row i, column n holds ``f[i, s, n, p]``."""
    _check_index(f.dim, s, p)
    return Matrix.from_function(f.dim, f.dim, lambda i, n: f[i, s, n, p])


# -- antisymmetry -------------------------------------------------------

_SIXTH = Scalar.const(Fraction(1, 6))


def antisymmetrize(f: SC3) -> SC3:
    """Projector onto tensors skew in the three lower indices."""
    acc: dict = {}
    for (i, j, k, m), v in f.items():
        idx = (i, j, k)
        for perm, sign in _S3:
            # g[idx] receives sign(perm) * f[idx permuted]; scatter from f's side
            target = [0, 0, 0]
            for pos, src in enumerate(perm):
                target[src] = idx[pos]
            key = (*target, m)
            acc[key] = acc.get(key, ZERO) + (v if sign > 0 else -v)
    return SC3(f.dim, {k: v * _SIXTH for k, v in acc.items() if v})


def antisymmetric_extension(f: SC3) -> SC3:
    """Complete listed entries by skew symmetry (no 1/6 weighting).

    Entries that conflict with each other under permutation raise ``ValueError``.
    """
    out: dict = {}
    for (i, j, k, m), v in sorted(f.items()):
        idx = (i, j, k)
        for perm, sign in _S3:
            key = (idx[perm[0]], idx[perm[1]], idx[perm[2]], m)
            val = v if sign > 0 else -v
            if len({i, j, k}) < 3:
                raise ValueError(f"entry {(i, j, k, m)} has a repeated lower index; "
                                 "a skew tensor must vanish there")
            prev = out.get(key)
            if prev is not None and prev != val:
                raise ValueError(f"conflicting entries for {key}: {prev} vs {val}")
            out[key] = val
    return SC3(f.dim, out)


def is_antisymmetric(f: SC3) -> bool:
    for (i, j, k, m), v in f.items():
        idx = (i, j, k)
        for perm, sign in _S3:
            other = f[(idx[perm[0]], idx[perm[1]], idx[perm[2]], m)]
            if other != (v if sign > 0 else -v):
                return False
    return True


def basis_vector_tensor(dim: int, idx: tuple, value=ONE) -> SC3:
    return SC3(dim, {idx: value})
