import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import sparse_sc
from leibniz3.exactmath import Scalar
from leibniz3.structure import (
    SC3,
    IndexError3,
    Matrix,
    antisymmetric_extension,
    antisymmetrize,
    is_antisymmetric,
    permutation_sign,
    slice_chi,
    slice_chi_prime,
    slice_Y,
    slice_Y_prime,
)


def test_sparse_zero_convention():
    t = SC3(2, {(1, 1, 1, 1): 0, (1, 2, 1, 2): "a"})
    assert t.nnz() == 1
    assert t[(2, 2, 2, 2)] == 0
    with pytest.raises(IndexError3):
        SC3(2, {(1, 1, 1, 3): 1})


def test_slices_read_the_right_axes():
    f = SC3(3, {(1, 2, 3, 1): 5})
    assert slice_chi(f, 1, 2).get(3, 1) == 5
    assert slice_chi_prime(f, 2, 1) == slice_chi(f, 1, 2)
    assert slice_Y(f, 1, 1).get(2, 3) == 5
    assert slice_Y_prime(f, 2, 1).get(1, 3) == 5


def test_matrix_product_and_transpose():
    A = Matrix.from_function(2, 3, lambda r, c: r + c)
    B = Matrix.from_function(3, 2, lambda r, c: r * c)
    C = A @ B
    assert C.get(1, 1) == sum((1 + k) * k for k in range(1, 4))
    assert (A @ B).T == B.T @ A.T


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((1, 2, 0)) == 1


@pytest.mark.property
@settings(max_examples=80, deadline=None)
@given(sparse_sc())
def test_antisymmetrizer_is_a_projector(f):
    p = antisymmetrize(f)
    assert is_antisymmetric(p)
    assert antisymmetrize(p) == p


@pytest.mark.property
@settings(max_examples=80, deadline=None)
@given(sparse_sc(), sparse_sc())
def test_antisymmetrizer_is_linear(f, g):
    if f.dim != g.dim:
        return
    assert antisymmetrize(f + g) == antisymmetrize(f) + antisymmetrize(g)
    assert antisymmetrize(f.scale(Fraction(-3, 2))) == antisymmetrize(f).scale(Fraction(-3, 2))


@pytest.mark.property
@settings(max_examples=50, deadline=None)
@given(sparse_sc())
def test_antisymmetrizer_kernel_contains_symmetric_part(f):
    # f + (f with first two lower indices swapped) is killed
    swapped = f.map_indices(lambda idx: (idx[1], idx[0], idx[2], idx[3]))
    assert antisymmetrize(f + swapped) == SC3(f.dim)


def test_extension_completes_orbits():
    t = antisymmetric_extension(SC3(4, {(2, 3, 4, 1): "b"}))
    assert t.nnz() == 6
    assert t[(4, 3, 2, 1)] == Scalar.parse("-b")
    assert is_antisymmetric(t)
    # the projector averages instead of completing
    assert antisymmetrize(SC3(4, {(2, 3, 4, 1): 6}))[(2, 3, 4, 1)] == 1


def test_extension_rejects_conflicts_and_repeats():
    with pytest.raises(ValueError):
        antisymmetric_extension(SC3(3, {(1, 2, 3, 1): 1, (2, 1, 3, 1): 1}))
    with pytest.raises(ValueError):
        antisymmetric_extension(SC3(3, {(1, 1, 2, 1): 1}))


def test_dense_roundtrip():
    f = SC3(2, {(1, 2, 1, 2): Fraction(3, 4), (2, 2, 2, 1): -1})
    scale, arr = f.to_dense()
    assert SC3.from_dense(arr, scale) == f
    assert all(isinstance(x, int) for x in arr.ravel())


def test_eval_and_variables():
    f = SC3(2, {(1, 1, 1, 1): "a", (1, 1, 1, 2): "a - b"})
    assert f.variables == frozenset("ab")
    assert f.eval({"a": 1, "b": 1}) == SC3(2, {(1, 1, 1, 1): 1})
    assert not f.is_numeric() and f.eval({"a": 0, "b": 0}).is_numeric()
