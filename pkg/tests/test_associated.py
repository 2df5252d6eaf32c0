import itertools
import random

import pytest
from hypothesis import given, settings

from conftest import random_sc, sparse_sc
from leibniz3.algebras import Algebra3, AlgebraKind, StructuralError, Vector, bracket
from leibniz3.associated import (
    DeltaMap,
    LeibnizAlgebra,
    _associated_sc,
    associated,
    decode_pair,
    delta_cocycle_residual,
    encode_pair,
    leibniz_residual,
)
from leibniz3.structure import SC3

K = AlgebraKind


def oracle_pair_bracket(alg, form, a, b, c, d):
    """[e_a (x) e_b, e_c (x) e_d] as {(p, q): coeff}, from ternary brackets of vectors."""
    n = alg.dim
    e = lambda i: Vector.basis(n, i)
    out = {}

    def add(vec, other, left):
        for p in range(1, n + 1):
            v = vec[p]
            if v:
                key = (p, other) if left else (other, p)
                out[key] = out.get(key, 0) + v

    if form == 1:
        add(bracket(alg, e(a), e(c), e(d)), b, True)
        add(bracket(alg, e(b), e(c), e(d)), a, False)
    elif form == 21:
        add(bracket(alg, e(a), e(c), e(b)), d, True)
        add(bracket(alg, e(a), e(d), e(b)), c, False)
    elif form == 22:
        add(bracket(alg, e(c), e(a), e(d)), b, True)
        add(bracket(alg, e(c), e(b), e(d)), a, False)
    else:
        add(bracket(alg, e(a), e(b), e(c)), d, True)
        add(bracket(alg, e(a), e(b), e(d)), c, False)
    return {k: v for k, v in out.items() if v}


def test_pair_encoding_roundtrip():
    for n in (1, 2, 4):
        seen = set()
        for i, j in itertools.product(range(1, n + 1), repeat=2):
            idx = encode_pair(i, j, n)
            assert decode_pair(idx, n) == (i, j)
            seen.add(idx)
        assert seen == set(range(1, n * n + 1))


def test_a1_form1_example(fx):
    g = associated(fx("a1"), 1)
    # [e2 (x) e1, e3 (x) e3] = e1 (x) e1
    assert g.bracket_basis(encode_pair(2, 1, 3), encode_pair(3, 3, 3)) == {encode_pair(1, 1, 3): 1}
    assert g.side == "right"


def test_l4_form3_example(fx):
    l4 = fx("l4")
    g = associated(l4, 3)
    got = g.bracket_basis(encode_pair(2, 3, 4), encode_pair(4, 1, 4))
    want = {encode_pair(p, q, 4): v for (p, q), v in oracle_pair_bracket(l4, 3, 2, 3, 4, 1).items()}
    assert got == want
    assert got[encode_pair(1, 1, 4)] == 1


@pytest.mark.parametrize("form", [1, 21, 22, 3])
def test_brackets_match_vector_oracle(form):
    rng = random.Random(form)
    f = random_sc(rng, 3, 8)
    g = _associated_sc(f, form)
    alg = Algebra3(f, K.LEIBNIZ_FIRST)
    for a, b, c, d in itertools.product(range(1, 4), repeat=4):
        want = {encode_pair(p, q, 3): v for (p, q), v in oracle_pair_bracket(alg, form, a, b, c, d).items()}
        assert g.bracket_basis(encode_pair(a, b, 3), encode_pair(c, d, 3)) == want


@pytest.mark.parametrize("name,form", [("a1", 1), ("a2", 1), ("l4", 3)])
def test_associated_leibniz_identity(fx, name, form):
    assert leibniz_residual(associated(fx(name), form)).is_zero


def test_inadmissible_forms(fx):
    with pytest.raises(StructuralError):
        associated(fx("a1"), 3)
    with pytest.raises(StructuralError):
        associated(fx("l4"), 1)
    with pytest.raises(ValueError):
        associated(fx("a1"), 2)


def test_forced_wrong_form_breaks_identity(fx):
    # A1 is first kind only; its form-3 and form-21 products are not Leibniz
    assert not leibniz_residual(_associated_sc(fx("a1").sc, 3)).is_zero
    assert not leibniz_residual(_associated_sc(fx("a1").sc, 21)).is_zero


def test_zero_algebra():
    g = associated(Algebra3(SC3(2), K.LEIBNIZ_SECOND), 21)
    assert g.sc2 == {} and leibniz_residual(g).is_zero


@settings(max_examples=40, deadline=None)
@given(sparse_sc(max_dim=2), sparse_sc(max_dim=2))
def test_associated_is_linear(f, g):
    if f.dim != g.dim:
        return
    for form in (1, 21, 22, 3):
        lhs = _associated_sc(f + g, form).sc2
        a, b = _associated_sc(f, form).sc2, _associated_sc(g, form).sc2
        both = {k: a.get(k, 0) + b.get(k, 0) for k in set(a) | set(b)}
        assert lhs == {k: v for k, v in both.items() if v}


def _brute_cocycle(g, delta, form):
    """Basis-level 1-cocycle check with explicit left/right actions."""
    N = g.dim
    br = lambda X, Y: g.bracket_basis(X, Y)
    d = lambda X: delta.image(X)
    bad = {}
    for X, Y in itertools.product(range(1, N + 1), repeat=2):
        acc = {}
        for P, c in br(X, Y).items():
            for (J, Kk), v in d(P).items():
                acc[(J, Kk)] = acc.get((J, Kk), 0) + c * v

        def act(T, Z, pos, side):
            for (U, V), cv in T.items():
                W = U if pos == 0 else V
                res = br(W, Z) if side == "r" else br(Z, W)
                for R, w in res.items():
                    key = (R, V) if pos == 0 else (U, R)
                    acc[key] = acc.get(key, 0) - cv * w

        if form == 7:
            act(d(Y), X, 0, "l"); act(d(X), Y, 0, "r")
        elif form == 8:
            act(d(X), Y, 1, "r"); act(d(X), Y, 0, "r")
        elif form == 9:
            act(d(Y), X, 1, "l"); act(d(Y), X, 0, "l")
        else:
            act(d(Y), X, 1, "l"); act(d(X), Y, 1, "r")
        for (J, Kk), v in acc.items():
            if v:
                bad[(X, Y, J, Kk)] = v
    return bad


@pytest.mark.parametrize("form", [7, 8, 9, 10])
def test_cocycle_residual_matches_brute_force(form):
    rng = random.Random(10 + form)
    g = _associated_sc(random_sc(rng, 2, 5), 1)
    delta = DeltaMap(4, {tuple(rng.randint(1, 4) for _ in range(3)): rng.choice([-1, 1, 2])
                         for _ in range(6)})
    assert delta_cocycle_residual(g, delta, form).entries == _brute_cocycle(g, delta, form)


def test_cocycle_trivial_cases(fx):
    g = associated(fx("a1"), 1)
    zero = LeibnizAlgebra(3, 1)
    for form in (7, 8, 9, 10):
        assert delta_cocycle_residual(g, zero, form).is_zero
        assert delta_cocycle_residual(zero, DeltaMap(9, {(1, 2, 3): 1}), form).is_zero
    with pytest.raises(ValueError):
        delta_cocycle_residual(g, zero, 6)
    with pytest.raises(StructuralError):
        delta_cocycle_residual(g, DeltaMap(4), 8)


def test_transpose_delta():
    gs = LeibnizAlgebra(2, 1, {(1, 2, 3): 5})
    assert DeltaMap.transpose_of(gs).entries == {(3, 1, 2): 5}
