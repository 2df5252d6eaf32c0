import random

import pytest
from hypothesis import given, settings

from conftest import oracle_cocycle, random_sc, sc_pair
from leibniz3.algebras import Algebra3, AlgebraKind, StructuralError
from leibniz3.bialgebra import (
    BialgebraPair,
    CocycleSystem,
    cocycle_residual_matrix,
    cocycle_residual_sc,
    cocycle_residual_tensor,
    gamma_of,
    pair_check,
)
from leibniz3.exactmath import Scalar
from leibniz3.structure import SC3, antisymmetrize

K = AlgebraKind
KINDS = {1: K.LEIBNIZ_FIRST, 2: K.LEIBNIZ_SECOND, 3: K.LEIBNIZ_THIRD}


def test_gamma_of_d1(fx):
    g = gamma_of(fx("d1_second"))
    assert g[1].is_zero()
    assert g[2].entries == {(1, 1, 1): Scalar.var("b")}
    assert g[3].entries == {(1, 1, 1): Scalar.var("a"), (1, 2, 1): Scalar.var("b")}


def test_gamma_of_db(fx):
    g = gamma_of(fx("db_lie_1"))
    assert g[1][(1, 2, 4)] == Scalar.var("b")
    assert g[1][(4, 2, 1)] == -Scalar.var("b")
    assert len(g[1].entries) == 6
    assert g[3][(3, 2, 4)] == Scalar.var("b")


@pytest.mark.parametrize("a,d", [
    ("a1", "d1_second"), ("a1", "d1_third"),
    ("a2", "d2_first"), ("a2", "d2_second"), ("a2", "d2_third"),
    ("l4", "db_lie_1"), ("l4", "db_lie_2"),
])
def test_printed_pairs_pass_symbolically(fx, a, d):
    rep = pair_check(BialgebraPair(fx(a), fx(d)))
    assert rep.passed, rep.render_text()


def test_a1_is_not_self_dual(fx):
    rep = pair_check(BialgebraPair(fx("a1"), fx("a1")))
    assert not rep.passed and rep.stage == "cocycle"
    assert rep.residuals[-1].count == 6


def test_zero_dual_always_passes(fx):
    for name in ("a1", "a2", "l4"):
        a = fx(name)
        assert pair_check(BialgebraPair(a, Algebra3(SC3(a.dim), a.kind))).passed


def test_kind_mismatch_and_dimension():
    with pytest.raises(StructuralError):
        BialgebraPair(Algebra3(SC3(2), K.LIE3), Algebra3(SC3(3), K.LIE3))
    rep = pair_check(BialgebraPair(Algebra3(SC3(2), K.LIE3), Algebra3(SC3(2), K.LEIBNIZ_FIRST)))
    assert not rep.passed and rep.stage == "kinds"


def test_lie_variant_requires_skew():
    bad = Algebra3(SC3(3, {(1, 1, 2, 3): 1}), K.LIE3)
    with pytest.raises(StructuralError):
        cocycle_residual_tensor(BialgebraPair(bad, Algebra3(SC3(3), K.LIE3)), "lie")
    rep = pair_check(BialgebraPair(bad, Algebra3(SC3(3), K.LIE3)))
    assert not rep.passed and "antisymmetry" in rep.stage


def test_nine_plus_one_systems():
    systems = CocycleSystem.all()
    assert len(systems) == 10
    assert [s.variant for s in systems[:9:3]] == [1, 2, 3]
    assert systems[-1].variant == "lie"
    with pytest.raises(StructuralError):
        CocycleSystem(K.LIE3, K.LEIBNIZ_FIRST)


@settings(max_examples=40, deadline=None)
@given(sc_pair(max_dim=3, max_nnz=5))
def test_sparse_residual_matches_oracle(pair):
    f, ft = pair
    for v in (1, 2, 3, "lie"):
        assert cocycle_residual_sc(f, ft, v) == oracle_cocycle(f, ft, v)


def _pair(f, ft, variant):
    kind = K.LIE3 if variant == "lie" else KINDS[variant]
    return BialgebraPair(Algebra3(f, kind), Algebra3(ft, kind))


@pytest.mark.property
@settings(max_examples=25, deadline=None)
@given(sc_pair(max_dim=3, max_nnz=5))
def test_matrix_form_matches_tensor_form(pair):
    f, ft = pair
    for v in (1, 2, 3):
        p = _pair(f, ft, v)
        assert cocycle_residual_matrix(p, v).entries == cocycle_residual_tensor(p, v).entries
    fa, fta = antisymmetrize(f), antisymmetrize(ft)
    p = _pair(fa, fta, "lie")
    assert cocycle_residual_matrix(p, "lie").entries == cocycle_residual_tensor(p, "lie").entries


@pytest.mark.property
@settings(max_examples=30, deadline=None)
@given(sc_pair(max_dim=3, max_nnz=5), sc_pair(max_dim=3, max_nnz=5))
def test_bilinearity(p1, p2):
    f, ft = p1
    g, gt = p2
    if f.dim != g.dim:
        return
    for v in (1, 2, 3, "lie"):
        lhs = cocycle_residual_sc(f, ft + gt, v)
        a, b = cocycle_residual_sc(f, ft, v), cocycle_residual_sc(f, gt, v)
        assert lhs == {k: x for k in set(a) | set(b) if (x := a.get(k, 0) + b.get(k, 0))}
        lhs = cocycle_residual_sc(f + g, ft, v)
        a, b = cocycle_residual_sc(f, ft, v), cocycle_residual_sc(g, ft, v)
        assert lhs == {k: x for k in set(a) | set(b) if (x := a.get(k, 0) + b.get(k, 0))}


def test_matrix_form_on_printed_pairs(fx):
    for a, d in [("a1", "d1_second"), ("a2", "d2_third"), ("l4", "db_lie_1")]:
        p = BialgebraPair(fx(a), fx(d))
        v = pair_check(p).details["variant"]
        assert cocycle_residual_matrix(p, v).is_zero


def test_lie_pair_fails_single_variants(fx):
    # the summed condition holds, each individual variant does not
    p = BialgebraPair(fx("l4"), fx("db_lie_1"))
    assert cocycle_residual_tensor(p, "lie").is_zero
    for v in (1, 2, 3):
        assert cocycle_residual_sc(p.a.sc, p.astar.sc, v)


def test_symbolic_scaling(fx):
    rng = random.Random(5)
    f = random_sc(rng, 3, 6)
    ft = fx("d1_second").sc
    r = cocycle_residual_sc(f, ft.scale(Scalar.var("c")), 1)
    base = cocycle_residual_sc(f, ft, 1)
    assert r == {k: v * Scalar.var("c") for k, v in base.items()}
