"""Built-in worked examples and the verification battery run on each."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebras import Algebra3, AlgebraKind, check
from .bialgebra import BialgebraPair, pair_check
from .correspondence import cases_for, verify_correspondence
from .dualsearch import grid_search, solve_family, verify_member
from .fileio import load_fixture
from .reports import Report

__all__ = ["Example", "EXAMPLES", "run_example", "fixture_algebra"]


@dataclass(frozen=True)
class Example:
    example_id: str
    title: str
    algebra: str
    duals: tuple  # fixture names
    # parameter assignments used for membership and correspondence checks
    samples: tuple = ({"a": 1, "b": 1},)
    grid: tuple = ()
    grid_max_dim: int = 8
    notes: tuple = field(default_factory=tuple)


_ONES = {k: 1 for k in "abcdfghm"}
_OTHER = {"a": 2, "b": -3, "c": 5, "d": 7, "m": -1, "f": 2, "g": 3, "h": 4}

EXAMPLES = {
    "ex4-1": Example("ex4-1", "three-dimensional first-kind algebra A1 with two dual families",
                     "a1", ("d1_second", "d1_third"), (_ONES, _OTHER)),
    "ex4-2": Example("ex4-2", "three-dimensional first-kind algebra A2 with three dual families",
                     "a2", ("d2_first", "d2_second", "d2_third"), (_ONES, _OTHER)),
    "ex6-1": Example("ex6-1", "four-dimensional 3-Lie algebra L4 with two dual families",
                     "l4", ("db_lie_1", "db_lie_2"), (_ONES, {"b": -2}),
                     grid=(-1, 0, 1), grid_max_dim=9,
                     notes=("the 3-Lie dual family has dimension 9, so the grid cap is raised to 9",)),
}


def fixture_algebra(name: str) -> Algebra3:
    return load_fixture(name).to_algebra()


def _restrict(sample: dict, alg: Algebra3) -> dict:
    names = alg.sc.variables
    return {k: v for k, v in sample.items() if k in names}


def run_example(example_id: str) -> tuple:
    """Return ``(battery, extras)``: reports deciding pass/fail, and informational reports."""
    if example_id not in EXAMPLES:
        raise KeyError(f"unknown example {example_id!r}; known: {', '.join(EXAMPLES)}")
    ex = EXAMPLES[example_id]
    a = fixture_algebra(ex.algebra)
    battery = [check(a)]
    extras = []
    families = {}
    for dual_name in ex.duals:
        dual = fixture_algebra(dual_name)
        pair = BialgebraPair(a, dual)
        battery.append(pair_check(pair))

        kind = dual.kind
        if kind not in families:
            families[kind] = solve_family(a, kind)
        fam = families[kind]
        printed_params = len(dual.sc.variables)
        for sample in ex.samples:
            sub = _restrict(sample, dual)
            member = verify_member(fam, dual.sc.eval(sub))
            battery.append(Report(
                f"membership of {dual.name} at {_fmt_assign(sub)}", bool(member),
                stage="" if member else "dual search", message=member.reason,
                details={"family_dimension": fam.dimension, "printed_parameters": printed_params,
                         "constraints": len(fam.constraints)}))

        if ex.grid:
            sols = grid_search(fam, ex.grid, max_dim=ex.grid_max_dim)
            target = dual.sc.eval({k: 1 for k in dual.sc.variables})
            hit = target in sols
            battery.append(Report(
                f"grid search rediscovers {dual.name} at all parameters 1", hit,
                stage="" if hit else "grid search",
                details={"grid": list(ex.grid), "solutions": len(sols),
                         "family_dimension": fam.dimension}))

        for case in cases_for(a.kind, kind):
            sub = {k: 1 for k in dual.sc.variables}
            rep = verify_correspondence(pair.eval(sub), case)
            rep.name = f"{rep.name} with {dual.name} at parameters 1 (informational)"
            extras.append(rep)
    return battery, extras


def _fmt_assign(sub: dict) -> str:
    if not sub:
        return "(no parameters)"
    return ", ".join(f"{k}={v}" for k, v in sorted(sub.items()))
