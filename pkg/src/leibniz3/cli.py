"""Command-line interface.

Exit codes: 0 pass, 1 identity or compatibility failure, 2 parse or
structural error, 3 dimension cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import catalog, fileio
from .algebras import Algebra3, AlgebraKind, StructuralError, check
from .bialgebra import BialgebraPair, pair_check
from .correspondence import case_by_id, cases_for, search_recipes, verify_correspondence
from .dualsearch import (
    DEFAULT_GRID,
    DEFAULT_MAX_DIM,
    DimensionCapExceeded,
    grid_search,
    solve_family,
    verify_member,
)
from .exactmath import ScalarParseError
from .reports import REPORT_LIMIT, Report

EXIT_PASS, EXIT_FAIL, EXIT_ERROR, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load(path: str, antisymmetrize: bool = False) -> Algebra3:
    return fileio.load(path, antisymmetrize=antisymmetrize).to_algebra()


def _parse_grid(text: str) -> list:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad grid {text!r}; expected comma-separated rationals such as -1,0,1/2") from None


def _parse_assign(text: str | None) -> dict:
    if not text:
        return {}
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"bad assignment {part!r}; expected name=value")
        name, value = part.split("=", 1)
        try:
            out[name.strip()] = Fraction(value.strip())
        except ValueError:
            raise UsageError(f"bad value in {part!r}") from None
    return out


class Output:
    def __init__(self, fmt: str, limit: int, stream=None):
        self.fmt = fmt
        self.limit = limit
        self.stream = stream or sys.stdout
        self.items = []

    def report(self, rep: Report):
        if self.fmt == "structured":
            self.items.append(rep.to_dict(self.limit))
        else:
            print(rep.render_text(self.limit), file=self.stream)

    def info(self, key: str, value):
        if self.fmt == "structured":
            self.items.append({key: value})
        else:
            if isinstance(value, list):
                print(f"{key}:", file=self.stream)
                for v in value:
                    print(f"  {v}", file=self.stream)
            else:
                print(f"{key}: {value}", file=self.stream)

    def finish(self, status: str):
        if self.fmt == "structured":
            json.dump({"status": status, "items": self.items}, self.stream, indent=2)
            self.stream.write("\n")
        else:
            print(f"overall: {status.upper()}", file=self.stream)


def cmd_check(args, out: Output) -> int:
    alg = _load(args.file, args.antisymmetrize)
    if args.kind:
        alg = alg.with_kind(AlgebraKind.parse(args.kind))
    rep = check(alg)
    out.report(rep)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_pair_check(args, out: Output) -> int:
    a = _load(args.algebra, args.antisymmetrize)
    d = _load(args.dual, args.antisymmetrize)
    rep = pair_check(BialgebraPair(a, d))
    out.report(rep)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_dual_search(args, out: Output) -> int:
    a = _load(args.algebra, args.antisymmetrize)
    kind = AlgebraKind.parse(args.dual_kind)
    grid = _parse_grid(args.grid) if args.grid else list(DEFAULT_GRID)
    fam = solve_family(a, kind)
    out.info("family_dimension", fam.dimension)
    out.info("linear_equations", len(fam.system.rows))
    out.info("basis", [f"{p}: {_fmt_sc(b)}" for p, b in zip(fam.parameters, fam.basis)])
    out.info("constraints", [f"{q} = 0" for q in fam.constraints])

    status = True
    for path in args.member or []:
        cand = fileio.load(path, antisymmetrize=args.antisymmetrize).to_algebra()
        sc = cand.sc.eval(_parse_assign(args.assign))
        res = verify_member(fam, sc)
        out.report(Report(f"membership of {cand.name or path}", bool(res),
                          stage="" if res else "dual search", message=res.reason,
                          details={"assignment": {k: str(v) for k, v in (res.assignment or {}).items()}}))
        status = status and bool(res)

    sols = grid_search(fam, grid, max_dim=args.max_dim)
    out.info("grid", [str(g) for g in grid])
    out.info("grid_solutions", len(sols))
    if args.output:
        outdir = Path(args.output)
        outdir.mkdir(parents=True, exist_ok=True)
        for n, sol in enumerate(sols, 1):
            alg = Algebra3(sol, kind, f"{a.name or 'A'} dual {n}")
            fileio.save(fileio.AlgebraFile.from_algebra(alg), outdir / f"solution_{n:04d}.json")
        out.info("written", str(outdir))
    return EXIT_PASS if status else EXIT_FAIL


def cmd_correspondence(args, out: Output) -> int:
    a = _load(args.algebra, args.antisymmetrize)
    d = _load(args.dual, args.antisymmetrize)
    pair = BialgebraPair(a, d)
    assign = _parse_assign(args.assign)
    if assign:
        pair = pair.eval(assign)
    if args.case:
        case = case_by_id(args.case)
        cases = [case]
    else:
        cases = cases_for(a.kind, d.kind)
        if not cases:
            raise UsageError(f"no case for kinds ({a.kind.value}, {d.kind.value})")
    ok = True
    for case in cases:
        rep = verify_correspondence(pair, case)
        out.report(rep)
        ok = ok and rep.passed
        if args.search and case.provenance != "printed":
            res = search_recipes(case, witnesses=[("input pair", pair)])
            out.info(f"recipe search for {case.case_id}",
                     res.found.recipe_text if res.found else f"none among {res.candidates_tried} candidates")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_reproduce(args, out: Output) -> int:
    ex = catalog.EXAMPLES.get(args.example)
    if ex is None:
        raise UsageError(f"unknown example {args.example!r}; known: {', '.join(catalog.EXAMPLES)}")
    out.info("example", f"{ex.example_id}: {ex.title}")
    for note in ex.notes:
        out.info("note", note)
    battery, extras = catalog.run_example(args.example)
    for rep in battery:
        out.report(rep)
    for rep in extras:
        out.report(rep)
    return EXIT_PASS if all(r.passed for r in battery) else EXIT_FAIL


def _fmt_sc(sc) -> str:
    return "{" + ", ".join(f"({','.join(map(str, idx))}): {v}" for idx, v in sorted(sc.items())) + "}"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leibniz3", description="Verify 3-Leibniz and 3-Lie bialgebras exactly.")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--limit", type=int, default=REPORT_LIMIT, help="residual entries shown per report")
    p.add_argument("--timing", action="store_true", help="print elapsed time")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--antisymmetrize", action="store_true",
                        help="complete lie3 entries by skew symmetry when loading")

    sp = sub.add_parser("check", help="fundamental identity of one algebra")
    sp.add_argument("file")
    sp.add_argument("--kind", help="override the kind in the file")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("pair-check", help="bialgebra compatibility of an algebra and a dual")
    sp.add_argument("algebra")
    sp.add_argument("dual")
    common(sp)
    sp.set_defaults(func=cmd_pair_check)

    sp = sub.add_parser("dual-search", help="families of compatible duals")
    sp.add_argument("algebra")
    sp.add_argument("--dual-kind", required=True)
    sp.add_argument("--grid", help="comma-separated grid values (default -2..2)")
    sp.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    sp.add_argument("--member", action="append", help="file to test for membership (repeatable)")
    sp.add_argument("--assign", help="parameter values for --member files, e.g. a=1,b=1")
    sp.add_argument("--output", help="directory for grid solutions")
    common(sp)
    sp.set_defaults(func=cmd_dual_search)

    sp = sub.add_parser("correspondence", help="Leibniz bialgebra on A (x) A")
    sp.add_argument("algebra")
    sp.add_argument("dual")
    sp.add_argument("--case", help="case id (default: every case for the pair's kinds)")
    sp.add_argument("--assign", help="parameter values, e.g. a=1,b=1")
    sp.add_argument("--search", action="store_true", help="rerun the recipe search for non-printed cases")
    common(sp)
    sp.set_defaults(func=cmd_correspondence)

    sp = sub.add_parser("reproduce", help="run the battery for a built-in example")
    sp.add_argument("example", help=", ".join(catalog.EXAMPLES))
    sp.set_defaults(func=cmd_reproduce)
    return p


def _join_negative_values(argv: list) -> list:
    # "--grid -1,0,1" would otherwise be read as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--grid", "--assign"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    out = Output(args.format, args.limit)
    start = time.perf_counter()
    try:
        code = args.func(args, out)
    except (fileio.FileFormatError, ScalarParseError, StructuralError, UsageError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR
    except DimensionCapExceeded as exc:
        out.info("error", str(exc))
        out.finish("fail")
        print(f"error: {exc} (raise --max-dim to search anyway)", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.timing:
        out.info("elapsed_seconds", round(time.perf_counter() - start, 3))
    out.finish("pass" if code == EXIT_PASS else "fail")
    return code


if __name__ == "__main__":
    sys.exit(main())
