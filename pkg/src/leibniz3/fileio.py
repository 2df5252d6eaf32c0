"""JSON algebra files.

Layout::

    {
      "name": "A1",
      "dim": 3,
      "kind": "leibniz1",
      "params": [],
      "entries": [{"i": 2, "j": 3, "k": 3, "m": 1, "value": "1"}]
    }

Indices are 1-based; values use the scalar grammar of ``exactmath``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebras import Algebra3, AlgebraKind
from .exactmath import Scalar, ScalarParseError
from .structure import SC3, antisymmetric_extension, is_antisymmetric

__all__ = ["AlgebraFile", "FileFormatError", "load", "loads", "dumps", "save",
           "load_fixture", "fixture_names"]

_FIELDS = ("name", "dim", "kind", "params", "entries")


class FileFormatError(ValueError):
    def __init__(self, message: str, source: str = "", location: str = ""):
        self.source = source
        self.location = location
        prefix = ": ".join(p for p in (source, location) if p)
        super().__init__(f"{prefix}: {message}" if prefix else message)


@dataclass
class AlgebraFile:
    name: str
    dim: int
    kind: str
    params: list = field(default_factory=list)
    entries: list = field(default_factory=list)  # [(i, j, k, m, Scalar)]

    def to_algebra(self) -> Algebra3:
        sc = SC3(self.dim, {(i, j, k, m): v for i, j, k, m, v in self.entries})
        return Algebra3(sc, AlgebraKind.parse(self.kind), self.name)

    @classmethod
    def from_algebra(cls, alg: Algebra3, params=None) -> "AlgebraFile":
        if params is None:
            params = sorted(alg.sc.variables)
        entries = [(*idx, v) for idx, v in sorted(alg.sc.items())]
        return cls(alg.name, alg.dim, alg.kind.value, list(params), entries)


def loads(text: str, source: str = "<string>", antisymmetrize: bool = False) -> AlgebraFile:
    """Parse and validate. With ``antisymmetrize`` a lie3 file may list one entry per skew orbit."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(exc.msg, source, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(data, dict):
        raise FileFormatError("top level must be an object", source)
    for key in _FIELDS:
        if key not in data:
            raise FileFormatError(f"missing field '{key}'", source)
    unknown = set(data) - set(_FIELDS)
    if unknown:
        raise FileFormatError(f"unknown field(s) {sorted(unknown)}", source)

    name, dim, kind, params = data["name"], data["dim"], data["kind"], data["params"]
    if not isinstance(name, str):
        raise FileFormatError("must be a string", source, "name")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FileFormatError("must be a positive integer", source, "dim")
    try:
        kind_enum = AlgebraKind(kind)
    except ValueError:
        raise FileFormatError(f"unknown kind {kind!r}; expected one of "
                              f"{[k.value for k in AlgebraKind]}", source, "kind") from None
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise FileFormatError("must be a list of names", source, "params")
    if not isinstance(data["entries"], list):
        raise FileFormatError("must be a list", source, "entries")

    entries = []
    seen = set()
    for n, item in enumerate(data["entries"]):
        where = f"entries[{n}]"
        if not isinstance(item, dict) or set(item) != {"i", "j", "k", "m", "value"}:
            raise FileFormatError("expected an object with keys i, j, k, m, value", source, where)
        idx = []
        for key in "ijkm":
            x = item[key]
            if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x <= dim:
                raise FileFormatError(f"index out of range 1..{dim}: {x!r}", source, f"{where}.{key}")
            idx.append(x)
        idx = tuple(idx)
        if idx in seen:
            raise FileFormatError(f"duplicate entry {idx}", source, where)
        seen.add(idx)
        raw = item["value"]
        if isinstance(raw, int) and not isinstance(raw, bool):
            raw = str(raw)
        if not isinstance(raw, str):
            raise FileFormatError("value must be a string", source, f"{where}.value")
        try:
            value = Scalar.parse(raw)
        except ScalarParseError as exc:
            raise FileFormatError(str(exc), source, f"{where}.value") from None
        undeclared = value.variables - set(params)
        if undeclared:
            raise FileFormatError(f"undeclared parameter(s) {sorted(undeclared)}", source, f"{where}.value")
        entries.append((*idx, value))

    af = AlgebraFile(name, dim, kind, list(params), entries)
    if kind_enum is AlgebraKind.LIE3:
        sc = SC3(dim, {e[:4]: e[4] for e in entries})
        if antisymmetrize:
            try:
                sc = antisymmetric_extension(sc)
            except ValueError as exc:
                raise FileFormatError(str(exc), source, "entries") from None
            af.entries = [(*idx, v) for idx, v in sorted(sc.items())]
        elif not is_antisymmetric(sc):
            raise FileFormatError("lie3 entries are not skew in the lower indices "
                                  "(use the antisymmetrize option to complete them)", source, "entries")
    return af


def load(path, antisymmetrize: bool = False) -> AlgebraFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(exc.strerror or str(exc), str(path)) from None
    return loads(text, str(path), antisymmetrize)


def dumps(af: AlgebraFile) -> str:
    entries = [
        {"i": i, "j": j, "k": k, "m": m, "value": str(v)}
        for i, j, k, m, v in sorted(af.entries, key=lambda e: e[:4])
    ]
    lines = ["{",
             f'  "name": {json.dumps(af.name)},',
             f'  "dim": {af.dim},',
             f'  "kind": {json.dumps(af.kind)},',
             f'  "params": {json.dumps(list(af.params))},']
    if entries:
        lines.append('  "entries": [')
        body = [f"    {json.dumps(e)}" for e in entries]
        lines.append(",\n".join(body))
        lines.append("  ]")
    else:
        lines.append('  "entries": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def save(af: AlgebraFile, path) -> None:
    Path(path).write_text(dumps(af), encoding="utf-8")


def fixture_names() -> list:
    root = resources.files("leibniz3") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> AlgebraFile:
    root = resources.files("leibniz3") / "fixtures"
    res = root / f"{name}.json"
    if not res.is_file():
        raise KeyError(f"no built-in fixture {name!r}; available: {', '.join(fixture_names())}")
    return loads(res.read_text(encoding="utf-8"), f"fixture {name}")
