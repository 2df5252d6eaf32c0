"""Exact scalars: rationals and sparse polynomials over them.

Structure constants of the example families carry free parameters
(``a``, ``b``, ...), so every identity check in this package is a
polynomial identity test over Q[a, b, ...]. A :class:`Scalar` is a
canonical sparse map from monomials to nonzero :class:`fractions.Fraction`
coefficients; two scalars are equal iff their maps are equal.

Text grammar (used by the algebra file format)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | INT ('/' INT)? | NAME | '(' expr ')'
    NAME   := [a-z][a-z0-9_]*

Division is only allowed between integer literals.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

__all__ = [
    "Rational",
    "Scalar",
    "ScalarParseError",
    "scalar_add",
    "scalar_mul",
    "scalar_eval",
    "scalar_is_zero",
    "as_scalar",
]

Rational = Fraction

# monomial: tuple of (name, exponent) pairs sorted by name, exponents >= 1
Monomial = tuple
_ONE: Monomial = ()

Number = Union[int, Fraction]


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for name, e in m2:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _grlex_key(m: Monomial):
    # higher total degree first, then lexicographic with a > b > c ...
    # (encoded so that plain ascending sort gives the rendering order)
    return (-_mono_degree(m), tuple((name, -e) for name, e in m))


class Scalar:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = Fraction(coeff)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Scalar":
        # terms already canonical: Fraction coefficients, no zeros
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, value: Number) -> "Scalar":
        value = Fraction(value)
        return cls._raw({_ONE: value} if value else {})

    @classmethod
    def var(cls, name: str) -> "Scalar":
        if not _NAME_RE.fullmatch(name):
            raise ValueError(f"invalid parameter name {name!r}")
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        return _Parser(text).parse()

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ONE in self._terms)

    def to_rational(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"scalar {self} depends on parameters")
        return self._terms.get(_ONE, Fraction(0))

    @property
    def variables(self) -> frozenset:
        return frozenset(name for mono in self._terms for name, _ in mono)

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self._terms), default=-1)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = as_scalar(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono)
            if s is None:
                out[mono] = c
            else:
                s += c
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) + (-self)

    def __mul__(self, other):
        other = as_scalar(other)
        if not self._terms or not other._terms:
            return ZERO
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                s = out.get(mono)
                out[mono] = c1 * c2 if s is None else s + c1 * c2
        return Scalar._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_scalar(other)
        if not other.is_constant() or other.is_zero():
            raise ZeroDivisionError("division only by nonzero rational constants")
        q = other.to_rational()
        return Scalar._raw({m: c / q for m, c in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- evaluation ---------------------------------------------------
    def eval(self, assignment: Mapping[str, Number | "Scalar"]) -> "Scalar":
        """Substitute parameters; unassigned ones stay symbolic."""
        if not assignment or not self._terms:
            return self
        subs = {k: as_scalar(v) for k, v in assignment.items()}
        total = ZERO
        for mono, c in self._terms.items():
            term = Scalar._raw({_ONE: c})
            rest = []
            for name, e in mono:
                if name in subs:
                    term = term * subs[name] ** e
                else:
                    rest.append((name, e))
            if rest:
                term = term * Scalar._raw({tuple(rest): Fraction(1)})
            total = total + term
        return total

    # -- comparison / hashing ----------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({_ONE: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                # agree with hash(int) / hash(Fraction) since __eq__ does
                self._hash = hash(self._terms.get(_ONE, Fraction(0)))
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- rendering ----------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=_grlex_key):
            c = self._terms[mono]
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            factors = [name for name, e in mono for _ in range(e)]
            if not factors:
                body = _fmt_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_fmt_rational(mag), *factors])
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


ZERO = Scalar._raw({})
ONE = Scalar._raw({_ONE: Fraction(1)})


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.const(x)
    if isinstance(x, str):
        return Scalar.parse(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


def scalar_add(x, y) -> Scalar:
    return as_scalar(x) + as_scalar(y)


def scalar_mul(x, y) -> Scalar:
    return as_scalar(x) * as_scalar(y)


def scalar_eval(x, assignment: Mapping[str, Number]) -> Scalar:
    return as_scalar(x).eval(assignment)


def scalar_is_zero(x) -> bool:
    return as_scalar(x).is_zero()


def scalar_sum(items: Iterable) -> Scalar:
    return reduce(lambda acc, s: acc + s, items, ZERO)


# -- parsing ------------------------------------------------------------

_NAME_RE = re.compile(r"[a-z][a-z0-9_]*")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-z][a-z0-9_]*)|(.))")


class ScalarParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at column {pos + 1} in {text!r}")
        self.text = text
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        for m in _TOKEN_RE.finditer(text):
            num, name, other = m.groups()
            start = m.start(m.lastindex) if m.lastindex else m.start()
            if num is not None:
                self.tokens.append(("int", int(num), start))
            elif name is not None:
                self.tokens.append(("name", name, start))
            elif other is not None:
                if other not in "+-*/()":
                    raise ScalarParseError(text, start, f"unexpected character {other!r}")
                self.tokens.append((other, other, start))
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", None, len(self.text))

    def _take(self, kind=None):
        tok = self._peek()
        if kind is not None and tok[0] != kind:
            raise ScalarParseError(self.text, tok[2], f"expected {kind!r}")
        self.i += 1
        return tok

    def parse(self) -> Scalar:
        if not self.tokens:
            raise ScalarParseError(self.text, 0, "empty expression")
        value = self._expr()
        tok = self._peek()
        if tok[0] != "end":
            raise ScalarParseError(self.text, tok[2], f"unexpected {tok[1]!r}")
        return value

    def _expr(self) -> Scalar:
        value = self._term()
        while self._peek()[0] in ("+", "-"):
            op = self._take()[0]
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self) -> Scalar:
        value = self._factor()
        while self._peek()[0] == "*":
            self._take()
            value = value * self._factor()
        return value

    def _factor(self) -> Scalar:
        kind, val, pos = self._peek()
        if kind in ("+", "-"):
            self._take()
            inner = self._factor()
            return inner if kind == "+" else -inner
        if kind == "int":
            self._take()
            if self._peek()[0] == "/":
                self._take()
                den_kind, den, den_pos = self._take()
                if den_kind != "int":
                    raise ScalarParseError(self.text, den_pos, "division only by integer literals")
                if den == 0:
                    raise ScalarParseError(self.text, den_pos, "zero denominator")
                return Scalar.const(Fraction(val, den))
            return Scalar.const(val)
        if kind == "name":
            self._take()
            return Scalar.var(val)
        if kind == "(":
            self._take()
            inner = self._expr()
            self._take(")")
            return inner
        raise ScalarParseError(self.text, pos, "expected a number, name or '('")
