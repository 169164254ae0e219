"""Homogeneous rational potentials: parsing, gradients, Hessians."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum.mpoly import MPoly
from .exactnum.mrat import MRat, PoleError
from .exactnum.numbers import GRat, as_field

__all__ = [
    "HomoPotential",
    "PotentialError",
    "NonHomogeneous",
    "ParseError",
    "PoleError",
    "parse_potential",
    "parse_expression",
    "potential_from_json",
    "gradient",
    "euler_residual",
    "hessian_at",
]


class PotentialError(ValueError):
    pass


class ParseError(PotentialError):
    pass


class NonHomogeneous(PotentialError):
    def __init__(self, term: str, detail: str = ""):
        self.term = term
        super().__init__(f"non-homogeneous term {term!r}" + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class HomoPotential:
    n: int
    k: int
    num: MPoly
    den: MPoly | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise PotentialError("a potential needs at least two variables")
        if self.k == 0:
            raise PotentialError("degree k = 0 is excluded")
        if self.num.n != self.n or (self.den is not None and self.den.n != self.n):
            raise PotentialError("variable count mismatch")
        if self.num.is_zero():
            raise PotentialError("the zero potential")
        if not self.num.is_homogeneous():
            raise NonHomogeneous(self.num.to_str(), "numerator")
        if self.den is not None:
            if self.den.is_zero():
                raise PotentialError("zero denominator")
            if not self.den.is_homogeneous():
                raise NonHomogeneous(self.den.to_str(), "denominator")
        deg = self.num.total_degree() - (self.den.total_degree() if self.den is not None else 0)
        if deg != self.k:
            raise PotentialError(f"declared degree {self.k} but the expression has degree {deg}")

    @property
    def rational(self) -> MRat:
        return MRat(self.num, self.den, reduce=False)

    def is_polynomial(self) -> bool:
        return self.den is None

    def __call__(self, point):
        return self.rational(point)

    def to_str(self) -> str:
        return self.rational.to_str()

    def to_json(self) -> dict:
        doc = {"n": self.n, "k": self.k, "numerator": self.num.to_json()}
        if self.den is not None:
            doc["denominator"] = self.den.to_json()
        return doc

    @classmethod
    def from_rational(cls, r: MRat, n: int | None = None, name: str = "") -> "HomoPotential":
        n = n or r.n
        den = None if r.den.is_constant() else r.den
        num = r.num if den is not None else r.num * (1 / r.den.constant_term())
        k = num.total_degree() - (den.total_degree() if den is not None else 0)
        return cls(n, k, num, den, name)


# text grammar

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|(q\d+|p\d+)|(i)\b|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:10]!r} at column {pos + 1}")
        num, var, imag, op = m.groups()
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if num is not None:
            out.append(("num", num, start))
        elif var is not None:
            out.append(("var", var, start))
        elif imag is not None:
            out.append(("i", imag, start))
        else:
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    """Recursive descent over ``+ - * / ^``, parentheses, ``i``, rationals and variables."""

    def __init__(self, text: str, n: int, prefixes=("q",)):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.n = n
        self.prefixes = prefixes

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r} at column {tok[2] + 1}, found {tok[1] or 'end of input'!r}")

    def top_terms(self):
        """Top-level summands as ``(source text, value)``."""
        terms = []
        sign = 1
        while True:
            if self.peek()[1] in "+-" and self.peek()[0] == "op":
                if self.take()[1] == "-":
                    sign = -sign
                continue
            start = self.peek()[2]
            value = self.term()
            end = self.peek()[2]
            terms.append((self.text[start:end].strip(), value * sign))
            tok = self.peek()
            if tok[0] == "end":
                return terms
            if tok[1] not in ("+", "-"):
                raise ParseError(f"unexpected {tok[1]!r} at column {tok[2] + 1}")
            sign = 1

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero")
                value = value / rhs
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            v = self.unary()
            return -v if tok[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                raise ParseError(f"exponent must be an integer at column {tok[2] + 1}")
            e = int(tok[1])
            if neg:
                if base.is_zero():
                    raise ParseError("negative power of zero")
                return base ** (-e)
            return base**e
        return base

    def atom(self):
        tok = self.take()
        kind, val, col = tok
        if kind == "num":
            return MRat(MPoly.const(self.n, Fraction(val)))
        if kind == "i":
            return MRat(MPoly.const(self.n, GRat(0, 1)))
        if kind == "var":
            prefix, idx = val[0], int(val[1:])
            if prefix not in self.prefixes:
                raise ParseError(f"unknown variable {val!r} at column {col + 1}")
            if idx < 1:
                raise ParseError(f"variable index must start at 1: {val!r}")
            offset = self.prefixes.index(prefix) * self.nvars_per_prefix
            if idx > self.nvars_per_prefix:
                raise ParseError(f"variable {val!r} exceeds n = {self.nvars_per_prefix}")
            return MRat(MPoly.var(self.n, offset + idx - 1))
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise ParseError(f"unexpected {val or 'end of input'!r} at column {col + 1}")

    @property
    def nvars_per_prefix(self):
        return self.n // len(self.prefixes)


def _max_index(text: str, prefix: str) -> int:
    idx = [int(m) for m in re.findall(rf"{prefix}(\d+)", text)]
    return max(idx, default=0)


def parse_expression(text: str, n: int | None = None, prefixes=("q",)) -> MRat:
    """Parse an expression in ``q1..qn`` (and ``p1..pn`` when requested) to a rational function."""
    if n is None:
        n = max(2, *(_max_index(text, p) for p in prefixes))
    parser = _Parser(text, n * len(prefixes), prefixes)
    value = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r} at column {tok[2] + 1}")
    return value


def _term_degree(term: str, value: MRat) -> int | None:
    if value.is_zero():
        return None
    if not value.is_homogeneous():
        raise NonHomogeneous(term, "the term itself mixes degrees")
    return value.degree()


def parse_potential(source, n: int | None = None, name: str = "") -> HomoPotential:
    """Build a potential from expression text or a JSON document (dict or JSON string)."""
    if isinstance(source, dict):
        return potential_from_json(source, name=name)
    text = str(source).strip()
    if text.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        return potential_from_json(doc, name=name)
    if not text:
        raise ParseError("empty expression")
    if n is None:
        n = max(2, _max_index(text, "q"))
    parser = _Parser(text, n)
    terms = parser.top_terms()
    degree = None
    first = None
    total = MRat(MPoly(n))
    for src, value in terms:
        d = _term_degree(src, value)
        if d is not None:
            if degree is None:
                degree, first = d, src
            elif d != degree:
                raise NonHomogeneous(src, f"degree {d}, but {first!r} has degree {degree}")
        total = total + value
    if total.is_zero():
        raise PotentialError("the expression is identically zero")
    if not total.is_homogeneous():
        raise NonHomogeneous(text)
    if total.degree() == 0:
        raise PotentialError("degree k = 0 is excluded")
    return HomoPotential.from_rational(total, n, name=name)


def potential_from_json(doc: dict, name: str = "") -> HomoPotential:
    try:
        n = int(doc["n"])
        k = int(doc["k"])
        num = MPoly.from_json(n, doc["numerator"])
        den = MPoly.from_json(n, doc["denominator"]) if doc.get("denominator") else None
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed potential document: {exc}") from exc
    if den is not None and den.is_constant():
        num, den = num * (1 / den.constant_term()), None
    if den is not None:
        r = MRat(num, den)
        num, den = r.num, (None if r.den.is_constant() else r.den)
    for e in num.terms:
        if sum(e) - (den.total_degree() if den is not None else 0) != k:
            raise NonHomogeneous(MPoly(n, {e: num.terms[e]}).to_str(), f"expected degree {k}")
    return HomoPotential(n, k, num, den, name)


# calculus


def gradient(V: HomoPotential) -> list[MRat]:
    r = V.rational
    return [r.diff(i) for i in range(V.n)]


def euler_residual(V: HomoPotential) -> MRat:
    """``<q, grad V> - k V``; identically zero for a genuine potential."""
    r = V.rational
    acc = MRat(MPoly(V.n)) - r * V.k
    for i in range(V.n):
        acc = acc + MRat(MPoly.var(V.n, i)) * r.diff(i)
    return acc


def _corrupted_degree(V: HomoPotential, k: int) -> HomoPotential:
    """Copy of ``V`` carrying a wrong degree; test hook for :func:`euler_residual`."""
    W = object.__new__(HomoPotential)
    for f in ("n", "num", "den", "name"):
        object.__setattr__(W, f, getattr(V, f))
    object.__setattr__(W, "k", k)
    return W


def hessian_rational(V: HomoPotential) -> list[list[MRat]]:
    g = gradient(V)
    H = [[None] * V.n for _ in range(V.n)]
    for i in range(V.n):
        for j in range(i, V.n):
            H[i][j] = H[j][i] = g[i].diff(j)
    return H


def gradient_at(V: HomoPotential, c) -> list:
    c = [as_field(x) for x in c]
    if len(c) != V.n:
        raise ValueError(f"point has {len(c)} coordinates, potential has n = {V.n}")
    return [g(c) for g in gradient(V)]


def hessian_at(V: HomoPotential, c) -> list[list]:
    """Exact symmetric Hessian at ``c``; raises :class:`PoleError` at a pole of ``V``."""
    c = [as_field(x) for x in c]
    if len(c) != V.n:
        raise ValueError(f"point has {len(c)} coordinates, potential has n = {V.n}")
    if V.den is not None and not V.den(c):
        raise PoleError(f"V has a pole at {[str(x) for x in c]}")
    H = hessian_rational(V)
    out = [[None] * V.n for _ in range(V.n)]
    for i in range(V.n):
        for j in range(i, V.n):
            out[i][j] = out[j][i] = H[i][j](c)
    return out
