"""Sparse multivariate polynomials with Gaussian-rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from .numbers import GRat, as_field, format_rat

__all__ = ["MPoly", "monomials_of_degree"]


def monomials_of_degree(n: int, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree ``k`` in ``n`` variables, graded-lex descending."""
    out = []
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


class MPoly:
    """Polynomial in ``n`` variables stored as ``{exponents: GRat}`` without zeros."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError(f"exponent vector {e} does not have {n} entries")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = GRat.coerce(c)
            if c:
                clean[e] = clean.get(e, GRat(0)) + c
                if not clean[e]:
                    del clean[e]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def var(cls, n: int, i: int) -> "MPoly":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def const(cls, n: int, c) -> "MPoly":
        return cls(n, {(0,) * n: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> GRat:
        return self.terms.get((0,) * self.n, GRat(0))

    # degree information

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "MPoly"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: MPoly(self.n, t) for d, t in parts.items()}

    # arithmetic

    def _check(self, other):
        if isinstance(other, MPoly):
            if other.n != self.n:
                raise ValueError(f"variable counts differ: {self.n} vs {other.n}")
            return other
        return MPoly.const(self.n, other)

    def __neg__(self):
        return MPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        try:
            other = self._check(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, GRat(0)) + c
        return MPoly(self.n, out)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._check(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                c = GRat.coerce(other)
            except TypeError:
                return NotImplemented
            return MPoly(self.n, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, GRat(0)) + c1 * c2
        return MPoly(self.n, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = GRat.coerce(other)
        return self * (1 / c)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.n == other.n and self.terms == other.terms
        try:
            return self.terms == MPoly.const(self.n, other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # calculus and evaluation

    def diff(self, i: int) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MPoly(self.n, out)

    def __call__(self, point):
        if len(point) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(point)}")
        point = [as_field(x) for x in point]
        powers: dict = {}
        total = GRat(0)
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = point[i] ** k
                    term = term * powers[key]
            total = total + term
        return as_field(total)

    def substitute(self, values: dict[int, "MPoly"]) -> "MPoly":
        """Replace variable ``i`` by the polynomial ``values[i]``."""
        out = MPoly(self.n)
        for e, c in self.terms.items():
            rest = list(e)
            term = MPoly.const(self.n, c)
            for i, poly in values.items():
                if rest[i]:
                    term = term * poly ** rest[i]
                    rest[i] = 0
            term = term * MPoly(self.n, {tuple(rest): 1})
            out = out + term
        return out

    def extend(self, n: int) -> "MPoly":
        """Same polynomial viewed in ``n >= self.n`` variables."""
        if n < self.n:
            raise ValueError("cannot drop variables")
        pad = (0,) * (n - self.n)
        return MPoly(n, {e + pad: c for e, c in self.terms.items()})

    def coefficients_in(self, i: int) -> dict[int, "MPoly"]:
        """Coefficients as a polynomial in variable ``i`` (those still carry a zero exponent at ``i``)."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i] = 0
            out.setdefault(e[i], {})[tuple(f)] = c
        return {d: MPoly(self.n, t) for d, t in out.items()}

    def sorted_terms(self):
        """Terms in graded-lex descending order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.terms.values())

    # conversion

    def to_str(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"q{i + 1}" for i in range(self.n)]
        pieces = []
        for e, c in self.sorted_terms():
            mon = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mon:
                pieces.append(str(c) if not (c.re and c.im) else f"({c})")
                continue
            if c == 1:
                pieces.append(mon)
            elif c == -1:
                pieces.append(f"-{mon}")
            elif c.re and c.im:
                pieces.append(f"({c})*{mon}")
            else:
                pieces.append(f"{c}*{mon}")
        out = pieces[0]
        for p in pieces[1:]:
            out += p if p.startswith("-") else f"+{p}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MPoly({self.n}, {self.to_str()})"

    def to_json(self) -> list[dict]:
        return [
            {"exps": list(e), "re": format_rat(c.re), "im": format_rat(c.im)}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, n: int, terms) -> "MPoly":
        out = {}
        for t in terms:
            e = tuple(int(x) for x in t["exps"])
            c = GRat(Fraction(str(t.get("re", "0"))), Fraction(str(t.get("im", "0"))))
            out[e] = out.get(e, GRat(0)) + c
        return cls(n, out)

    def to_sympy(self, symbols):
        import sympy

        expr = sympy.Integer(0)
        for e, c in self.terms.items():
            coeff = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
                c.im.numerator, c.im.denominator
            )
            mon = sympy.Integer(1)
            for s, k in zip(symbols, e):
                mon *= s**k
            expr += coeff * mon
        return expr

    @classmethod
    def from_sympy(cls, expr, symbols) -> "MPoly":
        import sympy

        poly = sympy.Poly(sympy.expand(expr), *symbols)
        out = {}
        for e, c in poly.terms():
            re, im = c.as_real_imag()
            out[tuple(e)] = GRat(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))
        return cls(len(symbols), out)
