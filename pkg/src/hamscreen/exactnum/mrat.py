"""Multivariate rational functions ``num/den`` over Q(i)."""
from __future__ import annotations

from functools import lru_cache

from .mpoly import MPoly
from .numbers import GRat, as_field

__all__ = ["MRat", "PoleError"]


class PoleError(ZeroDivisionError):
    """Evaluation hit a zero of the denominator."""


@lru_cache(maxsize=64)
def _symbols(n: int):
    import sympy

    return sympy.symbols(f"x0:{n}")


def _cancel(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    # multivariate gcd over Q(i) is delegated to sympy
    import sympy

    syms = _symbols(num.n)
    expr = sympy.cancel(num.to_sympy(syms) / den.to_sympy(syms))
    n_expr, d_expr = sympy.fraction(sympy.together(expr))
    return MPoly.from_sympy(n_expr, syms), MPoly.from_sympy(d_expr, syms)


class MRat:
    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None, reduce: bool = True):
        if den is None:
            den = MPoly.const(num.n, 1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = MPoly.const(num.n, 1)
        elif not den.is_constant() and reduce:
            num, den = _cancel(num, den)
        if den.is_constant():
            c = den.constant_term()
            num, den = num * (1 / c), MPoly.const(num.n, 1)
        else:
            lead = den.sorted_terms()[0][1]
            if lead != 1:
                num, den = num * (1 / lead), den * (1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("MRat is immutable")

    @property
    def n(self) -> int:
        return self.num.n

    @classmethod
    def coerce(cls, x, n: int) -> "MRat":
        if isinstance(x, MRat):
            return x
        if isinstance(x, MPoly):
            return cls(x)
        return cls(MPoly.const(n, x))

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __neg__(self):
        return MRat(-self.num, self.den, reduce=False)

    def __add__(self, other):
        o = MRat.coerce(other, self.n)
        if self.den == o.den:
            return MRat(self.num + o.num, self.den)
        return MRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-MRat.coerce(other, self.n))

    def __rsub__(self, other):
        return MRat.coerce(other, self.n) - self

    def __mul__(self, other):
        o = MRat.coerce(other, self.n)
        reduce = not (self.den.is_constant() and o.den.is_constant())
        return MRat(self.num * o.num, self.den * o.den, reduce=reduce)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = MRat.coerce(other, self.n)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return MRat(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return MRat.coerce(other, self.n) / self

    def __pow__(self, e: int):
        if e < 0:
            return MRat(self.den ** (-e), self.num ** (-e), reduce=False)
        return MRat(self.num**e, self.den**e, reduce=False)

    def __eq__(self, other):
        try:
            o = MRat.coerce(other, self.n)
        except TypeError:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, i: int) -> "MRat":
        if self.den.is_constant():
            return MRat(self.num.diff(i))
        # quotient rule; the result keeps den**2 only when nothing cancels
        return MRat(self.num.diff(i) * self.den - self.num * self.den.diff(i), self.den * self.den)

    def degree(self) -> int:
        """Homogeneous degree ``deg num - deg den`` (callers check homogeneity)."""
        return self.num.total_degree() - self.den.total_degree()

    def is_homogeneous(self) -> bool:
        return self.num.is_homogeneous() and self.den.is_homogeneous()

    def __call__(self, point):
        d = self.den(point)
        if not d:
            raise PoleError(f"denominator vanishes at {[str(x) for x in point]}")
        return as_field(self.num(point) / d)

    def to_str(self, names=None) -> str:
        if self.den.is_constant():
            return self.num.to_str(names)
        return f"({self.num.to_str(names)})/({self.den.to_str(names)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MRat({self.to_str()})"


def mrat_const(n: int, c) -> MRat:
    return MRat(MPoly.const(n, GRat.coerce(c)))
