"""Exact scalars: Gaussian rationals and quadratic surds over Q(i).

Rationals are plain :class:`fractions.Fraction` values.  ``GRat`` is an
element of Q(i) and ``Surd`` an element of Q(i)(sqrt(d)) for a single
square-free integer radicand ``d > 1``.  Every class is immutable and
hashable, and mixed arithmetic promotes ``int -> Fraction -> GRat -> Surd``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational

from sympy import factorint

__all__ = [
    "GRat",
    "Surd",
    "MixedRadicandError",
    "I",
    "as_grat",
    "as_field",
    "rat_sqrt",
    "gsqrt",
    "surd_normalize",
    "is_rational_value",
    "to_fraction",
    "parse_rat",
    "format_rat",
]


class MixedRadicandError(ValueError):
    """Raised when two surds with different radicands meet in one operation."""


def parse_rat(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_rat(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class GRat:
    """Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GRat is immutable")

    # construction helpers

    @classmethod
    def coerce(cls, x) -> "GRat":
        if isinstance(x, GRat):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return cls(x, 0)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        raise TypeError(f"cannot coerce {type(x).__name__} to GRat")

    # predicates

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    # arithmetic

    def __neg__(self):
        return GRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Surd):
            return NotImplemented
        try:
            o = GRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Surd):
            return NotImplemented
        try:
            o = GRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GRat.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, Surd):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return GRat(self.re * other, self.im * other)
        try:
            o = GRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GRat":
        return GRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GRat division by zero")
        return GRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, Surd):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("GRat division by zero")
            return GRat(self.re / other, self.im / other)
        try:
            o = GRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GRat.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = GRat(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, GRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, Surd):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (0, self.re, self.im)

    def __repr__(self):
        return f"GRat({format_rat(self.re)}, {format_rat(self.im)})"

    def __str__(self):
        if self.im == 0:
            return format_rat(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{format_rat(self.im)}*i"
        if self.re == 0:
            return im
        if im.startswith("-"):
            return f"{format_rat(self.re)}{im}"
        return f"{format_rat(self.re)}+{im}"


I = GRat(0, 1)


def as_grat(x) -> GRat:
    return GRat.coerce(x)


def as_field(x):
    """Promote ``x`` to ``GRat`` unless it already is a ``Surd``."""
    if isinstance(x, Surd):
        return x.simplify()
    return GRat.coerce(x)


def is_rational_value(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return True
    if isinstance(x, GRat):
        return x.im == 0
    if isinstance(x, Surd):
        return not x.v and x.u.im == 0
    return False


def to_fraction(x) -> Fraction:
    if not is_rational_value(x):
        raise ValueError(f"{x} is not rational")
    if isinstance(x, Surd):
        return x.u.re
    if isinstance(x, GRat):
        return x.re
    return Fraction(x)


# square roots


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, m)`` with ``n = s**2 * m`` and ``m`` square-free, ``n > 0``."""
    s, m = 1, 1
    for prime, e in factorint(n).items():
        s *= prime ** (e // 2)
        if e % 2:
            m *= prime
    return s, m


@lru_cache(maxsize=4096)
def _sqrt_parts(x: Fraction) -> tuple[Fraction, int]:
    """``sqrt(x) = c * sqrt(m)`` for ``x >= 0``, ``m`` square-free (1 if rational)."""
    if x == 0:
        return Fraction(0), 1
    num = x.numerator * x.denominator
    s, m = _squarefree_split(num)
    return Fraction(s, x.denominator), m


def rat_sqrt(x) -> Fraction | None:
    """Exact rational square root, or ``None``."""
    x = Fraction(x)
    if x < 0:
        return None
    a, b = x.numerator, x.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def gsqrt(g) -> "GRat | Surd | None":
    """Square root of a Gaussian rational inside Q(i)(sqrt(m)) for some m.

    Returns a ``GRat`` when the root lies in Q(i), a ``Surd`` when it needs
    one rational radicand, and ``None`` otherwise.  The chosen branch has a
    non-negative real part (positive imaginary part when the real part is 0).
    """
    g = GRat.coerce(g)
    if not g:
        return GRat(0)
    if g.im == 0:
        x = g.re
        c, m = _sqrt_parts(abs(x))
        unit = GRat(1) if x > 0 else I
        if m == 1:
            return unit * c
        return Surd(GRat(0), unit * c, m)
    n = rat_sqrt(g.norm())
    if n is None:
        return None
    a, b = g.re, g.im
    s, m1 = _sqrt_parts((n + a) / 2)
    t, m2 = _sqrt_parts((n - a) / 2)
    if s and t and m1 != m2:
        return None
    m = m1 if s else m2
    sign = 1 if b > 0 else -1
    coeff = GRat(s, sign * t)
    if m == 1:
        return coeff
    return Surd(GRat(0), coeff, m)


class Surd:
    """Element ``u + v*sqrt(d)`` of Q(i)(sqrt(d)); ``u, v`` Gaussian, ``d`` square-free > 1.

    ``d == 0`` marks the collapsed form ``v == 0``.
    """

    __slots__ = ("u", "v", "d")

    def __init__(self, u=0, v=0, d=0):
        u, v = GRat.coerce(u), GRat.coerce(v)
        d = int(d)
        if d == 1:
            u, v, d = u + v, GRat(0), 0
        if not v:
            d = 0
        elif d <= 1:
            raise ValueError("Surd radicand must be a square-free integer > 1; use surd_normalize")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    @classmethod
    def coerce(cls, x) -> "Surd":
        if isinstance(x, Surd):
            return x
        return cls(GRat.coerce(x), GRat(0), 0)

    def simplify(self):
        """Collapse to ``GRat`` when the surd part vanishes."""
        return self if self.v else self.u

    def as_grat(self) -> GRat | None:
        return None if self.v else self.u

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def _radicand_with(self, other: "Surd") -> int:
        if self.d and other.d and self.d != other.d:
            raise MixedRadicandError(f"radicands {self.d} and {other.d} do not mix")
        return self.d or other.d

    def __neg__(self):
        return Surd(-self.u, -self.v, self.d)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._radicand_with(o)
        return Surd(self.u + o.u, self.v + o.v, d)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._radicand_with(o)
        return Surd(self.u - o.u, self.v - o.v, d)

    def __rsub__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._radicand_with(o)
        return Surd(self.u * o.u + self.v * o.v * d, self.u * o.v + self.v * o.u, d)

    __rmul__ = __mul__

    def conjugate_surd(self) -> "Surd":
        """Galois conjugate ``u - v*sqrt(d)``."""
        return Surd(self.u, -self.v, self.d)

    def field_norm(self) -> GRat:
        """``(u + v sqrt d)(u - v sqrt d)`` as an element of Q(i)."""
        return self.u * self.u - self.v * self.v * self.d

    def inverse(self) -> "Surd":
        n = self.field_norm()
        if not n:
            raise ZeroDivisionError("Surd division by zero")
        c = self.conjugate_surd()
        return Surd(c.u / n, c.v / n, self.d)

    def __truediv__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        self._radicand_with(o)
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = Surd(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Surd):
            if not self.v and not other.v:
                return self.u == other.u
            return self.d == other.d and self.u == other.u and self.v == other.v
        if isinstance(other, (int, Fraction, GRat)):
            return not self.v and self.u == other
        return NotImplemented

    def __hash__(self):
        if not self.v:
            return hash(self.u)
        return hash((self.u, self.v, self.d))

    def is_real(self) -> bool:
        return self.u.im == 0 and self.v.im == 0

    def sign(self) -> int:
        """Sign of a real surd, decided exactly."""
        if not self.is_real():
            raise ValueError("sign of a non-real surd")
        u, v = self.u.re, self.v.re
        if not v:
            return (u > 0) - (u < 0)
        su, sv = (u > 0) - (u < 0), (v > 0) - (v < 0)
        if su == 0 or su == sv:
            return sv
        # opposite signs: compare u^2 with v^2 d
        diff = u * u - v * v * self.d
        return su if diff > 0 else sv

    def sort_key(self):
        return (1, self.d, self.u.re, self.u.im, self.v.re, self.v.im)

    def __repr__(self):
        return f"Surd({self.u}, {self.v}, {self.d})"

    def __str__(self):
        if not self.v:
            return str(self.u)
        vs = str(self.v)
        if not (self.v.im == 0 or self.v.re == 0):
            vs = f"({vs})"
        root = f"sqrt({self.d})"
        term = root if self.v == 1 else f"-{root}" if self.v == -1 else f"{vs}*{root}"
        if not self.u:
            return term
        us = str(self.u)
        if term.startswith("-"):
            return f"{us}{term}"
        return f"{us}+{term}"


def surd_normalize(u, v, d) -> Surd:
    """Canonical ``Surd`` equal to ``u + v*sqrt(d)`` for rational ``d``.

    Square factors of ``d`` are pulled into ``v``; a negative radicand moves
    its ``i`` into the coefficient, so perfect squares (of either sign)
    collapse to ``v == 0``.
    """
    u, v, d = GRat.coerce(u), GRat.coerce(v), Fraction(d)
    if not v or d == 0:
        return Surd(u, GRat(0), 0)
    c, m = _sqrt_parts(abs(d))
    coeff = v * c * (I if d < 0 else 1)
    if m == 1:
        return Surd(u + coeff, GRat(0), 0)
    return Surd(u, coeff, m)
