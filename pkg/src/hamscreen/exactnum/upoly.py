"""Dense univariate polynomials and rational functions over Q(i) or Q(i)(sqrt d).

Coefficients are stored ascending.  The root finder splits a polynomial
into its linear factors over Q(i) and leaves everything else as residual
factors, which is all the callers need (Table-1 eigenvalues are rational).
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .gaussint import UNITS, gaussian_divisors
from .numbers import GRat, MixedRadicandError, Surd, as_field, gsqrt

__all__ = [
    "UPoly",
    "RatFn",
    "poly_gcd",
    "squarefree_decomposition",
    "upoly_rational_roots",
    "roots_in_field",
    "quadratic_roots",
    "sturm_count",
]


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class UPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _strip(as_field(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def x(cls) -> "UPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots) -> "UPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_field(r), 1])
        return p

    # basic properties

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else GRat(0)

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else GRat(0)

    def is_grat(self) -> bool:
        return all(isinstance(c, GRat) for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(isinstance(c, GRat) and c.im == 0 for c in self.coeffs)

    def radicand(self) -> int:
        ds = {c.d for c in self.coeffs if isinstance(c, Surd) and c.d}
        if len(ds) > 1:
            raise MixedRadicandError(f"radicands {sorted(ds)} in one polynomial")
        return ds.pop() if ds else 0

    # arithmetic

    def __neg__(self):
        return UPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UPoly([a[i] + b[i] if i < len(b) else a[i] for i in range(len(a))])

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            if isinstance(other, RatFn):
                return NotImplemented
            c = as_field(other)
            return UPoly(x * c for x in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [GRat(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = UPoly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lc
        quot = [GRat(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if not c:
                continue
            f = c * inv
            quot[i - dq] = f
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] = rem[i - dq + j] - f * b
        return UPoly(quot), UPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __truediv__(self, other):
        if isinstance(other, (UPoly, RatFn)):
            return RatFn(self) / other
        return self * (1 / as_field(other))

    def __rtruediv__(self, other):
        return RatFn(UPoly.const(other), self)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == UPoly.const(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # calculus and evaluation

    def derivative(self) -> "UPoly":
        return UPoly(c * i for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        if isinstance(x, (UPoly, RatFn)):
            acc = UPoly() if isinstance(x, UPoly) else RatFn(UPoly())
            for c in reversed(self.coeffs):
                acc = acc * x + UPoly.const(c)
            return acc
        acc = GRat(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def conjugate_surd(self) -> "UPoly":
        return UPoly(c.conjugate_surd() if isinstance(c, Surd) else c for c in self.coeffs)

    def map(self, f) -> "UPoly":
        return UPoly(f(c) for c in self.coeffs)

    # printing

    def to_str(self, var: str = "z") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(c)
            if isinstance(c, Surd) or (isinstance(c, GRat) and c.re and c.im):
                cs = f"({cs})"
            mon = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            if not mon:
                term = cs
            elif c == 1:
                term = mon
            elif c == -1:
                term = f"-{mon}"
            else:
                term = f"{cs}*{mon}"
            terms.append(term)
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else f"+{t}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"UPoly({self.to_str()})"


def _as_poly(x):
    if isinstance(x, UPoly):
        return x
    if isinstance(x, RatFn):
        return None
    try:
        return UPoly.const(x)
    except TypeError:
        return None


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: UPoly, b: UPoly):
    """``(g, s, t)`` with ``s*a + t*b = g`` monic."""
    r0, r1 = a, b
    s0, s1 = UPoly([1]), UPoly()
    t0, t1 = UPoly(), UPoly([1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_decomposition(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: ``p = lc * prod f_i**i`` with monic, pairwise coprime ``f_i``."""
    if p.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    out = []
    if p.degree == 0:
        return out
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out


# root extraction over Q(i)


def _gaussian_integer_coeffs(p: UPoly) -> list[tuple[int, int]]:
    den = 1
    for c in p.coeffs:
        den = lcm(den, c.re.denominator, c.im.denominator)
    return [(int(c.re * den), int(c.im * den)) for c in p.coeffs]


def _linear_roots_qi(p: UPoly) -> list[GRat]:
    """All distinct Q(i)-roots of a square-free ``p`` with Q(i) coefficients."""
    roots: list[GRat] = []
    if p.degree <= 0:
        return roots
    if not p.coeffs[0]:
        roots.append(GRat(0))
        p = UPoly(p.coeffs[1:])
        # square-free input, so 0 was a simple root
    if p.degree <= 0:
        return roots
    if p.degree == 1:
        roots.append(-p.coeffs[0] / p.coeffs[1])
        return roots
    ints = _gaussian_integer_coeffs(p)
    c0, cn = ints[0], ints[-1]
    approx = [complex(a, b) for a, b in ints]
    cauchy = 1 + max(abs(c) for c in approx[:-1]) / abs(approx[-1])
    found: set = set()
    for q in gaussian_divisors(*cn):
        qc = complex(*q)
        for pd in gaussian_divisors(*c0):
            pc = complex(*pd)
            if abs(pc) > cauchy * abs(qc) + 1e-9:
                continue
            for u in UNITS:
                r = complex(*u) * pc / qc
                val, scale = 0j, 0.0
                for c in reversed(approx):
                    val = val * r + c
                    scale = scale * abs(r) + abs(c)
                if abs(val) > 1e-7 * scale:
                    continue
                num = GRat(u[0] * pd[0] - u[1] * pd[1], u[0] * pd[1] + u[1] * pd[0])
                cand = num / GRat(*q)
                if cand in found:
                    continue
                if not p(cand):
                    found.add(cand)
                    roots.append(cand)
    return roots


def upoly_rational_roots(p: UPoly):
    """Split ``p`` (coefficients in Q(i)) into Q(i)-roots and residual factors.

    Returns ``(roots, residual)`` where ``roots`` is a list of
    ``(root, multiplicity)`` and ``residual`` a list of ``(factor,
    multiplicity)`` of monic factors without Q(i)-roots, so that
    ``lc * prod (z - r)**m * prod f**m == p``.
    """
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    if not p.is_grat():
        raise TypeError("upoly_rational_roots expects Q(i) coefficients; use roots_in_field")
    roots: list[tuple[GRat, int]] = []
    residual: list[tuple[UPoly, int]] = []
    for f, mult in squarefree_decomposition(p):
        rs = _linear_roots_qi(f)
        for r in rs:
            roots.append((r, mult))
        rest = f
        for r in rs:
            rest = rest.exact_div(UPoly([-r, 1]))
        if rest.degree > 0:
            residual.append((rest.monic(), mult))
    roots.sort(key=lambda rm: (rm[0].re, rm[0].im))
    return roots, residual


def quadratic_roots(f: UPoly):
    """Roots of a quadratic with Q(i) coefficients as ``Surd`` values, or ``None``."""
    if f.degree != 2 or not f.is_grat():
        return None
    c, b, a = f.coeffs
    disc = b * b - 4 * a * c
    s = gsqrt(disc)
    if s is None:
        return None
    s = Surd.coerce(s)
    return [(-b + s) / (2 * a), (-b - s) / (2 * a)]


def roots_in_field(p: UPoly):
    """Roots of ``p`` lying in the coefficient field, plus residual factors.

    For Q(i) coefficients this is :func:`upoly_rational_roots`.  With surd
    coefficients, candidates come from the Q(i)-roots and quadratic factors
    of the norm polynomial ``p * conj(p)``, each tested exactly.
    """
    if p.is_grat():
        return upoly_rational_roots(p)
    d = p.radicand()
    roots = []
    residual = []
    for f, mult in squarefree_decomposition(p):
        norm_poly = f * f.conjugate_surd()
        norm_poly = UPoly(as_field(c) for c in norm_poly.coeffs)
        if not norm_poly.is_grat():
            raise ArithmeticError("norm polynomial left the base field")
        cands = []
        qr, qres = upoly_rational_roots(norm_poly)
        cands.extend(r for r, _ in qr)
        for g, _ in qres:
            qs = quadratic_roots(g)
            if qs:
                cands.extend(s for s in qs if not isinstance(s, Surd) or s.d in (0, d))
        rest = f
        seen = []
        for cnd in cands:
            if any(cnd == s for s in seen):
                continue
            if not rest(cnd):
                seen.append(cnd)
                rest = rest.exact_div(UPoly([-cnd, 1]))
                roots.append((as_field(cnd), mult))
        if rest.degree > 0:
            residual.append((rest.monic(), mult))
    return roots, residual


# Sturm sequences (real rational coefficients)


def _sign_changes(values) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def sturm_count(p: UPoly, a, b) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval ``(a, b]``."""
    if not p.is_rational():
        raise TypeError("Sturm sequences need real rational coefficients")
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)

    def changes(x):
        x = Fraction(x)
        return _sign_changes([s(x).re for s in seq])

    return changes(a) - changes(b)


# rational functions


class RatFn:
    """Reduced quotient ``num/den`` with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UPoly) else UPoly.const(num)
        den = UPoly([1]) if den is None else den if isinstance(den, UPoly) else UPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = UPoly(), UPoly([1])
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFn is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFn):
            return x
        if isinstance(x, UPoly):
            return RatFn(x)
        return RatFn(UPoly.const(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __add__(self, other):
        o = RatFn._coerce(other)
        if self.den == o.den:
            return RatFn(self.num + o.num, self.den)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-RatFn._coerce(other))

    def __rsub__(self, other):
        return RatFn._coerce(other) - self

    def __mul__(self, other):
        o = RatFn._coerce(other)
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFn._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFn._coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return RatFn(self.den ** (-e), self.num ** (-e))
        return RatFn(self.num ** e, self.den ** e)

    def __eq__(self, other):
        try:
            o = RatFn._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self) -> "RatFn":
        return RatFn(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den)

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def order_at_infinity(self) -> int:
        """``deg(den) - deg(num)`` (large for the zero function)."""
        if self.is_zero():
            return 10**9
        return self.den.degree - self.num.degree

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeff(0)

    def to_str(self, var: str = "z") -> str:
        if self.den.degree == 0:
            return self.num.to_str(var)
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatFn({self.to_str()})"
