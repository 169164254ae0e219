"""Proper Darboux points: verification, search in the plane, Hessians along directions."""
from __future__ import annotations

from dataclasses import dataclass, field

from .exactnum.mpoly import MPoly
from .exactnum.mrat import MRat, PoleError
from .exactnum.numbers import GRat, Surd, as_field
from .exactnum.resultant import as_upoly_in, resultant
from .exactnum.upoly import UPoly, poly_gcd, quadratic_roots, roots_in_field, upoly_rational_roots
from .homopot import HomoPotential, gradient, gradient_at, hessian_at

__all__ = [
    "DarbouxPoint",
    "DarbouxDirection",
    "PDPSearch",
    "DirectionSearch",
    "ImproperDarbouxPoint",
    "NotEigenDirection",
    "verify_pdp",
    "hessian_at_direction",
    "find_pdp_2d",
    "find_directions_2d",
    "eigen_factor",
    "point_sort_key",
]


class ImproperDarbouxPoint(ValueError):
    """The gradient vanishes along the direction (kappa = 0)."""


class NotEigenDirection(ValueError):
    pass


@dataclass(frozen=True)
class DarbouxPoint:
    coords: tuple
    residual_checked: bool = False


@dataclass(frozen=True)
class DarbouxDirection:
    coords: tuple
    kappa: object


@dataclass
class PDPSearch:
    points: list[DarbouxPoint]
    unresolved: list[str] = field(default_factory=list)
    degenerate: bool = False


@dataclass
class DirectionSearch:
    directions: list[DarbouxDirection]
    improper: list[tuple] = field(default_factory=list)
    unresolved: list[str] = field(default_factory=list)
    degenerate: bool = False


def point_sort_key(coords):
    return tuple(as_field(x).sort_key() if isinstance(as_field(x), GRat) else x.sort_key() for x in coords)


def verify_pdp(V: HomoPotential, c) -> list:
    """``grad V(c) - c``; the zero vector certifies a proper Darboux point."""
    c = [as_field(x) for x in c]
    if not any(c):
        raise ValueError("the zero vector is never a Darboux point")
    g = gradient_at(V, c)
    return [as_field(a - b) for a, b in zip(g, c)]


def eigen_factor(V: HomoPotential, d):
    """``kappa`` with ``grad V(d) = kappa d``."""
    d = [as_field(x) for x in d]
    if not any(d):
        raise ValueError("zero direction")
    g = gradient_at(V, d)
    j = next(i for i, x in enumerate(d) if x)
    kappa = as_field(g[j] / d[j])
    if any(as_field(gi - kappa * di) for gi, di in zip(g, d)):
        raise NotEigenDirection(f"grad V is not proportional to {[str(x) for x in d]}")
    if not kappa:
        raise ImproperDarbouxPoint(f"grad V vanishes at {[str(x) for x in d]}")
    return kappa


def hessian_at_direction(V: HomoPotential, d):
    """``(kappa, V''(d)/kappa)``, the Hessian at every PDP ``mu*d`` with ``mu**(k-2)*kappa = 1``."""
    kappa = eigen_factor(V, d)
    H = hessian_at(V, d)
    inv = 1 / kappa
    return kappa, [[as_field(x * inv) for x in row] for row in H]


# search in the plane


def _system(V: HomoPotential) -> tuple[MPoly, MPoly, list[MRat]]:
    g = gradient(V)
    x, y = MPoly.var(2, 0), MPoly.var(2, 1)
    P1 = g[0].num - x * g[0].den
    P2 = g[1].num - y * g[1].den
    return P1, P2, g


def _at(P: MPoly, var: int, value) -> UPoly:
    """``P`` as a univariate polynomial in ``1 - var`` after fixing ``var = value``."""
    coeffs = as_upoly_in(P, 1 - var)
    return UPoly(c(value) for c in coeffs)


def _roots_with_quadratics(f: UPoly):
    """Roots in Q(i) or a single quadratic extension, plus the factors left over."""
    roots, residual = roots_in_field(f)
    found = [r for r, _ in roots]
    left = []
    for g, m in residual:
        qs = quadratic_roots(g) if g.degree == 2 else None
        if qs:
            found.extend(as_field(q) for q in qs)
        else:
            left.append(g)
    return found, left


def _is_pole(V: HomoPotential, g: list[MRat], c) -> bool:
    try:
        if V.den is not None and not V.den(c):
            return True
        return any(not gi.den(c) for gi in g)
    except Exception:
        return True


def find_pdp_2d(V: HomoPotential) -> PDPSearch:
    """Solve ``grad V(c) = c`` in the plane by resultant elimination.

    Points with coordinates in Q(i) or in one quadratic extension are
    returned verified; univariate factors whose roots lie further out are
    listed in ``unresolved``.  A system with a curve of solutions sets
    ``degenerate``.
    """
    if V.n != 2:
        raise ValueError("find_pdp_2d handles n = 2 only")
    P1, P2, g = _system(V)
    elim, R = None, None
    for var in (0, 1):
        try:
            r = resultant(P1, P2, eliminate=var)
        except ValueError:
            continue
        if not r.is_zero():
            elim, R = var, r
            break
    if R is None:
        return PDPSearch([], [], degenerate=True)
    keep = 1 - elim
    names = ("q1", "q2")
    roots, left = _roots_with_quadratics(R)
    unresolved = [left_f.to_str(names[keep]) for left_f in left]
    points: dict = {}
    degenerate = False
    for r in roots:
        f1, f2 = _at(P1, keep, r), _at(P2, keep, r)
        h = poly_gcd(f1, f2)
        if h.is_zero():
            degenerate = True
            continue
        if h.degree == 0:
            continue
        xs, rest = _roots_with_quadratics(h)
        for f in rest:
            unresolved.append(f"{f.to_str(names[elim])} at {names[keep]} = {r}")
        for s in xs:
            c = [None, None]
            c[keep], c[elim] = r, s
            try:
                if not any(c) or _is_pole(V, g, c):
                    continue
            except Exception:
                continue
            res = verify_pdp(V, c)
            if any(res):
                raise ArithmeticError(f"elimination produced a non-solution {[str(x) for x in c]}")
            points[tuple(c)] = DarbouxPoint(tuple(c), residual_checked=True)
    ordered = sorted(points.values(), key=lambda p: point_sort_key(p.coords))
    return PDPSearch(ordered, unresolved, degenerate)


def _normalize_direction(d):
    d = [as_field(x) for x in d]
    j = next(i for i, x in enumerate(d) if x)
    inv = 1 / d[j]
    return tuple(as_field(x * inv) for x in d)


def find_directions_2d(V: HomoPotential) -> DirectionSearch:
    """Directions ``d`` with ``grad V(d) = kappa d`` from the binary form ``x*dV/dy - y*dV/dx``.

    Directions are normalized so their first nonzero coordinate is 1.
    Those with ``kappa = 0`` go to ``improper``.
    """
    if V.n != 2:
        raise ValueError("find_directions_2d handles n = 2 only")
    g = gradient(V)
    x, y = MRat(MPoly.var(2, 0)), MRat(MPoly.var(2, 1))
    B = (x * g[1] - y * g[0]).num
    if B.is_zero():
        return DirectionSearch([], degenerate=True)
    m = B.total_degree()
    b = _at(B, 0, GRat(1))
    cands = []
    if b.degree < m:
        cands.append((GRat(0), GRat(1)))
    ts, left = _roots_with_quadratics(b)
    cands.extend((GRat(1), t) for t in ts)
    unresolved = [f"{f.to_str('t')} (directions (1, t))" for f in left]
    directions, improper = [], []
    for d in cands:
        d = _normalize_direction(d)
        if _is_pole(V, g, d):
            continue
        try:
            kappa = eigen_factor(V, d)
        except ImproperDarbouxPoint:
            improper.append(d)
            continue
        directions.append(DarbouxDirection(d, kappa))
    directions.sort(key=lambda dd: point_sort_key(dd.coords))
    improper.sort(key=point_sort_key)
    return DirectionSearch(directions, improper, unresolved)


def scaling_roots(kappa, k: int) -> list:
    """Values ``mu`` in Q(i) with ``mu**(k-2) * kappa = 1``, sorted."""
    e = k - 2
    if e == 0:
        return [GRat(1)] if kappa == 1 else []
    kappa = as_field(kappa)
    if isinstance(kappa, Surd):
        if abs(e) == 1:
            return [as_field(1 / kappa if e == 1 else kappa)]
        return []
    target = 1 / kappa if e > 0 else kappa
    roots, _ = upoly_rational_roots(UPoly([-target] + [0] * (abs(e) - 1) + [1]))
    return [r for r, _ in roots]
