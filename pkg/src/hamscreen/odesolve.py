"""Rational solutions of f' + p f = q, the J^2 = T(f) test, and Jacobi polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F
from math import comb, factorial

from .exactnum.linalg import nullspace, solve_linear
from .exactnum.numbers import GRat, Surd, as_field
from .exactnum.upoly import RatFn, UPoly, poly_gcd, upoly_rational_roots

__all__ = [
    "Unsupported",
    "ODESolution",
    "JacobiParams",
    "rational_solve_first_order",
    "ode_residual",
    "gapoly_test",
    "gapoly_operator",
    "jacobi",
    "jacobi_ode_residual",
    "psi_rational_test",
]

Z = UPoly.x()


class Unsupported(ValueError):
    """``p`` has a higher-order pole or a residue outside Q(i)."""


@dataclass(frozen=True)
class ODESolution:
    particular: RatFn | None
    homogeneous: RatFn | None


def ode_residual(p: RatFn, q: RatFn, f: RatFn) -> RatFn:
    return f.derivative() + p * f - q


def _as_ratfn(x) -> RatFn:
    if isinstance(x, RatFn):
        return x
    if isinstance(x, UPoly):
        return RatFn(x)
    return RatFn(UPoly.const(x))


def _multiplicity(f: UPoly, poly: UPoly) -> int:
    m = 0
    while poly.degree >= f.degree and (poly % f).is_zero():
        poly = poly.exact_div(f)
        m += 1
    return m


def _place_factors(*polys: UPoly) -> list[UPoly]:
    """Monic, pairwise coprime factors covering the roots of all ``polys``: linear over Q(i), else residual."""
    out: list[UPoly] = []
    for poly in polys:
        if poly.degree <= 0:
            continue
        roots, residual = upoly_rational_roots(poly)
        cands = [UPoly([-r, 1]) for r, _ in roots] + [f for f, _ in residual]
        for c in cands:
            if any(poly_gcd(c, o).degree > 0 for o in out):
                # overlapping residual pieces: keep the common part and what is left
                for i, o in enumerate(out):
                    g = poly_gcd(c, o)
                    if g.degree > 0 and g.degree < o.degree:
                        out[i] = g
                        out.append(o.exact_div(g))
                    if g.degree > 0:
                        c = c.exact_div(g)
                if c.degree > 0:
                    out.append(c.monic())
            else:
                out.append(c.monic())
    return out


def _residue(p: RatFn, factor: UPoly):
    """Residue of ``p`` along a simple-pole factor, as a constant, or ``None`` if it varies."""
    rest = p.den.exact_div(factor)
    # residue at a root t of factor: num(t) / (factor'(t) * rest(t)), reduced modulo factor
    denom = (factor.derivative() * rest) % factor
    from .exactnum.upoly import poly_xgcd

    g, s, _ = poly_xgcd(denom, factor)
    if g.degree > 0:
        raise Unsupported("degenerate pole factor")
    val = (p.num * s) % factor
    if val.degree > 0:
        return None
    return val.coeff(0)


def _positive_integer(x) -> int | None:
    x = as_field(x)
    if isinstance(x, GRat) and x.im == 0 and x.re.denominator == 1 and x.re > 0:
        return int(x.re)
    return None


def _integer(x) -> int | None:
    x = as_field(x)
    if isinstance(x, GRat) and x.im == 0 and x.re.denominator == 1:
        return int(x.re)
    return None


def _denominator_bound(p: RatFn, q: RatFn) -> UPoly:
    D = UPoly([1])
    for f in _place_factors(p.den, q.den):
        mp = _multiplicity(f, p.den)
        mq = _multiplicity(f, q.den)
        if mp > 1:
            raise Unsupported(f"p has a pole of order {mp} along {f}")
        bound = max(mq - 1, 0)
        if mp == 1:
            rho = _residue(p, f)
            if rho is None:
                raise Unsupported(f"residue of p along {f} is not in Q(i)")
            n = _positive_integer(rho)
            if n is not None:
                bound = max(bound, n)
        D = D * f**bound
    return D


def _degree(r: RatFn):
    return None if r.is_zero() else r.num.degree - r.den.degree


def _infinity_bound(p: RatFn, q: RatFn) -> int | None:
    """Upper bound on ``deg f = deg num - deg den``; ``None`` means no nonzero solution."""
    dp, dq = _degree(p), _degree(q)
    bounds = []
    if dp is None or dp <= -2:
        if dq is not None:
            bounds.append(dq + 1)
        bounds.append(0)
    elif dp == -1:
        if dq is not None:
            bounds.append(dq + 1)
        rho_inf = p.num.lc / p.den.lc
        m = _integer(-as_field(rho_inf))
        if m is not None:
            bounds.append(m)
    else:
        if dq is not None:
            bounds.append(dq - dp)
    return max(bounds) if bounds else None


def _operator_columns(p: RatFn, D: UPoly, N: int):
    """Images of ``z^j / D`` under ``f -> f' + p f`` cleared by ``D^2 den(p)``."""
    cols = []
    dD = D.derivative()
    for j in range(N + 1):
        mono = UPoly([0] * j + [1])
        img = (mono.derivative() * D - mono * dD) * p.den + p.num * mono * D
        cols.append(img)
    return cols


def _canonicalize(f: RatFn, h: RatFn | None) -> RatFn:
    """Subtract a multiple of ``h`` so that ``f`` has the smallest denominator degree."""
    if h is None:
        return f
    cands = [GRat(0)]
    for r, _ in upoly_rational_roots(h.den)[0] if h.den.degree > 0 else []:
        lin = UPoly([-r, 1])
        mf, mh = _multiplicity(lin, f.den), _multiplicity(lin, h.den)
        if mf == mh and mf > 0:
            ef, eh = f.den.exact_div(lin**mf), h.den.exact_div(lin**mh)
            cf = f.num(r) / ef(r)
            ch = h.num(r) / eh(r)
            cands.append(as_field(cf / ch))
    if h.den.degree == 0:
        # polynomial homogeneous solution: cancel the top coefficient instead
        if f.den.degree == 0 and f.num.degree == h.num.degree and f.num.degree >= 0:
            cands.append(as_field(f.num.lc / h.num.lc))
    best = None
    for t in cands:
        g = f - h * t
        key = (g.den.degree, g.num.degree, t != 0, t.sort_key() if isinstance(t, GRat) else ())
        if best is None or key < best[0]:
            best = (key, g)
    return best[1]


def rational_solve_first_order(p, q) -> ODESolution:
    """Rational particular and homogeneous solutions of ``f' + p f = q``.

    Poles of a solution can only sit at poles of ``p`` or ``q``.  Along a
    simple pole of ``p`` with residue ``rho`` the order is at most
    ``max(order of q - 1, rho)`` where the second term counts only when
    ``rho`` is a positive integer.  The degree at infinity is bounded from
    the leading terms, then the numerator is found by undetermined
    coefficients.  Every returned function is checked by substitution.
    """
    p, q = _as_ratfn(p), _as_ratfn(q)
    D = _denominator_bound(p, q)
    mbound = _infinity_bound(p, q)
    hom_bound = _infinity_bound(p, RatFn(UPoly()))
    bounds = [b for b in (mbound, hom_bound) if b is not None]
    if not bounds:
        return ODESolution(None, None)
    N = max(bounds) + D.degree
    if N < 0:
        return ODESolution(None, None)
    cols = _operator_columns(p, D, N)
    rhs_poly = q.num * D * D * p.den
    # equation: sum c_j cols_j * q.den = rhs_poly  (everything over D^2 den(p) den(q))
    cols = [c * q.den for c in cols]
    size = max([c.degree for c in cols] + [rhs_poly.degree, 0]) + 1
    A = [[c.coeff(i) for c in cols] for i in range(size)]
    b = [rhs_poly.coeff(i) for i in range(size)]

    homogeneous = None
    kernel = nullspace(A)
    if kernel:
        if len(kernel) > 1:
            raise ArithmeticError("first-order equation with a multi-dimensional rational kernel")
        h = RatFn(UPoly(kernel[0]), D)
        if not ode_residual(p, RatFn(UPoly()), h).is_zero():
            raise ArithmeticError("homogeneous solution failed substitution")
        homogeneous = _normalize_homogeneous(h)

    particular = None
    if not q.is_zero():
        sol = solve_linear(A, b)
        if sol is not None:
            f = RatFn(UPoly(sol), D)
            f = _canonicalize(f, homogeneous)
            if not ode_residual(p, q, f).is_zero():
                raise ArithmeticError("particular solution failed substitution")
            particular = f
    else:
        particular = RatFn(UPoly())
    return ODESolution(particular, homogeneous)


def _normalize_homogeneous(h: RatFn) -> RatFn:
    lc = h.num.lc
    return RatFn(h.num * (1 / lc), h.den)


# J^2 = T(f)


def gapoly_operator(a, b) -> tuple[RatFn, RatFn]:
    """``p`` with ``T(f) = z(z-1)(f' + p f)``, and ``1/(z(z-1))``."""
    a, b = F(a), F(b)
    zz1 = Z * (Z - 1)
    return RatFn(Z * (2 * (a + b)) - 2 * a, zz1), RatFn(UPoly([1]), zz1)


def gapoly_test(a, b, J) -> RatFn | None:
    """A rational ``f`` with ``J^2 = z(z-1) f' + 2((a+b)z - a) f``, or ``None``."""
    J = J if isinstance(J, UPoly) else UPoly(J if isinstance(J, (list, tuple)) else [J])
    if not J(0) or not J(1):
        raise ValueError("J must not vanish at 0 or 1")
    p, w = gapoly_operator(a, b)
    q = w * RatFn(J * J)
    sol = rational_solve_first_order(p, q).particular
    return sol


def gapoly_T(a, b, f: RatFn) -> RatFn:
    p, _ = gapoly_operator(a, b)
    return RatFn(Z * (Z - 1)) * (f.derivative() + p * f)


# Jacobi polynomials


@dataclass(frozen=True)
class JacobiParams:
    n: int
    alpha: F
    beta: F

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")


def _falling(x: F, j: int) -> F:
    out = F(1)
    for i in range(j):
        out *= x - i
    return out


def jacobi(params: JacobiParams | None = None, *, n=None, alpha=None, beta=None) -> UPoly:
    """``P_n^{(alpha, beta)}`` by Leibniz expansion of the Rodrigues derivative.

    The n-th derivative of ``(t-1)^(alpha+n) (t+1)^(beta+n)`` is a sum of
    terms ``(t-1)^(alpha+j) (t+1)^(beta+n-j)``; the prefactor
    ``(t-1)^-alpha (t+1)^-beta`` leaves an honest polynomial.
    """
    if params is None:
        params = JacobiParams(n, F(alpha), F(beta))
    n, al, be = params.n, F(params.alpha), F(params.beta)
    tm, tp = UPoly([-1, 1]), UPoly([1, 1])
    total = UPoly()
    for j in range(n + 1):
        coeff = comb(n, j) * _falling(al + n, n - j) * _falling(be + n, j)
        if coeff:
            total = total + (tm**j) * (tp ** (n - j)) * coeff
    return total * F(1, 2**n * factorial(n))


def jacobi_ode_residual(n: int, alpha, beta, w: UPoly | None = None) -> UPoly:
    alpha, beta = F(alpha), F(beta)
    w = w if w is not None else jacobi(JacobiParams(n, alpha, beta))
    one_minus_t2 = UPoly([1, 0, -1])
    lin = UPoly([beta - alpha, -(alpha + beta + 2)])
    return one_minus_t2 * w.derivative().derivative() + lin * w.derivative() + w * (n * (alpha + beta + n + 1))


def psi_rational_test(k: int, p_idx: int) -> RatFn | None:
    """Rational solution of ``psi' + (1/k)(1/(1+t) + 1/(1-t)) psi = (1/k) J_p(t)^2``, or ``None``."""
    if k < 3 or p_idx < 0:
        raise ValueError("need k >= 3 and p >= 0")
    J = jacobi(JacobiParams(p_idx, F(-1, k), F(1, k)))
    one = UPoly([1])
    coef = F(1, k)
    p = (RatFn(one, UPoly([1, 1])) + RatFn(one, UPoly([1, -1]))) * coef
    q = RatFn(J * J) * coef
    return rational_solve_first_order(p, q).particular
