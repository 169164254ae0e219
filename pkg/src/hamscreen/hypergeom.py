"""Reduced variational equation: coefficients, Riemann scheme, L4 exponents and the affine L4 test."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

from .exactnum.linalg import solve_linear
from .exactnum.numbers import GRat, Surd, as_field, format_rat, gsqrt, is_rational_value, surd_normalize, to_fraction
from .exactnum.upoly import RatFn, UPoly

__all__ = [
    "VECoefficients",
    "RiemannScheme",
    "ExponentSet",
    "ExponentDifferences",
    "NoSolution",
    "Solution",
    "tau_squared",
    "tau_value",
    "ve_coeffs",
    "riemann_scheme",
    "exponent_differences",
    "l4_exponents",
    "l4_degree1_test",
]

Z = UPoly.x()


def _check_k(k) -> int:
    if int(k) != k or int(k) == 0:
        raise ValueError(f"k must be a nonzero integer, got {k}")
    return int(k)


def _lam(lam):
    if isinstance(lam, (int, F)):
        return F(lam)
    lam = as_field(lam)
    if isinstance(lam, Surd):
        raise ValueError("lambda must lie in Q(i)")
    return lam.re if lam.im == 0 else lam


def tau_squared(k: int, lam):
    """``((k-2)^2 + 8 k lam) / (4 k^2)``."""
    k = _check_k(k)
    lam = _lam(lam)
    val = ((k - 2) ** 2 + 8 * k * lam) / (4 * k * k)
    return val if isinstance(val, F) else as_field(val)


def tau_value(k: int, lam):
    """The principal square root of ``tau^2``: Fraction, GRat or Surd; ``None`` outside one quadratic extension."""
    t2 = tau_squared(k, lam)
    if isinstance(t2, F):
        s = surd_normalize(0, 1, t2)
        if not s.v and s.u.im == 0:
            return s.u.re
        return as_field(s)
    return gsqrt(t2)


@dataclass(frozen=True)
class VECoefficients:
    k: int
    lam: object
    rho: F
    sigma: F
    tau0: F
    tau2: object
    tau: object
    p_z: RatFn
    s_z: RatFn
    r0_z: RatFn
    r_z: RatFn
    a_pow: F
    b_pow: F


def _r_from(rho, sigma, tau2) -> RatFn:
    z, one = RatFn(Z), RatFn(UPoly([1]))
    zm1 = RatFn(Z - 1)
    c = 1 - rho * rho - sigma * sigma + tau2
    return (
        (rho * rho - 1) / (4 * z * z)
        + (sigma * sigma - 1) / (4 * zm1 * zm1)
        - (one / z + one / (1 - z)) * (F(1, 4) * c if isinstance(c, F) else as_field(c) * F(1, 4))
    )


def ve_coeffs(k: int, lam) -> VECoefficients:
    k = _check_k(k)
    lam = _lam(lam)
    rho, sigma, tau0 = F(1, k), F(1, 2), F(k - 2, 2 * k)
    zz1 = Z * (Z - 1)
    p_z = RatFn(UPoly([-2 * (k - 1)]) + Z * (3 * k - 2), zz1 * (2 * k))
    s_z = RatFn(UPoly([1]), zz1 * (2 * k))
    r0_z = _r_from(rho, sigma, tau0 * tau0)
    tau2 = tau_squared(k, lam)
    r_z = _r_from(rho, sigma, tau2)
    return VECoefficients(
        k, lam, rho, sigma, tau0, tau2, tau_value(k, lam), p_z, s_z, r0_z, r_z, F(-(k - 1), 2 * k), F(-1, 4)
    )


def _half(x):
    return x / 2 if isinstance(x, F) else as_field(as_field(x) * F(1, 2))


def _neg(x):
    return -x if isinstance(x, F) else as_field(-as_field(x))


@dataclass(frozen=True)
class RiemannScheme:
    at0: tuple
    at1: tuple
    atinf: tuple

    def fuchs_sum(self):
        total = as_field(0)
        for e in self.at0 + self.at1 + self.atinf:
            total = as_field(total + e)
        return total


def riemann_scheme(k: int, lam) -> RiemannScheme:
    k = _check_k(k)
    tau = tau_value(k, lam)
    if tau is None:
        raise ValueError("tau is not in a single quadratic extension of Q(i)")
    inf = (_half(_neg(1 + tau) if isinstance(tau, F) else as_field(-1 - tau)), _half(-1 + tau if isinstance(tau, F) else as_field(-1 + tau)))
    scheme = RiemannScheme(
        (F(1, 2) - F(1, 2 * k), F(1, 2) + F(1, 2 * k)),
        (F(1, 4), F(3, 4)),
        inf,
    )
    if scheme.fuchs_sum() != 1:
        raise ArithmeticError("Fuchs relation violated")
    return scheme


@dataclass(frozen=True)
class ExponentDifferences:
    delta0: F
    delta1: F
    delta_inf: object
    delta_inf_reduced: F | None


def exponent_differences(k: int, lam) -> ExponentDifferences:
    k = _check_k(k)
    tau = tau_value(k, lam)
    if isinstance(tau, F):
        d_inf = abs(tau)
        reduced = d_inf - (d_inf.numerator // d_inf.denominator)
    else:
        if isinstance(tau, Surd) and tau.is_real():
            d_inf = tau if tau.sign() >= 0 else -tau
        else:
            d_inf = tau
        reduced = None
    return ExponentDifferences(abs(F(1, k)), F(1, 2), d_inf, reduced)


@dataclass(frozen=True)
class ExponentSet:
    at0: tuple
    at1: tuple
    atinf: tuple


def l4_exponents(k: int, lam) -> ExponentSet:
    """Exponents ``{1, 2, 2e0}``, ``{1, 2, 2e1}``, ``{-1, -1, 2einf}`` with ``e`` the L2 exponents."""
    rs = riemann_scheme(k, lam)

    def double(xs):
        return tuple(2 * x if isinstance(x, F) else as_field(2 * x) for x in xs)

    return ExponentSet(
        (F(1), F(2)) + double(rs.at0),
        (F(1), F(2)) + double(rs.at1),
        (F(-1), F(-1)) + double(rs.atinf),
    )


@dataclass(frozen=True)
class NoSolution:
    def to_json(self):
        return {"solution": None}


@dataclass(frozen=True)
class Solution:
    d: GRat
    c: GRat

    def to_json(self):
        return {"solution": {"d": str(self.d), "c": str(self.c)}}


def l4_identity_parts(k: int, lam) -> tuple[RatFn, RatFn]:
    """``(G0, G1)`` with ``z(z-1)(2r + r'(z+d)) = G0 + d*G1``."""
    r = ve_coeffs(k, lam).r_z
    zz1 = RatFn(Z * (Z - 1))
    dr = r.derivative()
    return zz1 * (2 * r + dr * RatFn(Z)), zz1 * dr


def l4_degree1_test(k: int, lam):
    """Decide whether ``v = z + d`` solves ``L4(v) = 0`` for some constant ``d``.

    ``L4(z + d) = 0`` exactly when ``z(z-1)(2r + r'(z+d))`` is a constant
    ``c``; both unknowns enter linearly, so this is a small linear system
    over the coefficients of the cleared numerator.
    """
    k = _check_k(k)
    if not is_rational_value(lam if not isinstance(lam, (int, F)) else F(lam)):
        raise ValueError("the affine L4 test expects a rational lambda")
    G0, G1 = l4_identity_parts(k, to_fraction(lam) if not isinstance(lam, (int, F)) else lam)
    den = G0.den * G1.den
    N0 = G0.num * G1.den
    N1 = G1.num * G0.den
    # N0 + d*N1 - c*den = 0 coefficientwise
    size = max(N0.degree, N1.degree, den.degree) + 1
    rows, rhs = [], []
    for j in range(size):
        rows.append([N1.coeff(j), -den.coeff(j)])
        rhs.append(-N0.coeff(j))
    sol = solve_linear(rows, rhs)
    if sol is None:
        return NoSolution()
    d, c = sol
    check = G0 + G1 * d
    if not check.is_constant() or check.constant_value() != c:
        raise ArithmeticError("affine L4 witness failed resubstitution")
    return Solution(as_field(d), as_field(c))


def exponent_str(x) -> str:
    if isinstance(x, F):
        return format_rat(x)
    return str(x)
