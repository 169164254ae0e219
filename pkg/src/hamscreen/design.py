"""Potentials with a prescribed Hessian, trace and isotropy tests, and Poisson brackets."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F
from itertools import combinations
from math import comb, lcm

from .exactnum.linalg import identity, matmul, matvec, solve_linear, trace
from .exactnum.mpoly import MPoly, monomials_of_degree
from .exactnum.numbers import GRat, as_field
from .homopot import HomoPotential, gradient_at, parse_expression

__all__ = [
    "ConstraintViolation",
    "HypothesisViolation",
    "DesignProblem",
    "dims",
    "design_potential",
    "spec_trace_check",
    "isotropy",
    "w_condition",
    "poisson_bracket",
    "parse_phase_function",
    "SUBSET_BUDGET",
]

SUBSET_BUDGET = 4000


class ConstraintViolation(ValueError):
    pass


class HypothesisViolation(ValueError):
    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("; ".join(problems))


def dims(n: int, k: int) -> tuple[int, int, int, int]:
    """Dimensions of degree-k forms, of those with a fixed Darboux point, of Sym_n, and of Sym_{n,k}(c)."""
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    r = comb(n + k - 1, n - 1)
    s = comb(n + 1, 2)
    return r, r - n, s, s - n


@dataclass(frozen=True)
class DesignProblem:
    n: int
    k: int
    c: tuple
    A: tuple

    @classmethod
    def build(cls, c, A, k: int) -> "DesignProblem":
        c = tuple(as_field(x) for x in c)
        A = tuple(tuple(as_field(x) for x in row) for row in A)
        n = len(c)
        if not any(c):
            raise ConstraintViolation("c must be nonzero")
        if len(A) != n or any(len(r) != n for r in A):
            raise ConstraintViolation("A must be n x n with n = len(c)")
        for i in range(n):
            for j in range(i + 1, n):
                if A[i][j] != A[j][i]:
                    raise ConstraintViolation(f"A is not symmetric at ({i + 1}, {j + 1})")
        Ac = matvec([list(r) for r in A], c)
        if any(as_field(a - (k - 1) * x) for a, x in zip(Ac, c)):
            raise ConstraintViolation(f"A c != (k-1) c: A c = {[str(x) for x in Ac]}")
        return cls(n, k, c, A)


def _monomial_value(e, c, skip=()):
    """Value at ``c`` of the derivative of ``q^e`` with respect to the variables in ``skip``."""
    e = list(e)
    coef = 1
    for i in skip:
        if e[i] == 0:
            return GRat(0)
        coef *= e[i]
        e[i] -= 1
    val = GRat(coef)
    for i, p in enumerate(e):
        if p:
            val = val * c[i] ** p
    return as_field(val)


def _gauss_int_rows(M, b):
    """Rows of ``[M | b]`` scaled to Gaussian integers ``(re, im)``, or None for non-GRat entries."""
    out = []
    for row, rhs in zip(M, b):
        vals = list(row) + [rhs]
        if not all(isinstance(x, GRat) for x in vals):
            return None
        den = 1
        for x in vals:
            den = lcm(den, x.re.denominator, x.im.denominator)
        out.append([(int(x.re * den), int(x.im * den)) for x in vals])
    return out


def _consistent(rows, cols) -> bool:
    """Fraction-free elimination: is the rhs in the span of the chosen columns?"""
    work = [[r[j] for j in cols] + [r[-1]] for r in rows]
    work = [r for r in work if any(a or b for a, b in r)]
    for col in range(len(cols)):
        piv = next((r for r in work if r[col] != (0, 0)), None)
        if piv is None:
            continue
        work.remove(piv)
        pr, pi = piv[col]
        nxt = []
        for r in work:
            xr, xi = r[col]
            if xr or xi:
                # r <- pivot_value * r - r[col] * piv
                r = [
                    (pr * a - pi * b - (xr * c - xi * d), pr * b + pi * a - (xr * d + xi * c))
                    for (a, b), (c, d) in zip(r, piv)
                ]
            if any(a or b for a, b in r):
                nxt.append(r)
        work = nxt
    return not work


def _support_solution(M, b, cols):
    sub = [[row[j] for j in cols] for row in M]
    return solve_linear(sub, b)


def design_potential(c, A, k: int, budget: int = SUBSET_BUDGET) -> HomoPotential:
    """A degree-k polynomial with ``V'(c) = c`` and ``V''(c) = A``.

    The conditions are linear in the monomial coefficients.  Among the
    solutions the one with fewest monomials is returned, ties broken by
    graded-lex order of the supports; when the exhaustive support search
    would exceed ``budget`` candidate supports, the reduced-echelon
    solution (free coefficients zero, pivots as early as possible in
    graded-lex order) is used instead.
    """
    if k < 3:
        raise ValueError("design needs k >= 3")
    prob = DesignProblem.build(c, A, k)
    n, c = prob.n, prob.c
    mons = monomials_of_degree(n, k)
    M, b = [], []
    for i in range(n):
        M.append([_monomial_value(e, c, (i,)) for e in mons])
        b.append(c[i])
    for i in range(n):
        for j in range(i, n):
            M.append([_monomial_value(e, c, (i, j)) for e in mons])
            b.append(prob.A[i][j])
    base = solve_linear(M, b)
    if base is None:
        raise ArithmeticError("the Hessian-map system is inconsistent")
    best = [j for j, x in enumerate(base) if x]
    best_sol = base
    checked = 0
    done = False
    rows = _gauss_int_rows(M, b)
    for size in range(1, len(best)):
        if comb(len(mons), size) + checked > budget:
            break
        for cols in combinations(range(len(mons)), size):
            checked += 1
            if rows is not None and not _consistent(rows, cols):
                continue
            sol = _support_solution(M, b, cols)
            if sol is not None and all(sol):
                best_sol = [GRat(0)] * len(mons)
                for j, x in zip(cols, sol):
                    best_sol[j] = x
                done = True
                break
        if done:
            break
    poly = MPoly(n, {e: x for e, x in zip(mons, best_sol) if x})
    V = HomoPotential(n, k, poly, None)
    # exact post-conditions
    if any(as_field(g - x) for g, x in zip(gradient_at(V, c), c)):
        raise ArithmeticError("designed potential misses V'(c) = c")
    return V


def spec_trace_check(A, k: int) -> bool:
    """``(1/n) tr A^p == (k-1)^p`` for ``p = 1..n``."""
    n = len(A)
    P = identity(n)
    for p in range(1, n + 1):
        P = matmul(P, A)
        if as_field(trace(P) / n) != GRat(F(k - 1) ** p):
            return False
    return True


def isotropy(c) -> GRat:
    total = GRat(0)
    for x in c:
        total = total + as_field(x) * as_field(x)
    return as_field(total)


C0 = (GRat(1), GRat(0, 1))


def w_condition(W: HomoPotential):
    """``i dW/dq1(c0) + dW/dq2(c0)`` at ``c0 = (1, i)`` for ``V = (q1^2 + q2^2) W``."""
    problems = []
    if W.n != 2:
        problems.append(f"W must have n = 2, got n = {W.n}")
    if W.k in (-4, -2, -1, 0):
        problems.append(f"deg W = {W.k} is excluded (must avoid -4, -2, -1, 0)")
    if W.n == 2:
        if W.den is not None and not W.den(C0):
            problems.append("W has a pole at c0 = (1, i)")
        elif not W(C0):
            problems.append("W(c0) = 0 at c0 = (1, i)")
    if problems:
        raise HypothesisViolation(problems)
    g = gradient_at(W, C0)
    return as_field(GRat(0, 1) * g[0] + g[1])


def parse_phase_function(text: str, n: int | None = None) -> MPoly:
    """Polynomial in ``q1..qn, p1..pn`` (variables ordered q first, then p)."""
    r = parse_expression(text, n=n, prefixes=("q", "p"))
    if not r.is_polynomial():
        raise ValueError("phase functions must be polynomials")
    return r.num


def poisson_bracket(Fp: MPoly, Gp: MPoly) -> MPoly:
    """``sum_i dF/dq_i dG/dp_i - dF/dp_i dG/dq_i`` for polynomials in ``(q, p)``."""
    if Fp.n != Gp.n or Fp.n % 2:
        raise ValueError("phase functions must share an even number of variables")
    n = Fp.n // 2
    out = MPoly(Fp.n)
    for i in range(n):
        out = out + Fp.diff(i) * Gp.diff(n + i) - Fp.diff(n + i) * Gp.diff(i)
    return out


def phase_str(P: MPoly) -> str:
    n = P.n // 2
    names = [f"q{i + 1}" for i in range(n)] + [f"p{i + 1}" for i in range(n)]
    return P.to_str(names)
