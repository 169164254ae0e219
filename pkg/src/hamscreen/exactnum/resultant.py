"""Sylvester resultants of bivariate polynomials."""
from __future__ import annotations

from .mpoly import MPoly
from .upoly import UPoly

__all__ = ["resultant", "as_upoly_in", "bareiss_det"]


def as_upoly_in(P: MPoly, var: int) -> list[UPoly]:
    """Coefficients of ``P`` (two variables) as a polynomial in ``var``.

    Entry ``j`` of the result is the coefficient of ``var**j``, itself a
    univariate polynomial in the other variable.
    """
    if P.n != 2:
        raise ValueError("resultant expects polynomials in exactly two variables")
    other = 1 - var
    deg = P.degree_in(var)
    out = [dict() for _ in range(deg + 1)]
    for e, c in P.terms.items():
        out[e[var]][e[other]] = c
    return [UPoly([d.get(i, 0) for i in range(max(d, default=-1) + 1)]) for d in out]


def bareiss_det(M: list[list[UPoly]]) -> UPoly:
    """Fraction-free determinant of a square matrix with polynomial entries."""
    n = len(M)
    if n == 0:
        return UPoly([1])
    A = [list(row) for row in M]
    sign = 1
    prev = UPoly([1])
    for k in range(n - 1):
        if A[k][k].is_zero():
            for r in range(k + 1, n):
                if not A[r][k].is_zero():
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return UPoly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]).exact_div(prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def resultant(P: MPoly, Q: MPoly, eliminate: int = 0) -> UPoly:
    """``Res_var(P, Q)`` as the Sylvester determinant, a polynomial in the other variable.

    ``eliminate`` is the index (0 or 1) of the variable removed.
    """
    if P.is_zero() or Q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    p = as_upoly_in(P, eliminate)
    q = as_upoly_in(Q, eliminate)
    m, n = len(p) - 1, len(q) - 1
    if m == 0 and n == 0:
        raise ValueError("both polynomials are constant in the eliminated variable")
    size = m + n
    zero = UPoly()
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    return bareiss_det(rows)
