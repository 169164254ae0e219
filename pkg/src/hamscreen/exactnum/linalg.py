"""Dense exact linear algebra over Q(i) and Q(i)(sqrt d)."""
from __future__ import annotations

from .numbers import GRat, as_field

__all__ = [
    "Matrix",
    "identity",
    "matmul",
    "matsub",
    "matadd",
    "scale",
    "mat_eq",
    "is_zero_matrix",
    "rref",
    "rank",
    "solve_linear",
    "nullspace",
    "trace",
    "transpose",
    "matvec",
]

Matrix = list[list]


def identity(n: int, c=1) -> Matrix:
    c = as_field(c)
    return [[c if i == j else GRat(0) for j in range(n)] for i in range(n)]


def as_matrix(rows) -> Matrix:
    return [[as_field(x) for x in row] for row in rows]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in cols:
            acc = GRat(0)
            for a, b in zip(row, col):
                if a and b:
                    acc = acc + a * b
            out_row.append(as_field(acc))
        out.append(out_row)
    return out


def matvec(A: Matrix, v) -> list:
    out = []
    for row in A:
        acc = GRat(0)
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(as_field(acc))
    return out


def matadd(A: Matrix, B: Matrix) -> Matrix:
    return [[as_field(a + b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matsub(A: Matrix, B: Matrix) -> Matrix:
    return [[as_field(a - b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(A: Matrix, c) -> Matrix:
    return [[as_field(a * c) for a in row] for row in A]


def trace(A: Matrix):
    acc = GRat(0)
    for i in range(len(A)):
        acc = acc + A[i][i]
    return as_field(acc)


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(a == b for a, b in zip(ra, rb)) for ra, rb in zip(A, B)
    )


def is_zero_matrix(A: Matrix) -> bool:
    return all(not x for row in A for x in row)


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(row) for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = 1 / M[r][c]
        M[r] = [as_field(x * inv) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [as_field(a - f * b) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def solve_linear(A: Matrix, b: list):
    """Particular solution of ``A x = b`` with free variables set to zero, or ``None``."""
    cols = len(A[0]) if A else 0
    aug = [list(row) + [as_field(bi)] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    if cols in piv:
        return None
    x = [GRat(0)] * cols
    for i, c in enumerate(piv):
        x[c] = R[i][cols]
    return x


def nullspace(A: Matrix) -> list[list]:
    """Basis of the right kernel, one vector per free column."""
    cols = len(A[0]) if A else 0
    R, piv = rref(A)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [GRat(0)] * cols
        v[f] = GRat(1)
        for i, c in enumerate(piv):
            v[c] = as_field(-R[i][f])
        basis.append(v)
    return basis
