"""Exact eigenvalues and Jordan block sizes of (complex symmetric) matrices."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .exactnum.linalg import identity, matmul, matsub, rank, scale, trace
from .exactnum.numbers import GRat, Surd, as_field, format_rat
from .exactnum.upoly import UPoly, poly_xgcd, roots_in_field

__all__ = [
    "EigenClass",
    "ZeroDivisorSplit",
    "sym_matrix",
    "matrix_from_json",
    "matrix_to_json",
    "char_poly",
    "eigen_classes",
    "jordan_blocks",
    "jordan_structure",
]


class ZeroDivisorSplit(ArithmeticError):
    """A zero divisor showed up in F[t]/(m); ``factor`` is a proper factor of ``m``."""

    def __init__(self, factor: UPoly):
        self.factor = factor
        super().__init__(f"minimal polynomial splits off {factor}")


@dataclass(frozen=True)
class EigenClass:
    """An explicit eigenvalue, or all roots of ``min_poly`` treated as one class.

    ``multiplicity`` is the total algebraic multiplicity of the class
    (degree of ``min_poly`` times the multiplicity of each root).
    """

    value: object = None
    min_poly: UPoly | None = None
    multiplicity: int = 1

    @property
    def is_algebraic(self) -> bool:
        return self.min_poly is not None

    @property
    def root_multiplicity(self) -> int:
        return self.multiplicity // self.min_poly.degree if self.min_poly is not None else self.multiplicity

    def label(self) -> str:
        if self.min_poly is not None:
            return f"root of {self.min_poly.to_str('x')}"
        return str(self.value)

    def sort_key(self):
        if self.min_poly is not None:
            return (2, self.min_poly.degree, self.min_poly.to_str("x"))
        v = as_field(self.value)
        return (0,) + v.sort_key() if isinstance(v, GRat) else (1,) + v.sort_key()


def sym_matrix(rows) -> list[list]:
    A = [[as_field(x) for x in row] for row in rows]
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if A[i][j] != A[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i + 1}, {j + 1})")
    return A


def _scalar_from_json(x):
    from .exactnum.numbers import parse_rat

    if isinstance(x, dict):
        if "d" in x:
            from .exactnum.numbers import surd_normalize

            u = GRat(parse_rat(x.get("u", "0")), parse_rat(x.get("ui", "0")))
            v = GRat(parse_rat(x.get("v", "0")), parse_rat(x.get("vi", "0")))
            return as_field(surd_normalize(u, v, parse_rat(x["d"])))
        return GRat(parse_rat(x.get("re", "0")), parse_rat(x.get("im", "0")))
    return GRat(parse_rat(x))


def scalar_to_json(x):
    x = as_field(x)
    if isinstance(x, Surd):
        out = {"u": format_rat(x.u.re), "v": format_rat(x.v.re), "d": str(x.d)}
        if x.u.im:
            out["ui"] = format_rat(x.u.im)
        if x.v.im:
            out["vi"] = format_rat(x.v.im)
        return out
    return {"re": format_rat(x.re), "im": format_rat(x.im)}


def matrix_from_json(doc) -> list[list]:
    if isinstance(doc, str):
        doc = json.loads(doc)
    if isinstance(doc, dict):
        n = int(doc["n"])
        rows = doc["entries"]
    else:
        rows = doc
        n = len(rows)
    A = sym_matrix([[_scalar_from_json(x) for x in row] for row in rows])
    if len(A) != n:
        raise ValueError(f"declared n = {n} but the matrix has {len(A)} rows")
    return A


def matrix_to_json(A) -> dict:
    return {"n": len(A), "entries": [[scalar_to_json(x) for x in row] for row in A]}


def char_poly(A) -> UPoly:
    """Monic ``det(x I - A)`` by the Faddeev-LeVerrier recursion."""
    n = len(A)
    coeffs = [GRat(0)] * (n + 1)
    coeffs[n] = GRat(1)
    M = [[GRat(0)] * n for _ in range(n)]
    c = GRat(1)
    for k in range(1, n + 1):
        M = matmul(A, M)
        M = [[as_field(M[i][j] + (c if i == j else 0)) for j in range(n)] for i in range(n)]
        AM = matmul(A, M)
        c = as_field(-trace(AM) / k)
        coeffs[n - k] = c
    return UPoly(coeffs)


def eigen_classes(A) -> list[EigenClass]:
    cp = char_poly(A)
    roots, residual = roots_in_field(cp)
    out = [EigenClass(value=r, multiplicity=m) for r, m in roots]
    out.extend(EigenClass(min_poly=f, multiplicity=f.degree * m) for f, m in residual)
    out.sort(key=EigenClass.sort_key)
    return out


# rank over F[t]/(m)


def _reduce(p: UPoly, m: UPoly) -> UPoly:
    return p % m if p.degree >= m.degree else p


def _inverse_mod(a: UPoly, m: UPoly) -> UPoly:
    g, s, _ = poly_xgcd(a, m)
    if g.degree > 0:
        raise ZeroDivisorSplit(g)
    return _reduce(s, m)


def _rank_quotient(B: list[list[UPoly]], m: UPoly) -> int:
    M = [[_reduce(x, m) for x in row] for row in B]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if not M[i][c].is_zero()), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = _inverse_mod(M[r][c], m)
        M[r] = [_reduce(x * inv, m) for x in M[r]]
        for i in range(r + 1, rows):
            if not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [_reduce(a - f * b, m) for a, b in zip(M[i], M[r])]
        r += 1
    return r


def _poly_matmul(A, B, m):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(len(B[0])):
            acc = UPoly()
            for k in range(len(B)):
                if not A[i][k].is_zero() and not B[k][j].is_zero():
                    acc = acc + A[i][k] * B[k][j]
            row.append(_reduce(acc, m))
        out.append(row)
    return out


def _blocks_from_ranks(ranks: list[int]) -> list[int]:
    # ranks[m] = rank((A - lambda)^m), ranks[0] = n; at least size m blocks: ranks[m-1] - ranks[m]
    at_least = [ranks[m - 1] - ranks[m] for m in range(1, len(ranks))] + [0]
    sizes = []
    for m in range(1, len(at_least)):
        exact = at_least[m - 1] - at_least[m]
        sizes.extend([m] * exact)
    return sorted(sizes, reverse=True)


def _rank_sequence(rank_of_power, n: int) -> list[int]:
    ranks = [n]
    while True:
        r = rank_of_power(len(ranks))
        ranks.append(r)
        if r == ranks[-2] or r == 0:
            break
    return ranks


def jordan_blocks(A, eig) -> list[int]:
    """Block sizes (descending) for an explicit eigenvalue or one root of an algebraic class.

    For an algebraic class the sizes describe each conjugate root; they
    sum to ``root_multiplicity``.  Raises :class:`ZeroDivisorSplit` when
    the class polynomial turns out to be reducible.
    """
    n = len(A)
    if isinstance(eig, EigenClass) and eig.is_algebraic:
        m = eig.min_poly
        t = UPoly.x()
        B = [[UPoly.const(A[i][j]) - (t if i == j else UPoly()) for j in range(n)] for i in range(n)]
        powers = {1: B}

        def rank_of_power(p):
            if p not in powers:
                powers[p] = _poly_matmul(powers[p - 1], B, m)
            return _rank_quotient(powers[p], m)

    else:
        lam = as_field(eig.value if isinstance(eig, EigenClass) else eig)
        B = matsub(A, identity(n, lam))
        powers = {1: B}

        def rank_of_power(p):
            if p not in powers:
                powers[p] = matmul(powers[p - 1], B)
            return rank(powers[p])

    ranks = _rank_sequence(rank_of_power, n)
    if ranks[1] == n:
        raise ValueError(f"{eig.label() if isinstance(eig, EigenClass) else eig} is not an eigenvalue")
    return _blocks_from_ranks(ranks)


def jordan_structure(A) -> list[tuple[EigenClass, list[int]]]:
    """Every eigen class with its block sizes, splitting algebraic classes when needed."""
    todo = list(eigen_classes(A))
    done = []
    while todo:
        cls = todo.pop(0)
        try:
            done.append((cls, jordan_blocks(A, cls)))
        except ZeroDivisorSplit as split:
            g = split.factor.monic()
            h = cls.min_poly.exact_div(g).monic()
            per_root = cls.root_multiplicity
            for f in (g, h):
                if f.degree == 1:
                    todo.append(EigenClass(value=as_field(-f.coeffs[0]), multiplicity=per_root))
                else:
                    todo.append(EigenClass(min_poly=f, multiplicity=f.degree * per_root))
    done.sort(key=lambda cb: cb[0].sort_key())
    return done


def block_counter(blocks) -> Counter:
    return Counter(blocks)
