"""The 21-row table of admissible (k, lambda) pairs and their group types."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction as F

from .exactnum.numbers import GRat, Surd, as_field, is_rational_value, rat_sqrt, to_fraction

__all__ = [
    "GroupType",
    "TableRow",
    "TableMatch",
    "ROWS",
    "TableError",
    "GaFiniteConflict",
    "lambda_of",
    "lookup",
    "symmetry_image",
    "galois_type",
    "paired_row",
]


class GroupType(str, Enum):
    AnyAbelian = "AnyAbelian"
    Ga = "Ga"
    CyclicDihedral = "CyclicDihedral"
    Dihedral = "Dihedral"
    Tetrahedral = "Tetrahedral"
    Octahedral = "Octahedral"
    Icosahedral = "Icosahedral"

    @property
    def is_finite(self) -> bool:
        return self not in (GroupType.AnyAbelian, GroupType.Ga)


class TableError(ValueError):
    pass


class GaFiniteConflict(TableError):
    """A pair matched both a Ga row and a finite-group row."""


@dataclass(frozen=True)
class TableRow:
    row: int
    k: int | None  # fixed degree, or None for the |k| >= 3 rows
    group: GroupType
    a2: object = 0  # family a2(k) p^2 + a1(k) p + a0(k); callables of k or constants
    a1: object = 0
    a0: object = 0
    exclusions: frozenset = frozenset()
    has_p: bool = True

    def accepts_k(self, k: int) -> bool:
        if self.row == 1:
            return k in (2, -2)
        if self.k is None:
            return abs(k) >= 3
        return k == self.k

    def coefficients(self, k: int) -> tuple[F, F, F]:
        return tuple(F(c(k)) if callable(c) else F(c) for c in (self.a2, self.a1, self.a0))

    def value(self, k: int, p: int) -> F:
        a2, a1, a0 = self.coefficients(k)
        return a2 * p * p + a1 * p + a0


def _square_row(row, k, group, A, B, alpha, beta):
    # lambda = A + B (alpha + beta p)^2
    A, B = F(A), F(B)
    return TableRow(row, k, group, B * beta * beta, 2 * B * alpha * beta, A + B * alpha * alpha)


G = GroupType
ROWS: dict[int, TableRow] = {
    r.row: r
    for r in [
        TableRow(1, None, G.AnyAbelian, has_p=False),
        TableRow(2, None, G.Ga, lambda k: F(k, 2), lambda k: 1 - F(k, 2), 0),
        TableRow(3, 1, G.Ga, F(1, 2), F(1, 2), 0, frozenset({-1, 0})),
        TableRow(4, -1, G.Ga, F(-1, 2), F(3, 2), 0, frozenset({1, 2})),
        TableRow(5, 1, G.CyclicDihedral, 0, 0, 0, has_p=False),
        TableRow(6, -1, G.CyclicDihedral, 0, 0, 1, has_p=False),
        TableRow(7, None, G.Dihedral, lambda k: F(k, 2), lambda k: F(k, 2), lambda k: F(k - 1, 2 * k)),
        _square_row(8, 3, G.Tetrahedral, F(-1, 24), F(1, 6), 1, 3),
        _square_row(9, 3, G.Octahedral, F(-1, 24), F(3, 32), 1, 4),
        _square_row(10, 3, G.Icosahedral, F(-1, 24), F(3, 50), 1, 5),
        _square_row(11, 3, G.Icosahedral, F(-1, 24), F(3, 50), 2, 5),
        _square_row(12, -3, G.Tetrahedral, F(25, 24), F(-1, 6), 1, 3),
        _square_row(13, -3, G.Octahedral, F(25, 24), F(-3, 32), 1, 4),
        _square_row(14, -3, G.Icosahedral, F(25, 24), F(-3, 50), 1, 5),
        _square_row(15, -3, G.Icosahedral, F(25, 24), F(-3, 50), 2, 5),
        _square_row(16, 4, G.Octahedral, F(-1, 8), F(2, 9), 1, 3),
        _square_row(17, -4, G.Octahedral, F(9, 8), F(-2, 9), 1, 3),
        _square_row(18, 5, G.Icosahedral, F(-9, 40), F(5, 18), 1, 3),
        _square_row(19, 5, G.Icosahedral, F(-9, 40), F(1, 10), 2, 5),
        _square_row(20, -5, G.Icosahedral, F(49, 40), F(-5, 18), 1, 3),
        _square_row(21, -5, G.Icosahedral, F(49, 40), F(-1, 10), 2, 5),
    ]
}

# rows exchanged by (k, lambda) -> (-k, 1 - lambda); True when p maps to 1 - p
_PAIRS = {2: (2, True), 3: (4, True), 4: (3, True), 5: (6, False), 6: (5, False), 7: (7, False)}
for _a, _b in [(8, 12), (9, 13), (10, 14), (11, 15), (16, 17), (18, 20), (19, 21)]:
    _PAIRS[_a] = (_b, False)
    _PAIRS[_b] = (_a, False)


def paired_row(row: int, p: int | None) -> tuple[int, int | None]:
    """Row and parameter of the symmetry image of a table member."""
    if row == 1:
        return 1, None
    other, flip = _PAIRS[row]
    if p is None:
        return other, None
    return other, (1 - p if flip else p)


@dataclass(frozen=True)
class TableMatch:
    row: int
    p: int | None
    group: GroupType

    def to_json(self) -> dict:
        return {"row": self.row, "p": self.p, "group": self.group.value}


def _check_k(k) -> int:
    if int(k) != k:
        raise TableError(f"degree must be an integer, got {k}")
    k = int(k)
    if k == 0:
        raise TableError("degree k = 0 is excluded")
    return k


def lambda_of(row: int, k: int, p: int | None = None) -> F:
    """Exact lambda of a table row at integer parameter ``p``."""
    k = _check_k(k)
    if row not in ROWS:
        raise TableError(f"no row {row}")
    r = ROWS[row]
    if row == 1:
        raise TableError("row 1 holds every complex lambda; there is no family value")
    if not r.accepts_k(k):
        raise TableError(f"row {row} does not allow k = {k}")
    if not r.has_p:
        return r.coefficients(k)[2]
    if p is None or int(p) != p:
        raise TableError(f"row {row} needs an integer p")
    p = int(p)
    if p in r.exclusions:
        raise TableError(f"row {row} excludes p = {p}")
    return r.value(k, p)


def _integer_solutions(a2: F, a1: F, a0: F) -> list[int]:
    """Integer roots of ``a2 p^2 + a1 p + a0``."""
    if a2 == 0:
        if a1 == 0:
            return []
        p = -a0 / a1
        return [int(p)] if p.denominator == 1 else []
    disc = a1 * a1 - 4 * a2 * a0
    s = rat_sqrt(disc)
    if s is None:
        return []
    out = set()
    for root in ((-a1 + s) / (2 * a2), (-a1 - s) / (2 * a2)):
        if root.denominator == 1:
            out.add(int(root))
    return sorted(out)


def lookup(k: int, lam) -> list[TableMatch]:
    """All rows containing ``(k, lam)``; an empty list means the pair is not in the table."""
    k = _check_k(k)
    if k in (2, -2):
        return [TableMatch(1, None, GroupType.AnyAbelian)]
    if not is_rational_value(as_field(lam) if not isinstance(lam, (int, F)) else lam):
        return []
    lam = to_fraction(lam)
    out = []
    for r in ROWS.values():
        if r.row == 1 or not r.accepts_k(k):
            continue
        a2, a1, a0 = r.coefficients(k)
        if not r.has_p:
            if a0 == lam:
                out.append(TableMatch(r.row, None, r.group))
            continue
        for p in _integer_solutions(a2, a1, a0 - lam):
            if p in r.exclusions:
                continue
            if r.value(k, p) != lam:
                raise ArithmeticError("inversion produced a parameter that does not reproduce lambda")
            out.append(TableMatch(r.row, p, r.group))
    return out


def symmetry_image(k: int, lam):
    k = _check_k(k)
    if isinstance(lam, (int, F)):
        return -k, 1 - F(lam)
    return -k, as_field(1 - as_field(lam))


class GaloisKind(str, Enum):
    AnyK2Abelian = "AnyK2Abelian"
    Ga = "Ga"
    Finite = "Finite"
    NotInTable = "NotInTable"


@dataclass(frozen=True)
class GaloisType:
    kind: GaloisKind
    subtype: GroupType | None = None

    def __str__(self):
        if self.kind is GaloisKind.Finite:
            return f"Finite({self.subtype.value})"
        return self.kind.value


def classify_matches(matches: list[TableMatch]) -> GaloisType:
    if not matches:
        return GaloisType(GaloisKind.NotInTable)
    groups = {m.group for m in matches}
    if groups == {GroupType.AnyAbelian}:
        return GaloisType(GaloisKind.AnyK2Abelian)
    has_ga = GroupType.Ga in groups
    finite = sorted((g for g in groups if g.is_finite), key=lambda g: g.value)
    if has_ga and finite:
        raise GaFiniteConflict(
            "pair matches Ga rows and finite rows: " + ", ".join(f"row {m.row} (p={m.p})" for m in matches)
        )
    if has_ga:
        return GaloisType(GaloisKind.Ga)
    if len(finite) > 1:
        raise TableError("pair matches finite rows of different types: " + ", ".join(g.value for g in finite))
    return GaloisType(GaloisKind.Finite, finite[0])


def galois_type(k: int, lam) -> GaloisType:
    return classify_matches(lookup(k, lam))
