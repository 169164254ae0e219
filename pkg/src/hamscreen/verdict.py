"""Obstruction engine: eigenvalues, Jordan blocks and table membership combined into verdicts."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .darboux import (
    ImproperDarbouxPoint,
    eigen_factor,
    find_directions_2d,
    hessian_at_direction,
    point_sort_key,
    scaling_roots,
    verify_pdp,
)
from .exactnum.numbers import GRat, as_field, format_rat
from .homopot import HomoPotential, hessian_at
from .mrtable import GaloisKind, classify_matches, lookup
from .spectral import EigenClass, jordan_structure, scalar_to_json

__all__ = [
    "VerdictKind",
    "Verdict",
    "EigenRecord",
    "PointRecord",
    "ObstructionReport",
    "screen_pair",
    "screen_hessian",
    "screen_potential",
    "exit_code",
]


class VerdictKind(str, Enum):
    NonIntegrable = "NonIntegrable"
    PassesNecessaryConditions = "PassesNecessaryConditions"
    Inconclusive = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    witness: dict | None = None
    reason: str = ""

    def __str__(self):
        return self.kind.value


PASS = Verdict(VerdictKind.PassesNecessaryConditions)


def _lambda_str(lam) -> str:
    if isinstance(lam, EigenClass):
        return lam.label()
    if isinstance(lam, (int,)):
        return str(lam)
    try:
        return str(as_field(lam))
    except TypeError:
        return format_rat(lam)


def screen_pair(k: int, lam, blocks) -> Verdict:
    """Conditions 1-3 for one eigenvalue with its Jordan block sizes."""
    if int(k) != k or k == 0:
        raise ValueError("k must be a nonzero integer")
    blocks = list(blocks)
    if not blocks:
        raise ValueError("an eigenvalue has at least one block")
    if k in (2, -2):
        return PASS
    matches = [] if isinstance(lam, EigenClass) else lookup(k, lam)
    rows = sorted({m.row for m in matches})
    big = max(blocks)
    if not matches:
        return Verdict(VerdictKind.NonIntegrable, {"condition": 1, "lambda": _lambda_str(lam), "block": big, "rows": []})
    if big >= 3:
        return Verdict(VerdictKind.NonIntegrable, {"condition": 2, "lambda": _lambda_str(lam), "block": big, "rows": rows})
    if big == 2:
        gt = classify_matches(matches)
        if gt.kind is GaloisKind.Ga:
            return Verdict(VerdictKind.NonIntegrable, {"condition": 3, "lambda": _lambda_str(lam), "block": 2, "rows": rows})
    return PASS


@dataclass(frozen=True)
class EigenRecord:
    eig: EigenClass
    blocks: tuple
    matches: tuple
    group: str
    verdict: Verdict

    def to_json(self) -> dict:
        lam = self.eig.label() if self.eig.is_algebraic else scalar_to_json(self.eig.value)
        return {
            "lambda": lam,
            "mult": self.eig.multiplicity,
            "blocks": list(self.blocks),
            "rows": [m.to_json() for m in self.matches],
            "group": self.group,
        }


def _eigen_records(k: int, A) -> list[EigenRecord]:
    out = []
    for eig, blocks in jordan_structure(A):
        if eig.is_algebraic:
            matches = []
            lam = eig
        else:
            lam = eig.value
            matches = lookup(k, lam)
        group = str(classify_matches(matches))
        out.append(EigenRecord(eig, tuple(blocks), tuple(matches), group, screen_pair(k, lam, blocks)))
    return out


def _combine(records) -> Verdict:
    for r in records:
        if r.verdict.kind is VerdictKind.NonIntegrable:
            return r.verdict
    return PASS


def screen_hessian(k: int, A) -> tuple[list[EigenRecord], Verdict]:
    records = _eigen_records(k, A)
    return records, _combine(records)


@dataclass
class PointRecord:
    c: tuple
    kappa: object
    multiplicity: int
    hessian: list
    eigens: list[EigenRecord]
    verdict: Verdict

    def to_json(self) -> dict:
        out = {
            "c": [scalar_to_json(x) for x in self.c],
            "kappa": str(as_field(self.kappa)),
            "multiplicity": self.multiplicity,
            "hessian": [[scalar_to_json(x) for x in row] for row in self.hessian],
            "eigens": [e.to_json() for e in self.eigens],
            "verdict": self.verdict.kind.value,
        }
        if self.verdict.witness is not None:
            out["witness"] = self.verdict.witness
        return out


@dataclass
class ObstructionReport:
    potential: str
    k: int
    points: list[PointRecord]
    verdict: Verdict
    unresolved: list[str] = field(default_factory=list)
    improper: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "potential": self.potential,
            "k": self.k,
            "verdict": self.verdict.kind.value,
            "points": [p.to_json() for p in self.points],
            "unresolved": list(self.unresolved),
            "improper": [[scalar_to_json(x) for x in d] for d in self.improper],
        }
        if self.verdict.reason:
            out["reason"] = self.verdict.reason
        if self.verdict.witness is not None:
            out["witness"] = self.verdict.witness
        return out

    def dumps(self, pretty: bool = True) -> str:
        return json.dumps(self.to_json(), indent=2 if pretty else None, sort_keys=True)


def _record(V: HomoPotential, c, kappa, H) -> PointRecord:
    records, verdict = screen_hessian(V.k, H)
    return PointRecord(tuple(c), kappa, abs(V.k - 2) or 1, H, records, verdict)


def _record_for(V: HomoPotential, x) -> PointRecord:
    """A supplied point: a proper Darboux point or an eigen-direction of the gradient."""
    x = [as_field(v) for v in x]
    if not any(verify_pdp(V, x)):
        return _record(V, x, GRat(1), hessian_at(V, x))
    kappa, H = hessian_at_direction(V, x)
    return _record(V, x, kappa, H)


def screen_potential(V: HomoPotential, points=None) -> ObstructionReport:
    """Screen every supplied (or, for n = 2, every found) Darboux point of ``V``."""
    name = V.name or V.to_str()
    records: list[PointRecord] = []
    unresolved: list[str] = []
    improper: list = []
    reasons: list[str] = []
    if points is not None:
        for x in points:
            try:
                records.append(_record_for(V, x))
            except ImproperDarbouxPoint:
                improper.append(tuple(as_field(v) for v in x))
    elif V.n == 2:
        search = find_directions_2d(V)
        unresolved = list(search.unresolved)
        improper = list(search.improper)
        if search.degenerate:
            reasons.append("degenerate Darboux system (a curve of solutions)")
        for d in search.directions:
            mus = scaling_roots(d.kappa, V.k)
            if V.k == 2 and not mus:
                continue  # for k = 2 only kappa = 1 directions carry Darboux points
            if mus:
                c = tuple(as_field(mus[0] * x) for x in d.coords)
                records.append(_record(V, c, GRat(1), hessian_at(V, c)))
            else:
                kappa, H = hessian_at_direction(V, d.coords)
                records.append(_record(V, d.coords, kappa, H))
    else:
        reasons.append("no Darboux points supplied and automatic search covers n = 2 only")

    if unresolved:
        reasons.append("unscreened Darboux points")
    if not records and not reasons:
        reasons.append("no proper Darboux point found")
    records.sort(key=lambda r: point_sort_key(r.c))
    overall = _combine(records)
    if overall.kind is VerdictKind.NonIntegrable:
        at = next(r for r in records if r.verdict is overall)
        overall = Verdict(overall.kind, dict(overall.witness, point=[str(x) for x in at.c]))
    elif reasons:
        overall = Verdict(VerdictKind.Inconclusive, None, "; ".join(reasons))
    return ObstructionReport(name, V.k, records, overall, unresolved, improper)


def exit_code(verdict) -> int:
    kind = verdict.kind if isinstance(verdict, Verdict) else VerdictKind(verdict)
    return {
        VerdictKind.PassesNecessaryConditions: 0,
        VerdictKind.NonIntegrable: 10,
        VerdictKind.Inconclusive: 20,
    }[kind]
