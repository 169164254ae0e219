import random
from fractions import Fraction as F

import pytest

from hamscreen.exactnum import GRat
from hamscreen.homopot import parse_potential
from hamscreen.mrtable import ROWS, lambda_of
from hamscreen.spectral import sym_matrix
from hamscreen.verdict import (
    VerdictKind,
    exit_code,
    screen_hessian,
    screen_pair,
    screen_potential,
)

i = GRat(0, 1)
NI = VerdictKind.NonIntegrable
OK = VerdictKind.PassesNecessaryConditions
INC = VerdictKind.Inconclusive
M = [[0, 0, 1], [0, 0, i], [1, i, 0]]


def two_i_plus_m():
    return sym_matrix([[2 * int(r == c) + M[r][c] for c in range(3)] for r in range(3)])


def test_screen_pair_examples():
    v = screen_pair(3, 2, [2])
    assert v.kind is NI and v.witness["condition"] == 3 and v.witness["rows"] == [2]
    assert screen_pair(3, F(1, 8), [2, 1]).kind is OK
    v = screen_pair(3, F(1, 8), [3])
    assert v.kind is NI and v.witness["condition"] == 2
    for lam in (F(2, 3), GRat(1, 1), 17):
        assert screen_pair(2, lam, [3, 2]).kind is OK
        assert screen_pair(-2, lam, [1]).kind is OK
    v = screen_pair(3, F(2, 3), [1])
    assert v.kind is NI and v.witness["condition"] == 1


def test_screen_pair_errors():
    with pytest.raises(ValueError):
        screen_pair(0, 1, [1])
    with pytest.raises(ValueError):
        screen_pair(3, 1, [])


def table_lambdas(kmax=6, pmax=6):
    for row in range(2, 22):
        r = ROWS[row]
        for k in range(-kmax, kmax + 1):
            if abs(k) < 3 or not r.accepts_k(k):
                continue
            for p in (range(-pmax, pmax + 1) if r.has_p else [None]):
                if p is not None and p in r.exclusions:
                    continue
                yield k, lambda_of(row, k, p)


def test_symmetry_stability():
    for k, lam in table_lambdas():
        for blocks in ([1], [2], [3]):
            a = screen_pair(k, lam, blocks)
            b = screen_pair(-k, 1 - lam, blocks)
            assert a.kind is b.kind, (k, lam, blocks)


def test_adding_big_block_flips_to_non_integrable():
    for k, lam in table_lambdas(kmax=5, pmax=3):
        if screen_pair(k, lam, [1]).kind is OK:
            assert screen_pair(k, lam, [1, 3]).kind is NI


def test_screen_hessian_examples():
    _, v = screen_hessian(3, sym_matrix([[3, i], [i, 1]]))
    assert v.kind is NI and v.witness == {"condition": 3, "lambda": "2", "block": 2, "rows": [2]}
    recs, v = screen_hessian(3, two_i_plus_m())
    assert v.kind is NI and v.witness["block"] == 3 and recs[0].blocks == (3,)
    assert screen_hessian(-2, sym_matrix([[1, 5], [5, 1]]))[1].kind is OK


def test_algebraic_eigenvalue_fails_condition_one():
    _, v = screen_hessian(3, sym_matrix([[0, 1], [1, 1]]))
    assert v.kind is NI and v.witness["condition"] == 1


def test_real_symmetric_never_fails_block_conditions():
    rng = random.Random(3)
    for _ in range(30):
        vals = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(6)]
        a, b, c, d, e, f = vals
        recs, v = screen_hessian(3, sym_matrix([[a, b, c], [b, d, e], [c, e, f]]))
        assert all(max(r.blocks) == 1 for r in recs)
        if v.kind is NI:
            assert v.witness["condition"] == 1


def test_screen_potential_w_q1():
    V = parse_potential("(q1^2+q2^2)*q1")
    rep = screen_potential(V)
    assert rep.verdict.kind is NI
    isotropic = [p for p in rep.points if p.c[0] == F(1, 2)]
    assert len(isotropic) == 2
    for p in isotropic:
        assert p.verdict.witness == {"condition": 3, "lambda": "2", "block": 2, "rows": [2]}
    assert {str(p.c[1]) for p in isotropic} == {str(GRat(0, F(1, 2))), str(GRat(0, F(-1, 2)))}


def test_screen_potential_passes():
    assert screen_potential(parse_potential("(q1^3+q2^3)/3")).verdict.kind is OK
    assert screen_potential(parse_potential("(q1^2+q2^2)*(q1-i*q2)")).verdict.kind is OK


def test_supplied_points():
    V = parse_potential("(q1^2+q2^2)*q1")
    rep = screen_potential(V, [[F(1, 2), GRat(0, F(1, 2))]])
    assert rep.verdict.kind is NI and len(rep.points) == 1
    with pytest.raises(ValueError):
        screen_potential(V, [[0, 0]])
    # grad q1^3 vanishes along (0, 1): an improper point, nothing to screen
    rep = screen_potential(parse_potential("q1^3"), [[0, 1]])
    assert rep.verdict.kind is INC and rep.improper


def test_higher_dimension_without_points_is_inconclusive():
    V = parse_potential("q1^3+q2^3+q3^3")
    rep = screen_potential(V)
    assert rep.verdict.kind is INC


def test_report_is_deterministic_and_json():
    V = parse_potential("(q1^2+q2^2)*q1")
    a = screen_potential(V).dumps()
    b = screen_potential(V).dumps()
    assert a == b
    doc = screen_potential(V).to_json()
    assert doc["verdict"] == "NonIntegrable"
    for p in doc["points"]:
        assert set(p) >= {"c", "kappa", "hessian", "eigens", "verdict"}
        for e in p["eigens"]:
            assert set(e) == {"lambda", "mult", "blocks", "rows", "group"}


def test_exit_codes():
    assert exit_code("NonIntegrable") == 10
    assert exit_code("PassesNecessaryConditions") == 0
    assert exit_code("Inconclusive") == 20
