import pytest
import sympy as sp

from conftest import to_sym
from hamscreen.darboux import (
    ImproperDarbouxPoint,
    NotEigenDirection,
    eigen_factor,
    find_directions_2d,
    find_pdp_2d,
    hessian_at_direction,
    scaling_roots,
    verify_pdp,
)
from hamscreen.exactnum import GRat, Surd, as_field
from hamscreen.homopot import hessian_at, parse_potential

q1, q2 = sp.symbols("q1 q2")

CUBICS = [
    "(q1^3+q2^3)/3",
    "(q1^2+q2^2)*q1",
    "q1^3/3",
    "(q1^2+q2^2)*(q1-i*q2)",
    "q1*q2^2",
    "q1^3 + 2*q1*q2^2 - q2^3/5",
]


def sympy_pdps(text):
    S = sp.sympify(text.replace("^", "**"), locals={"i": sp.I, "q1": q1, "q2": q2})
    sols = sp.solve([sp.diff(S, q1) - q1, sp.diff(S, q2) - q2], [q1, q2], dict=True)
    out = set()
    for s in sols:
        a, b = sp.nsimplify(s[q1]), sp.nsimplify(s[q2])
        if a == 0 and b == 0:
            continue
        out.add((sp.expand(a), sp.expand(b)))
    return out


@pytest.mark.parametrize("text", CUBICS)
def test_pdps_match_sympy(text):
    V = parse_potential(text)
    search = find_pdp_2d(V)
    assert not search.unresolved and not search.degenerate
    got = {(sp.expand(to_sym(a)), sp.expand(to_sym(b))) for a, b in (p.coords for p in search.points)}
    assert got == sympy_pdps(text)
    for p in search.points:
        assert all(x == 0 for x in verify_pdp(V, p.coords))


def test_worked_example_points():
    V = parse_potential("(q1^2+q2^2)*q1")
    coords = [p.coords for p in find_pdp_2d(V).points]
    h = GRat(0, 1) / 2
    assert coords == [(GRat(1, 0) / 3, GRat(0)), (GRat(1) / 2, -h), (GRat(1) / 2, h)]
    V = parse_potential("(q1^2+q2^2)*(q1-i*q2)")
    assert [p.coords for p in find_pdp_2d(V).points] == [(GRat(1) / 4, GRat(0, 1) / 4)]


@pytest.mark.parametrize("text", CUBICS + ["q1^4 + q2^4", "q1^2*q2^2 + q1^4", "(q1^2+q2^2)^2*q1", "1/(q1*q2)"])
def test_directions_scale_to_pdps(text):
    V = parse_potential(text)
    search = find_directions_2d(V)
    assert search.directions
    for d in search.directions:
        assert d.kappa == eigen_factor(V, d.coords)
        for mu in scaling_roots(d.kappa, V.k):
            c = [as_field(mu * x) for x in d.coords]
            assert all(x == 0 for x in verify_pdp(V, c))
            kappa, H = hessian_at_direction(V, d.coords)
            assert H == hessian_at(V, c)


def test_directions_cover_cubic_points():
    V = parse_potential("(q1^2+q2^2)*q1")
    pts = {p.coords for p in find_pdp_2d(V).points}
    from_dirs = set()
    for d in find_directions_2d(V).directions:
        for mu in scaling_roots(d.kappa, 3):
            from_dirs.add(tuple(as_field(mu * x) for x in d.coords))
    assert pts == from_dirs


def test_quadratic_coordinates():
    V = parse_potential("q1*q2^2")
    pts = [p.coords for p in find_pdp_2d(V).points]
    assert len(pts) == 2
    assert all(isinstance(c[1], Surd) and c[1].d == 2 for c in pts)


def test_improper_direction_listed_separately():
    V = parse_potential("q1^2*q2^2")
    search = find_directions_2d(V)
    assert (GRat(1), GRat(0)) in search.improper
    assert (GRat(0), GRat(1)) in search.improper
    with pytest.raises(ImproperDarbouxPoint):
        eigen_factor(V, [1, 0])


def test_not_eigen_direction():
    V = parse_potential("q1^3 + q2^3")
    with pytest.raises(NotEigenDirection):
        eigen_factor(V, [1, 2])


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        verify_pdp(parse_potential("q1^3"), [0, 0])


def test_scaling_roots():
    assert scaling_roots(GRat(1), 3) == [GRat(1)]
    assert scaling_roots(GRat(4), 4) == [GRat(-1, 0) / 2, GRat(1) / 2]
    assert scaling_roots(GRat(2), 4) == []
    assert set(scaling_roots(GRat(-1), 4)) == {GRat(0, 1), GRat(0, -1)}
    assert scaling_roots(GRat(1), 2) == [GRat(1)] and scaling_roots(GRat(2), 2) == []
