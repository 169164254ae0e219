from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import strategies as st

from conftest import (
    fractions,
    from_sym,
    gints,
    grats,
    nonzero_grats,
    nonzero_upolys,
    sym_equal,
    sym_upoly,
    to_sym,
    upoly_sym,
    upolys,
    z,
)
from hamscreen.exactnum import (
    GRat,
    MPoly,
    RatFn,
    Surd,
    UPoly,
    as_field,
    format_rat,
    gsqrt,
    parse_rat,
    poly_gcd,
    quadratic_roots,
    rat_sqrt,
    resultant,
    roots_in_field,
    squarefree_decomposition,
    sturm_count,
    surd_normalize,
    upoly_rational_roots,
)
from hamscreen.exactnum.gaussint import gaussian_divisors, gmul
from hamscreen.exactnum.linalg import nullspace, rank, rref, solve_linear
from hamscreen.exactnum.mrat import MRat, PoleError
from hamscreen.exactnum.resultant import bareiss_det

x1, x2 = sp.symbols("x1 x2")


# Gaussian rationals


@given(grats, grats)
def test_grat_ring_ops_match_sympy(a, b):
    assert to_sym(a + b) == sp.expand(to_sym(a) + to_sym(b))
    assert to_sym(a - b) == sp.expand(to_sym(a) - to_sym(b))
    assert to_sym(a * b) == sp.expand(to_sym(a) * to_sym(b))


@given(grats, nonzero_grats)
def test_grat_division(a, b):
    assert sym_equal(to_sym(a / b), to_sym(a) / to_sym(b))
    assert (a / b) * b == a


@given(nonzero_grats, st.integers(-4, 4))
def test_grat_power(a, e):
    assert sym_equal(to_sym(a**e), to_sym(a) ** e)


def test_grat_basics():
    i = GRat(0, 1)
    assert i * i == GRat(-1)
    assert str(GRat(Fraction(1, 2), Fraction(-1, 2))) == "1/2-1/2*i"
    assert GRat(3) == 3 and GRat(Fraction(1, 2)) == Fraction(1, 2)
    assert parse_rat("-3/6") == Fraction(-1, 2)
    assert format_rat(Fraction(4, 2)) == "2"
    with pytest.raises(ZeroDivisionError):
        GRat(1) / GRat(0)


@given(fractions)
def test_rat_sqrt(x):
    r = rat_sqrt(x * x)
    assert r == abs(x)
    if x > 0 and rat_sqrt(x) is not None:
        assert rat_sqrt(x) ** 2 == x


def test_rat_sqrt_rejects_nonsquares():
    assert rat_sqrt(Fraction(2)) is None
    assert rat_sqrt(Fraction(-4)) is None
    assert rat_sqrt(Fraction(9, 4)) == Fraction(3, 2)


@given(nonzero_grats)
def test_gsqrt_squares_back(g):
    s = gsqrt(g)
    if s is not None:
        assert as_field(s * s) == g
        assert sym_equal(to_sym(s) ** 2, to_sym(g))


@given(gints.filter(bool))
def test_gsqrt_of_square_stays_in_field(g):
    s = gsqrt(g * g)
    assert isinstance(s, GRat)
    assert s == g or s == -g


def test_gsqrt_radicals():
    s = gsqrt(GRat(-8))
    assert isinstance(s, Surd) and s.d == 2 and s.v == GRat(0, 2)
    assert gsqrt(GRat(0, 2)) == GRat(1, 1)


# surds

surds = st.builds(lambda u, v, d: surd_normalize(u, v, d), grats, grats, st.sampled_from([2, 3, 5, 6, 7]))


@given(surds, surds)
def test_surd_arithmetic_matches_sympy(a, b):
    a = Surd.coerce(a)
    b = Surd.coerce(b)
    assume(a.d in (0, b.d) or b.d == 0)
    assert sym_equal(to_sym(a + b), to_sym(a) + to_sym(b))
    assert sym_equal(to_sym(a * b), to_sym(a) * to_sym(b))
    if b:
        assert sym_equal(to_sym(a / b), to_sym(a) / to_sym(b))


def test_surd_normalize_moves_i_into_v():
    s = surd_normalize(0, 1, -3)
    assert s.d == 3 and s.v == GRat(0, 1)
    s = surd_normalize(0, 1, Fraction(8, 9))
    assert s.d == 2 and s.v == GRat(Fraction(2, 3))
    assert as_field(surd_normalize(1, 1, 4)) == GRat(3)


# Gaussian integers


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_gaussian_divisors_divide(a, b):
    assume((a, b) != (0, 0))
    g = GRat(a, b)
    divs = gaussian_divisors(a, b)
    assert (1, 0) in divs
    # one associate of g itself is listed
    assert any(GRat(*d) * u == g for d in divs for u in (GRat(1), GRat(-1), GRat(0, 1), GRat(0, -1)))
    for d in divs:
        q = g / GRat(*d)
        assert q.re.denominator == 1 and q.im.denominator == 1


def test_gaussian_divisors_of_five():
    divs = set(gaussian_divisors(5, 0))
    # 5 = (2+i)(2-i): four classes of divisors up to units
    assert divs == {(1, 0), (2, 1), (2, -1), (5, 0)}
    assert gmul((2, 1), (2, -1)) == (5, 0)


# univariate polynomials


@given(upolys, nonzero_upolys)
def test_divmod_matches_sympy(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree
    sq, sr = sp.div(upoly_sym(a), upoly_sym(b), z)
    assert sym_equal(upoly_sym(q), sq) and sym_equal(upoly_sym(r), sr)


@given(nonzero_upolys, nonzero_upolys, nonzero_upolys)
def test_gcd_matches_sympy(a, b, c):
    g = poly_gcd(a * c, b * c)
    expected = sp.Poly(sp.gcd(upoly_sym(a * c), upoly_sym(b * c)), z, domain="QQ_I").monic()
    assert sym_equal(upoly_sym(g), expected.as_expr())


@given(st.lists(st.tuples(gints, st.integers(1, 3)), min_size=1, max_size=4))
def test_squarefree_and_roots(root_mults):
    p = UPoly([1])
    for r, m in root_mults:
        p = p * UPoly([-r, 1]) ** m
    p = p * GRat(2, -1)
    parts = squarefree_decomposition(p)
    prod = UPoly([p.lc])
    for f, m in parts:
        assert poly_gcd(f, f.derivative()).degree == 0
        prod = prod * f**m
    assert prod == p
    roots, residual = upoly_rational_roots(p)
    assert residual == []
    expected = {}
    for r, m in root_mults:
        expected[r] = expected.get(r, 0) + m
    assert dict(roots) == expected


def test_roots_with_irreducible_residual():
    p = UPoly([2, 0, 1]) * UPoly([-Fraction(1, 3), 1]) * UPoly([GRat(0, -1), 1]) ** 2
    roots, residual = upoly_rational_roots(p)
    assert roots == [(GRat(0, 1), 2), (GRat(Fraction(1, 3)), 1)]  # sorted by (re, im)
    assert residual == [(UPoly([2, 0, 1]), 1)]
    with pytest.raises(ValueError):
        upoly_rational_roots(UPoly())


def test_roots_agree_with_sympy_on_gaussian_polynomials():
    e = sp.expand((z - sp.Rational(3, 2)) * (z + 2 * sp.I) ** 2 * (z**2 - 3) * (2 * z - sp.I))
    roots, residual = upoly_rational_roots(sym_upoly(e))
    sym_roots = sp.roots(sp.Poly(e, z))
    gauss = {r: m for r, m in sym_roots.items() if sp.sqrt(3) not in r.atoms(sp.Pow) and r.is_algebraic and not r.has(sp.sqrt(3))}
    assert {to_sym(r): m for r, m in roots} == gauss
    assert [f for f, _ in residual] == [UPoly([-3, 0, 1])]


def test_quadratic_and_surd_coefficient_roots():
    rs = quadratic_roots(UPoly([-2, 0, 1]))
    assert all(UPoly([-2, 0, 1])(r) == 0 for r in rs)
    s2 = Surd(0, 1, 2)
    p = UPoly([-s2, 1]) * UPoly([3, 1])
    roots, residual = roots_in_field(p)
    assert {as_field(r) for r, _ in roots} == {as_field(s2), GRat(-3)}
    assert residual == []


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=6))
def test_sturm_count_matches_sympy(cs):
    p = UPoly(cs)
    assume(p.degree >= 1)
    P = sp.Poly(upoly_sym(p), z)
    # sympy counts the closed interval
    expected = P.count_roots(-3, 4) - (1 if P.eval(-3) == 0 else 0)
    assert sturm_count(p, -3, 4) == expected


# rational functions


def test_ratfn_reduction_and_derivative():
    f = RatFn(UPoly([-1, 0, 1]), UPoly([-2, 2]))
    assert f.den == UPoly([1]) and f.num == UPoly([Fraction(1, 2), Fraction(1, 2)])
    g = RatFn(UPoly([1, 2]), UPoly([0, 0, 1, 1]))
    sym = (1 + 2 * z) / (z**2 * (z + 1))
    assert sym_equal(upoly_sym(g.derivative().num) / upoly_sym(g.derivative().den), sp.diff(sym, z))
    assert g.order_at_infinity() == 2
    assert (g + g - 2 * g).is_zero()


# multivariate polynomials, resultants


mpolys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), gints, max_size=5
).map(lambda d: MPoly(2, d))


@given(mpolys, mpolys)
def test_mpoly_ops_match_sympy(P, Q):
    S = [x1, x2]
    assert sym_equal((P * Q).to_sympy(S), P.to_sympy(S) * Q.to_sympy(S))
    assert sym_equal((P - Q).to_sympy(S), P.to_sympy(S) - Q.to_sympy(S))
    assert sym_equal(P.diff(1).to_sympy(S), sp.diff(P.to_sympy(S), x2))
    assert MPoly.from_json(2, P.to_json()) == P
    assert MPoly.from_sympy(P.to_sympy(S), S) == P


@given(mpolys, mpolys)
def test_resultant_matches_sympy(P, Q):
    assume(P.degree_in(0) >= 1 and Q.degree_in(0) >= 1)
    S = [x1, x2]
    R = resultant(P, Q, eliminate=0)
    # sympy's resultant() can differ by (-1)^(mn) when it reorders; the Sylvester determinant is the reference
    expected = sylvester(P.to_sympy(S), Q.to_sympy(S), x1, 1).det()
    assert sym_equal(upoly_sym(R, x2), expected)
    assert sym_equal(upoly_sym(R, x2) ** 2, sp.resultant(P.to_sympy(S), Q.to_sympy(S), x1) ** 2)


def test_resultant_sign_convention():
    a = MPoly(2, {(1, 0): 1, (0, 0): -3})
    b = MPoly(2, {(1, 0): 1, (0, 0): -5})
    assert resultant(a, b) == UPoly([-2])


def test_bareiss_det():
    M = [[UPoly([2]), UPoly([0, 1])], [UPoly([1, 1]), UPoly([3])]]
    assert bareiss_det(M) == UPoly([6]) - UPoly([0, 1]) * UPoly([1, 1])


# linear algebra

matrices = st.lists(st.lists(gints, min_size=4, max_size=4), min_size=3, max_size=3)


@given(matrices)
def test_rank_and_nullspace(A):
    S = sp.Matrix([[to_sym(x) for x in row] for row in A])
    assert rank(A) == S.rank()
    for v in nullspace(A):
        assert all(sum((a * b for a, b in zip(row, v)), GRat(0)) == 0 for row in A)
    assert len(nullspace(A)) == 4 - S.rank()
    R, piv = rref(A)
    assert len(piv) == S.rank()


@given(matrices, st.lists(gints, min_size=3, max_size=3))
def test_solve_linear(A, b):
    sol = solve_linear(A, b)
    S = sp.Matrix([[to_sym(x) for x in row] for row in A])
    consistent = S.rank() == S.row_join(sp.Matrix([to_sym(x) for x in b])).rank()
    assert (sol is not None) == consistent
    if sol is not None:
        for row, bi in zip(A, b):
            assert sum((a * x for a, x in zip(row, sol)), GRat(0)) == bi


# multivariate rational functions


def test_mrat_cancels_and_differentiates():
    S = [x1, x2]
    num = MPoly.from_sympy((x1**2 - x2**2) * x1, S)
    den = MPoly.from_sympy((x1 - x2) * x2**2, S)
    r = MRat(num, den)
    assert sym_equal(r.num.to_sympy(S) / r.den.to_sympy(S), (x1 + x2) * x1 / x2**2)
    d = r.diff(1)
    assert sym_equal(d.num.to_sympy(S) / d.den.to_sympy(S), sp.diff((x1 + x2) * x1 / x2**2, x2))
    assert r.is_homogeneous() and r.degree() == 0
    with pytest.raises(PoleError):
        r([GRat(1), GRat(0)])
