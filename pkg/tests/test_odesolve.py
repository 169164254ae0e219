import random
from fractions import Fraction as F

import pytest
import sympy as sp
from sympy.polys.orthopolys import jacobi_poly

from conftest import sym_equal, to_sym, upoly_sym, z
from hamscreen.exactnum import GRat, RatFn, UPoly, sturm_count
from hamscreen.odesolve import (
    JacobiParams,
    Unsupported,
    gapoly_T,
    gapoly_test,
    jacobi,
    jacobi_ode_residual,
    ode_residual,
    psi_rational_test,
    rational_solve_first_order,
)
from oracles import brute_force_first_order, is_zero_rational, random_supported_instance, ratfn_sym, residual_is_zero

Z = UPoly.x()


def rf(num, den=(1,)):
    return RatFn(UPoly(list(num)), UPoly(list(den)))


def test_simple_examples():
    sol = rational_solve_first_order(rf([0]), rf([1]))
    assert sol.particular == rf([0, 1]) and sol.homogeneous == rf([1])
    sol = rational_solve_first_order(rf([-1], [0, 1]), rf([1]))
    assert sol.particular is None and sol.homogeneous == rf([0, 1])
    sol = rational_solve_first_order(rf([1], [0, 1]), rf([1]))
    assert sol.particular == rf([0, F(1, 2)]) and sol.homogeneous == rf([1], [0, 1])


def test_no_rational_antiderivative():
    # f' = 1/z has no rational solution
    sol = rational_solve_first_order(rf([0]), rf([1], [0, 1]))
    assert sol.particular is None


def test_exponential_homogeneous_part_is_not_rational():
    # f' + f = z: f = z - 1, homogeneous e^-z is not rational
    sol = rational_solve_first_order(rf([1]), rf([0, 1]))
    assert sol.particular == rf([-1, 1]) and sol.homogeneous is None


def test_positive_integer_residue_allows_pole():
    # f' + (3/z) f = 0 has f = z^-3
    sol = rational_solve_first_order(rf([3], [0, 1]), rf([0]))
    assert sol.homogeneous == rf([1], [0, 0, 0, 1])


@pytest.mark.parametrize("seed", range(40))
def test_agrees_with_brute_force(seed):
    rng = random.Random(1000 + seed)
    p, q, poles = random_supported_instance(rng)
    try:
        sol = rational_solve_first_order(p, q)
    except Unsupported:
        pytest.fail("generator produced an unsupported instance")
    ps, qs = ratfn_sym(p), ratfn_sym(q)
    oracle = brute_force_first_order(ps, qs, poles)
    assert (sol.particular is None) == (oracle is None)
    if sol.particular is not None:
        assert ode_residual(p, q, sol.particular).is_zero()
        assert residual_is_zero(ratfn_sym(sol.particular), ps, qs)
        diff = ratfn_sym(sol.particular) - oracle
        if not is_zero_rational(diff):
            # the difference must be a homogeneous solution
            assert sol.homogeneous is not None
            assert residual_is_zero(diff, ps, 0)


def test_gapoly_worked_example():
    f = gapoly_test(1, F(3, 4), UPoly([1]))
    assert f is not None
    assert gapoly_T(1, F(3, 4), f) == RatFn(UPoly([1]))
    # 15 z^2 (z - 1) f = 6 z^2 - 2 z - 4
    assert f * RatFn(Z * Z * (Z - 1) * 15) == RatFn(UPoly([-4, -2, 6]))
    fs = ratfn_sym(f)
    lhs = sp.diff(fs * z**2 * (z - 1) ** sp.Rational(3, 2), z)
    assert sp.simplify(lhs - z * (z - 1) ** sp.Rational(1, 2)) == 0


def test_gapoly_shape_for_a_equal_one():
    # f = c (z^-2 + 2 b z^-1) + polynomial
    for b in (F(1, 4), F(3, 4)):
        for J in ([1], [2, 1], [1, 0, 1]):
            f = gapoly_test(1, b, UPoly(J))
            if f is None:
                continue
            c = (f * RatFn(Z * Z))(GRat(0))
            g = f - RatFn(UPoly([c]), Z * Z) - RatFn(UPoly([c * 2 * b]), Z)
            assert c != 0 and g.den == UPoly([1])


@pytest.mark.parametrize("k", [3, 4, 5, -3])
def test_gapoly_none_when_a_is_not_one(k):
    rng = random.Random(k)
    for a in (F(k - 1, 2 * k), F(k + 1, 2 * k)):
        for b in (F(1, 4), F(3, 4)):
            for _ in range(3):
                J = UPoly([rng.randint(1, 4), rng.randint(-3, 3), rng.randint(-2, 2)])
                if J(GRat(1)) == 0:
                    J = J + UPoly([1])
                assert gapoly_test(a, b, J) is None


def test_gapoly_rejects_vanishing_J():
    with pytest.raises(ValueError):
        gapoly_test(1, F(1, 4), UPoly([0, 1]))


@pytest.mark.parametrize("n", range(0, 6))
@pytest.mark.parametrize("ab", [(F(-1, 3), F(1, 3)), (F(1, 2), F(-1, 2)), (F(2), F(3, 4))])
def test_jacobi_matches_sympy(n, ab):
    a, b = ab
    t = sp.Symbol("t")
    P = jacobi(n=n, alpha=a, beta=b)
    # sympy's jacobi_poly builds the polynomial by the three-term recurrence
    assert sym_equal(upoly_sym(P, t), jacobi_poly(n, to_sym(a), to_sym(b), t))
    assert jacobi_ode_residual(n, a, b).is_zero()
    assert jacobi(JacobiParams(n, a, b)) == P


@pytest.mark.parametrize("k", [3, 5, 7])
def test_jacobi_roots_inside_interval(k):
    for n in range(1, 7):
        P = jacobi(n=n, alpha=F(-1, k), beta=F(1, k))
        assert sturm_count(P, -1, 1) == n
        assert P(GRat(1)) != 0 and P(GRat(-1)) != 0


def test_psi_has_no_rational_solution():
    for k in (3, 4):
        for p in range(0, 3):
            assert psi_rational_test(k, p) is None


def test_psi_rejects_small_k():
    with pytest.raises(ValueError):
        psi_rational_test(2, 0)


def test_unsupported_double_pole():
    with pytest.raises(Unsupported):
        rational_solve_first_order(rf([1], [0, 0, 1]), rf([1]))
