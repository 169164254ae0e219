from fractions import Fraction
from pathlib import Path

import pytest
import sympy as sp
from hypothesis import settings
from hypothesis import strategies as st

from hamscreen.exactnum import GRat, Surd, UPoly

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ROOT / "samples"
z = sp.Symbol("z")


def to_sym(x):
    if isinstance(x, Surd):
        return to_sym(x.u) + to_sym(x.v) * sp.sqrt(x.d)
    if isinstance(x, GRat):
        return sp.Rational(x.re.numerator, x.re.denominator) + sp.I * sp.Rational(x.im.numerator, x.im.denominator)
    x = Fraction(x)
    return sp.Rational(x.numerator, x.denominator)


def from_sym(e) -> GRat:
    e = sp.nsimplify(sp.expand(e))
    re, im = sp.re(e), sp.im(e)
    return GRat(Fraction(int(sp.fraction(re)[0]), int(sp.fraction(re)[1])), Fraction(int(sp.fraction(im)[0]), int(sp.fraction(im)[1])))


def upoly_sym(p: UPoly, var=z):
    return sp.expand(sum(to_sym(c) * var**i for i, c in enumerate(p.coeffs)))


def sym_upoly(e, var=z) -> UPoly:
    P = sp.Poly(sp.expand(e), var)
    return UPoly([from_sym(c) for c in reversed(P.all_coeffs())])


def sym_equal(a, b) -> bool:
    return sp.simplify(sp.expand(a - b)) == 0


small_int = st.integers(-9, 9)
fractions = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))
nonzero_fractions = fractions.filter(bool)
grats = st.builds(GRat, fractions, fractions)
nonzero_grats = grats.filter(bool)
gints = st.builds(GRat, small_int, small_int)
upolys = st.lists(gints, min_size=1, max_size=6).map(UPoly)
nonzero_upolys = upolys.filter(lambda p: not p.is_zero())


@pytest.fixture
def samples():
    return SAMPLES


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
