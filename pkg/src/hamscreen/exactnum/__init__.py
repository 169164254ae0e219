"""Exact numbers and polynomial algebra."""
from .mpoly import MPoly, monomials_of_degree
from .numbers import (
    I,
    GRat,
    MixedRadicandError,
    Surd,
    as_field,
    as_grat,
    format_rat,
    gsqrt,
    is_rational_value,
    parse_rat,
    rat_sqrt,
    surd_normalize,
    to_fraction,
)
from .resultant import resultant
from .upoly import (
    RatFn,
    UPoly,
    poly_gcd,
    quadratic_roots,
    roots_in_field,
    squarefree_decomposition,
    sturm_count,
    upoly_rational_roots,
)

__all__ = [
    "GRat",
    "Surd",
    "I",
    "MixedRadicandError",
    "MPoly",
    "UPoly",
    "RatFn",
    "as_field",
    "as_grat",
    "format_rat",
    "gsqrt",
    "is_rational_value",
    "monomials_of_degree",
    "parse_rat",
    "poly_gcd",
    "quadratic_roots",
    "rat_sqrt",
    "resultant",
    "roots_in_field",
    "squarefree_decomposition",
    "sturm_count",
    "surd_normalize",
    "to_fraction",
    "upoly_rational_roots",
]
