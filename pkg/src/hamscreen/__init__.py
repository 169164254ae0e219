"""Exact screening of homogeneous Hamiltonian potentials for obstructions to integrability."""
from .darboux import find_directions_2d, find_pdp_2d, verify_pdp
from .design import design_potential, poisson_bracket, w_condition
from .homopot import HomoPotential, hessian_at, parse_potential
from .hypergeom import l4_degree1_test, riemann_scheme, tau_squared
from .mrtable import lambda_of, lookup
from .odesolve import gapoly_test, jacobi, psi_rational_test, rational_solve_first_order
from .spectral import jordan_structure
from .verdict import ObstructionReport, Verdict, VerdictKind, screen_hessian, screen_pair, screen_potential

__version__ = "0.1.0"

__all__ = [
    "HomoPotential",
    "ObstructionReport",
    "Verdict",
    "VerdictKind",
    "design_potential",
    "find_directions_2d",
    "find_pdp_2d",
    "gapoly_test",
    "hessian_at",
    "jacobi",
    "jordan_structure",
    "l4_degree1_test",
    "lambda_of",
    "lookup",
    "parse_potential",
    "poisson_bracket",
    "psi_rational_test",
    "rational_solve_first_order",
    "riemann_scheme",
    "screen_hessian",
    "screen_pair",
    "screen_potential",
    "tau_squared",
    "verify_pdp",
    "w_condition",
]
