"""Solvable families of the nonlinear ODE y''' + y' = Q(y) with Q = A*sqrt(B)/2.

Exact rational construction and recognition of the families, numeric
solution by quadrature of the inverse function, a Runge-Kutta oracle, and
incomplete elliptic integrals of the first kind.
"""

from .catalog import CatalogEntry, get_entry, list_entries, verify_entry
from .elliptic import EllipticArgs, carlson_rf, complete_k_agm, cubic_x_of_y, incomplete_f
from .errors import *  # noqa: F401,F403
from .family import Family, from_A, from_B, from_U, ode_rhs, recognize_poly, recognize_radical
from .parser import RadicalProduct, parse_poly, parse_radical, print_canonical
from .polynomial import Poly, perfect_square_root, poly_add, poly_derive, poly_eval, poly_mul
from .solver import (
    ResidualReport,
    SolutionTable,
    SolveConfig,
    derivatives_at,
    rk_oracle,
    solve_grid,
    verify,
    x_of_y,
    y_of_x,
)

__version__ = "0.1.0"
