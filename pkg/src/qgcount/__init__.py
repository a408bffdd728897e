"""Exact lattice point counting in Q-Gorenstein cones, quasi-polynomial
fitting, volume minimization, and checks of the resulting coefficient
identities."""

from .cones import Cone, GorensteinData, dual, gorenstein_check, make_cone, orthant
from .counting import count_cone, count_levels, count_polytope, polytope_cone
from .errors import *  # noqa: F401,F403
from .orbifold import chart_data, correction_sum, ray_terms, total_orbifold_term
from .quasifit import QuasiPolynomial, fit, fit_counts
from .reeb import minimize_volume, rationalize, reeb_direction
from .slices import facet_relative_volume, msy_triangulate, volume
from .verify import emit, parse, verify_main_theorem, verify_polytope_bound

__version__ = "0.1.0"
