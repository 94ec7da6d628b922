"""Root numbers, torsion and rational right triangles for y^2 = x(x+1)(x+t^2)."""

from .curve import O, Point, WeierstrassModel, add, curve_Et, curve_Euv, curve_Ewv, invariants, multiply, point_order, torsion_A_t
from .exactq import DegenerateParameterError, DomainError, FactorizationIncomplete, InternalError, factorize, is_square, legendre, ord_p, parse_rational
from .rootnumber import in_T, prime_set_Pt, root_number_closed, root_number_local_product

__version__ = "0.1.0"

__all__ = [
    "O", "Point", "WeierstrassModel", "add", "curve_Et", "curve_Euv", "curve_Ewv", "invariants",
    "multiply", "point_order", "torsion_A_t",
    "DegenerateParameterError", "DomainError", "FactorizationIncomplete", "InternalError",
    "factorize", "is_square", "legendre", "ord_p", "parse_rational",
    "in_T", "prime_set_Pt", "root_number_closed", "root_number_local_product",
]
