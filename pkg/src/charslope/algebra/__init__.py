from .field import FieldSpec, field_pe_root, is_irreducible, is_prime
from .order import INF, Order, format_order, is_integer, parse_order, ratio
from .poly import (Poly, grlex_key, hasse_derivative, initial_form, multi_indices, order_at,
                   pe_power_root)
from .zpoly import (det, from_presentation, hasse_z, resultant_norm, resultant_sylvester,
                    resultant_z, scale_section, shift_z, sylvester_matrix, to_presentation)

__all__ = [
    "FieldSpec", "field_pe_root", "is_irreducible", "is_prime",
    "INF", "Order", "format_order", "is_integer", "parse_order", "ratio",
    "Poly", "grlex_key", "hasse_derivative", "initial_form", "multi_indices", "order_at",
    "pe_power_root",
    "det", "from_presentation", "hasse_z", "resultant_norm", "resultant_sylvester",
    "resultant_z", "scale_section", "shift_z", "sylvester_matrix", "to_presentation",
]
