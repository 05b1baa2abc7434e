"""p-adic numbers, truncated series, local fields and Z_p factoring."""

from .factor import (FactorError, find_quadratic_factor_2adic, hensel_factor,
                     newton_polygon, root_valuations)
from .local import LocalField, LocalFieldElement, LocalFieldError, irreducibility_certificate
from .numbers import (HenselError, PadicNumber, PrecisionError, hensel_lift_root,
                      is_square_rational_qp, qp_is_square, vp)
from .series import SeriesError, TruncatedSeries, power_sums_from_coefficients

__all__ = [
    "FactorError", "HenselError", "LocalField", "LocalFieldElement", "LocalFieldError",
    "PadicNumber", "PrecisionError", "SeriesError", "TruncatedSeries",
    "find_quadratic_factor_2adic", "hensel_factor", "hensel_lift_root",
    "irreducibility_certificate", "is_square_rational_qp", "newton_polygon",
    "power_sums_from_coefficients", "qp_is_square", "root_valuations", "vp",
]
