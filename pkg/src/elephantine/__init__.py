"""Exact symbolic toolkit for cyclic quotient and weighted-hypersurface germs.

Everything runs on arbitrary-precision rational arithmetic: sparse
polynomials, weighted blow-up charts and discrepancies, the Du Val
decision procedure for double points, degree-truncated local deformation
spaces, and singularity inventories of weighted projective hypersurfaces.
"""

__version__ = "0.1.0"

from .cyclo import QuotientType, normalize_type, parse_type, render_type
from .poly import INFINITY, Poly, parse_poly, render
from .wblow import WeightVector

__all__ = [
    "INFINITY",
    "Poly",
    "QuotientType",
    "WeightVector",
    "__version__",
    "normalize_type",
    "parse_poly",
    "parse_type",
    "render",
    "render_type",
]
