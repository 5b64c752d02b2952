"""Multiplicities, mixed multiplicities and Minkowski inequalities for filtrations.

The computational models are monomial filtrations of a polynomial ring
(lattice-point colengths, Newton polyhedra, limiting bodies) and divisorial
filtrations given by intersection numbers on a resolution.
"""

from .errors import FiltmultError
from .monomial import (
    Adic,
    Closure,
    DivisorialToric,
    Filtration,
    MonomialIdeal,
    Product,
    Rescale,
    Table,
    Trivial,
    Truncate,
    WeightValuation,
)
from .multiplicity import (
    minkowski_equality_test,
    minkowski_report,
    mixed_multiplicities,
    multiplicity_limit,
    trsk_check,
)
from .numeric import Approx, QuadExt, quad
from .okounkov import delta_body, multiplicity_via_volume

__version__ = "0.1.0"

__all__ = [
    "Adic",
    "Approx",
    "Closure",
    "DivisorialToric",
    "FiltmultError",
    "Filtration",
    "MonomialIdeal",
    "Product",
    "QuadExt",
    "Rescale",
    "Table",
    "Trivial",
    "Truncate",
    "WeightValuation",
    "delta_body",
    "minkowski_equality_test",
    "minkowski_report",
    "mixed_multiplicities",
    "multiplicity_limit",
    "multiplicity_via_volume",
    "quad",
    "trsk_check",
]
