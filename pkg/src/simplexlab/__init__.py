"""Exact analysis of empty lattice simplices in dimension 4."""

from .exactalg import GroupStructure, SuperLattice, group_structure
from .simplexcore import (
    CanonicalForm,
    CyclicSimplexSpec,
    GeneralSimplex,
    canonical_form,
    is_empty,
    is_empty_general,
    to_standard_form,
)
from .widthcalc import WidthCertificate, width, width_general

__version__ = "0.1.0"
