"""Exact cyclic and Hopf-cyclic cohomology of finite linear categories over Q(i)."""

from .exact_linalg import Scalar, SparseMatrix, parse_scalar, format_scalar, rank, kernel_basis, solve
from .lincat import LinCategory, validate_presentation
from .nerve import Cochain, NerveBasis, nerve_basis, nerve_size, cocyclic_structure_maps
from .cohomology import (CohomologyReport, class_equal, coboundary_witness, cohomology_dims,
                         cyclic_cohomology, hochschild_cohomology)
from .omega import OmegaCategory, cocycle_to_trace, trace_to_cocycle
from .fredholm import FredholmModule
from .periodicity import cup_product, periodicity_S, verify_periodicity_theorem, homotopy_family_check
from .morita import morita_certificate, inner_certificate
from .hopf import (HopfAlgebra, SAYDModule, HCategory, HopfComplex, group_algebra, hopf_cyclic_cohomology,
                   cotensor_pairing)
from . import errors

__version__ = "0.1.0"

__all__ = [
    "Scalar", "SparseMatrix", "parse_scalar", "format_scalar", "rank", "kernel_basis", "solve",
    "LinCategory", "validate_presentation",
    "Cochain", "NerveBasis", "nerve_basis", "nerve_size", "cocyclic_structure_maps",
    "CohomologyReport", "class_equal", "coboundary_witness", "cohomology_dims", "cyclic_cohomology",
    "hochschild_cohomology",
    "OmegaCategory", "cocycle_to_trace", "trace_to_cocycle",
    "FredholmModule",
    "cup_product", "periodicity_S", "verify_periodicity_theorem", "homotopy_family_check",
    "morita_certificate", "inner_certificate",
    "HopfAlgebra", "SAYDModule", "HCategory", "HopfComplex", "group_algebra", "hopf_cyclic_cohomology",
    "cotensor_pairing",
    "errors",
]
