"""Exact computations for rank-two bundles on complete-intersection surfaces.

Cohomology of complete intersections, Cayley-Bacharach checks on explicit
point sets, linear spaces on special hypersurfaces with their normal
bundles, and the numerical invariants of the resulting bundles.
"""

__version__ = "0.1.0"

from .field import QQ, PrimeField, choose_prime, nth_roots
from .hilbert import CIType, cb_deficiency, hilbert_function, ideal_sheaf_cohomology, structure_sheaf_cohomology
from .linalg import ExactMatrix, kernel_basis, rank
from .poly import MultiPoly, monomial_basis, parse_poly
from .subspace import LinearSubspace

__all__ = [
    "QQ", "PrimeField", "choose_prime", "nth_roots",
    "CIType", "cb_deficiency", "hilbert_function", "ideal_sheaf_cohomology", "structure_sheaf_cohomology",
    "ExactMatrix", "kernel_basis", "rank",
    "MultiPoly", "monomial_basis", "parse_poly",
    "LinearSubspace",
]
