"""Exact rational/integer algebra: polynomials, resultants and lattices."""

from .lattice import (
    DEFAULT_INDEX_CAP,
    CapExceeded,
    IntegerLattice,
    SmithDecomposition,
    coset_reps,
    hnf,
    integer_kernel,
    is_sublattice,
    lattice_image,
    lattice_intersect,
    lattice_member,
    lattice_sum,
    quotient_invariants,
    relative_index,
    scalar_lattice,
    smith,
    standard_lattice,
)
from .poly import MultiPoly, format_upoly, parse_upoly, resultant

__all__ = [
    "DEFAULT_INDEX_CAP",
    "CapExceeded",
    "IntegerLattice",
    "MultiPoly",
    "SmithDecomposition",
    "coset_reps",
    "format_upoly",
    "hnf",
    "integer_kernel",
    "is_sublattice",
    "lattice_image",
    "lattice_intersect",
    "lattice_member",
    "lattice_sum",
    "parse_upoly",
    "quotient_invariants",
    "relative_index",
    "resultant",
    "scalar_lattice",
    "smith",
    "standard_lattice",
]
