"""Lattice densities of periodic sets, local densities, ideal flags and regularity."""

from .flags import IdealFlags, denominator_to_integer_coords, flags_from_ideals, ideal_chain
from .local import Box, TilingError, check_tiling, local_ld, local_volume_direct, rescale_first_axis
from .periodic import PeriodicSet, density, periodic_sumset
from .regularity import RegularityError, RegularityResult, check_decomposition, regular_decomposition
from .staircase import (
    Flag,
    StaircaseBody,
    check_witness,
    compress_last_axis,
    lattice_density,
    ld_contains,
    ld_witness,
    projection,
    projection_direct,
    volume,
)

__all__ = [
    "Box",
    "Flag",
    "IdealFlags",
    "PeriodicSet",
    "RegularityError",
    "RegularityResult",
    "StaircaseBody",
    "TilingError",
    "check_decomposition",
    "check_tiling",
    "check_witness",
    "compress_last_axis",
    "denominator_to_integer_coords",
    "density",
    "flags_from_ideals",
    "ideal_chain",
    "lattice_density",
    "ld_contains",
    "ld_witness",
    "local_ld",
    "local_volume_direct",
    "periodic_sumset",
    "projection",
    "projection_direct",
    "regular_decomposition",
    "rescale_first_axis",
    "volume",
]
