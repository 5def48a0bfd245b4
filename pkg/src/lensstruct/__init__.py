"""Higher structure sets of fake lens spaces with fundamental group of order 2^K."""

from .exactalg import FgAbelianGroup, IntLattice, hnf, snf, subgroup_structure
from .repring import RepRing, RepRingElem, eigenlattice, f_element
from .structset import (
    closed_form_theorem,
    corollary_lens_times_sphere,
    structure_set_cp,
    structure_set_lens_even,
    structure_set_lens_odd,
)

__all__ = [
    "FgAbelianGroup",
    "IntLattice",
    "hnf",
    "snf",
    "subgroup_structure",
    "RepRing",
    "RepRingElem",
    "eigenlattice",
    "f_element",
    "closed_form_theorem",
    "corollary_lens_times_sphere",
    "structure_set_cp",
    "structure_set_lens_even",
    "structure_set_lens_odd",
]
