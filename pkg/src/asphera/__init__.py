"""Coset posets, equivariant homology and the group-module algebra around them."""

from .abelian import AbelianGroup
from .grp import FiniteGroup, GroupAction, Subgroup, build_group, cyclic, dihedral, direct_product
from .limits import ScaleExceeded

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "FiniteGroup",
    "GroupAction",
    "ScaleExceeded",
    "Subgroup",
    "build_group",
    "cyclic",
    "dihedral",
    "direct_product",
]
