"""
Spaces X, preduals Y and their norms
"""

from .space_spec import SpaceFamily, SpaceSpec
from .norms import (
    KernelCombo,
    NormEnclosure,
    hinf_norm_enclosure,
    geometric_tail,
    pairing,
    weighted_norm,
    x_norm_poly,
    y_norm_brute,
    y_norm_combo,
)
from .gram import check_conditioning, gram_h2

__all__ = [
    "SpaceFamily",
    "SpaceSpec",
    "KernelCombo",
    "NormEnclosure",
    "hinf_norm_enclosure",
    "geometric_tail",
    "pairing",
    "weighted_norm",
    "x_norm_poly",
    "y_norm_brute",
    "y_norm_combo",
    "check_conditioning",
    "gram_h2",
]
