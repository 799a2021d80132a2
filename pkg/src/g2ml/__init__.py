"""Exact-arithmetic toolkit for rational moduli points of genus-2 curves.

Normalizes and enumerates points of the weighted moduli space by weighted
height, generates points on the split-Jacobian loci, builds the labeled
dataset, and trains from-scratch classifiers that detect split Jacobians
from the invariants alone.
"""

__version__ = "0.1.0"

from .igusa import (AbsoluteTriple, BinarySextic, ModuliPoint,
                    SingularSexticError, absolute_i, absolute_t,
                    igusa_invariants, same_moduli, veronese)
from .wproj import (HALVED_WEIGHTS, MODULI_WEIGHTS, Height, RadicalScalar,
                    WeightedPoint, WeightSystem, abs_height, abs_normalize,
                    abs_wgcd, height, height_leq, normalize, scalar_star,
                    wgcd)

__all__ = [
    "__version__",
    "AbsoluteTriple", "BinarySextic", "ModuliPoint", "SingularSexticError",
    "absolute_i", "absolute_t", "igusa_invariants", "same_moduli", "veronese",
    "HALVED_WEIGHTS", "MODULI_WEIGHTS", "Height", "RadicalScalar",
    "WeightedPoint", "WeightSystem", "abs_height", "abs_normalize",
    "abs_wgcd", "height", "height_leq", "normalize", "scalar_star", "wgcd",
]
