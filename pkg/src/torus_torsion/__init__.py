"""Torsion points of sparse multivariate integer polynomial systems."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .core import (
    CyclotomicPair,
    FactoredSquarefree,
    LacunaryPoly,
    TorsionCoset,
    TorsionPoint,
    WholeTorus,
    canonicalize,
    eval_vanishes_at,
)
from .solver import (
    IncompleteFactorization,
    build_separated_family,
    common_cyclotomic_pairs,
    cyclotomic_pairs,
    expand_pair,
    expand_pairs,
    torsion_cosets,
    torsion_cosets_variety,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "CyclotomicPair",
    "FactoredSquarefree",
    "IncompleteFactorization",
    "LacunaryPoly",
    "TorsionCoset",
    "TorsionPoint",
    "WholeTorus",
    "build_separated_family",
    "canonicalize",
    "common_cyclotomic_pairs",
    "cyclotomic_pairs",
    "eval_vanishes_at",
    "expand_pair",
    "expand_pairs",
    "torsion_cosets",
    "torsion_cosets_variety",
]
