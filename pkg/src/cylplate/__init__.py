"""Casimir interaction between a cylinder and a plate at finite temperature.

Three routes to the same quantities: the exact functional determinant
(:mod:`cylplate.exact`), the proximity force approximation
(:mod:`cylplate.pfa`) and small-separation closed forms
(:mod:`cylplate.asymptotics`).  Natural units, hbar = c = k_B = 1.
"""
from .errors import (CasimirError, ConvergenceError, DivergentExpansionError, DomainError,
                     PoleError, QuadratureError)
from .geometry import BoundaryCondition, ConvergenceReport, CylinderPlate, NumericsConfig

__all__ = [
    "BoundaryCondition",
    "CylinderPlate",
    "NumericsConfig",
    "ConvergenceReport",
    "CasimirError",
    "DomainError",
    "PoleError",
    "QuadratureError",
    "ConvergenceError",
    "DivergentExpansionError",
]
