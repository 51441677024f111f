"""Exact computations with Maurer-Cartan elements of nilpotent (shifted)
homotopy Lie algebras: free Lie algebras and BCH, polynomial forms and the
Dupont contraction, homotopy transfer, convolution algebras, formal ODE
solvers, cosimplicial models and deformation complexes."""

from .core import (GMap, GradedSpace, InvalidInput, PreconditionViolation, UnsupportedInstance,
                   Vec, koszul_sign)

__version__ = "0.1.0"

__all__ = ["GMap", "GradedSpace", "InvalidInput", "PreconditionViolation", "UnsupportedInstance",
           "Vec", "koszul_sign", "__version__"]
