"""Explicit solutions of the sixth-order reduction equation on toric surfaces.

Submodules: ``exactalg`` (rational polynomials and roots), ``orthotoric``
(curvature, residual, solution families, pairings), ``calabi`` (ruled
surface ODE and Futaki integrals), ``invariants`` (topological constants
and slopes) and ``cli``.
"""
from . import calabi, exactalg, invariants, orthotoric
from .errors import BHEError

__version__ = "0.1.0"

__all__ = ["calabi", "exactalg", "invariants", "orthotoric", "BHEError", "__version__"]
