"""Exact computations for rational and trigonometric Cherednik algebras."""
from .errors import DomainError, InvariantViolation
from .exactalg import K1, K2, ExactMatrix, MultiPoly, ParamScalar
from .rootsys import CartanType, build

__all__ = ["DomainError", "InvariantViolation", "K1", "K2", "ExactMatrix", "MultiPoly", "ParamScalar",
           "CartanType", "build"]
__version__ = "0.1.0"
