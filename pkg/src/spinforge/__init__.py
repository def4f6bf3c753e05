"""Exact construction and audit of two- and three-electron spin/space states."""

from .radical import QuadraticScalar, try_sqrt
from .spin import Permutation, SpinState, basis

__version__ = "0.1.0"

__all__ = ["QuadraticScalar", "try_sqrt", "SpinState", "Permutation", "basis", "__version__"]
