"""Polynomial representations of quiver and curve Schur algebras."""

from .kernels import BACKEND
from .ring import Poly, RingSignature, parse_poly

__all__ = ["BACKEND", "Poly", "RingSignature", "parse_poly"]
__version__ = "0.1.0"
