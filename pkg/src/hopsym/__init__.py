"""Symmetry polynomials of periodic Feinberg-Zee hopping operators."""

from .hopping import (
    SignSeq,
    finite_spectrum,
    hopping_poly,
    parse_signs,
    periodic_spectrum_points,
    symbol_charpoly_check,
)
from .polyring import IntPoly, RootFindingError, compose, roots_shifted
from .symmetries import closure_T, enumerate_S

__all__ = [
    "IntPoly",
    "RootFindingError",
    "SignSeq",
    "closure_T",
    "compose",
    "enumerate_S",
    "finite_spectrum",
    "hopping_poly",
    "parse_signs",
    "periodic_spectrum_points",
    "roots_shifted",
    "symbol_charpoly_check",
]
