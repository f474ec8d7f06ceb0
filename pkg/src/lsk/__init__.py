"""Heegaard Floer H-functions and surgery d-invariants for L-space knots and two-component links."""
from .errors import LSKError
from .h_engine import (
    KnotHFunction,
    LinkHFunction2,
    h_from_alexander_knot,
    h_from_alexander_link,
    validate,
)
from .poly import LaurentPoly, parse_poly, torus_knot_alexander
from .surgery_d import d_knot_surgery, d_link_surgery, phi

__version__ = "0.1.0"

__all__ = [
    "LSKError",
    "KnotHFunction",
    "LinkHFunction2",
    "LaurentPoly",
    "d_knot_surgery",
    "d_link_surgery",
    "h_from_alexander_knot",
    "h_from_alexander_link",
    "parse_poly",
    "phi",
    "torus_knot_alexander",
    "validate",
]
