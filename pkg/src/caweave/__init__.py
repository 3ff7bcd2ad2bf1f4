"""Interleaving binary sequences and the linear cellular automata that generate them."""

from .gf2field import INF, PrimitivePolynomial, ZechTable, build_zech_table, validate_primitive, zech
from .interleave import InterleaveSpec, analyze, build_from_spec, deinterleave, interleave, make_spec
from .seqcore import ZERO, PeriodicSequence, linear_complexity, minimal_period, pn_sequence, shift_between

__version__ = "0.1.0"

__all__ = [
    "INF",
    "InterleaveSpec",
    "PeriodicSequence",
    "PrimitivePolynomial",
    "ZERO",
    "ZechTable",
    "analyze",
    "build_from_spec",
    "build_zech_table",
    "deinterleave",
    "interleave",
    "linear_complexity",
    "make_spec",
    "minimal_period",
    "pn_sequence",
    "shift_between",
    "validate_primitive",
    "zech",
]
