"""Topological invariants of twisted toric 4-manifolds over surfaces with corners."""

from .cohomology import cohomology_of_X, e2_table
from .errors import ClosureError, InvalidSpecError, TTMError, UnsupportedError
from .fileformat import parse_spec_file, serialize_spec
from .invariants import euler_characteristic, fundamental_group
from .model import MonodromyRep, TwistedToricSpec, make_spec, validate_spec
from .signature import signature_total
from .surface import Cylinder, OneBoundary

__all__ = [
    "ClosureError",
    "Cylinder",
    "InvalidSpecError",
    "MonodromyRep",
    "OneBoundary",
    "TTMError",
    "TwistedToricSpec",
    "UnsupportedError",
    "cohomology_of_X",
    "e2_table",
    "euler_characteristic",
    "fundamental_group",
    "make_spec",
    "parse_spec_file",
    "serialize_spec",
    "signature_total",
    "validate_spec",
]
