"""Exact descent of fast matrix multiplication schemes from Q[sqrt(d)] to Q.

Submodules:

* :mod:`mmdescend.exactnum` -- arithmetic in Q and Q[sqrt(d)]
* :mod:`mmdescend.linalg` -- exact dense linear algebra
* :mod:`mmdescend.scheme` -- schemes, Brent equations, De Groote actions
* :mod:`mmdescend.formats` -- canonical JSON file formats
* :mod:`mmdescend.rationalize` -- intertwiners, fixed spaces and descent
* :mod:`mmdescend.obstruct` -- trace obstructions to integer schemes
"""

__version__ = "0.1.0"

from .exactnum import Field, QElem, parse_entry, format_entry
from .linalg import ExactMat
from .scheme import (
    Scheme,
    Triple,
    TransformTriple,
    brent_verify,
    apply_transform,
    cyclic_shift,
    transpose_action,
    scalar_redistribute,
    products,
    detect_ring,
    standard_scheme,
)
from .formats import load_scheme, save_scheme, dump_scheme, parse_scheme
from .rationalize import descend, solve_intertwiner, fixed_space, post_check
from .obstruct import integer_obstruction, trace_profile

__all__ = [
    "Field",
    "QElem",
    "parse_entry",
    "format_entry",
    "ExactMat",
    "Scheme",
    "Triple",
    "TransformTriple",
    "brent_verify",
    "apply_transform",
    "cyclic_shift",
    "transpose_action",
    "scalar_redistribute",
    "products",
    "detect_ring",
    "standard_scheme",
    "load_scheme",
    "save_scheme",
    "dump_scheme",
    "parse_scheme",
    "descend",
    "solve_intertwiner",
    "fixed_space",
    "post_check",
    "integer_obstruction",
    "trace_profile",
]
