"""Canonical forms for polynomials in the Riemann curvature tensor."""
from __future__ import annotations

__version__ = "0.1.0"

from .expr import (DEFAULT_ORDER, ZERO, Dummy, Free, IndexOrder, NamedDummy, R, RFactor, RMonomial,
                   RPolynomial)
from .multiterm import direct_bianchi_rref, ext, normal, prenormal_polynomial, rebe
from .prenormal import pnom
from .text import ParseError, ValidationError, parse_expression, render_expression

__all__ = [
    "Free", "Dummy", "NamedDummy", "IndexOrder", "DEFAULT_ORDER", "RFactor", "R", "RMonomial",
    "RPolynomial", "ZERO", "pnom", "ext", "rebe", "direct_bianchi_rref", "normal",
    "prenormal_polynomial", "parse_expression", "render_expression", "ParseError",
    "ValidationError", "__version__",
]
