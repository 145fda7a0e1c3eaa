"""Exact and numeric tools for plane quartic curves.

Submodules:

``polyring``   sparse multivariate polynomials with rational coefficients
``parser``     text input and output for polynomials
``dixmier``    transvectants, contravariants and the Dixmier invariants
``numroots``   complex polynomial roots
``bitangent``  the 28 bitangents, contact points and syzygy tests
``detrep``     symmetric determinantal representations of the 6-cyclic family
``cli``        command line interface (``python -m quartics``)
"""

from .dixmier import DixmierSet, TernaryQuartic, dixmier_invariants, make_curve
from .parser import ParseError, format_poly, parse, parse_equation
from .polyring import MPoly, resultant, variables

__version__ = "0.1.0"

__all__ = [
    "MPoly",
    "variables",
    "resultant",
    "parse",
    "parse_equation",
    "format_poly",
    "ParseError",
    "TernaryQuartic",
    "DixmierSet",
    "make_curve",
    "dixmier_invariants",
]
