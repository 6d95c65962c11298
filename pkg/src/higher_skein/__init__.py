"""Exact skein invariants of links: Conway, HOMFLY, the series P and the higher Conway invariants."""

from .algebra import LaurentPoly, Series, TwoVarLaurent
from .diagram import Diagram, FormalCombination, make_G, parse_diagram, resolve
from .skein import SkeinContext, conway, homfly, p_series

__all__ = [
    "Diagram",
    "FormalCombination",
    "LaurentPoly",
    "Series",
    "SkeinContext",
    "TwoVarLaurent",
    "conway",
    "homfly",
    "make_G",
    "p_series",
    "parse_diagram",
    "resolve",
]
__version__ = "0.1.0"
