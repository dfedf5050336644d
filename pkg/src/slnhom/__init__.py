"""sl(n) polynomials and integer link homology of braid closures, built from MOY states."""

from .diagram import BraidWord, closure, parse_braid
from .homology import BigradedHomology
from .link import link_homology
from .statesum import braid_bracket, diagram_bracket

__version__ = "0.1.0"

__all__ = [
    "BigradedHomology",
    "BraidWord",
    "braid_bracket",
    "closure",
    "diagram_bracket",
    "link_homology",
    "parse_braid",
]
