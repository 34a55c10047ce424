"""JSJ decompositions of 0-surgeries on genus-one pretzel knots, with an
exact exceptional-filling engine for the minimally twisted chain links."""

from .classify import JsjPiece, JsjResult, classify, cross_check, hyperbolic_oracle, prop31_nonhyperbolic
from .chainfill import FillingTuple, LinkKind, orbit_decide
from .pretzel import PretzelParams, alexander, jones

__version__ = "0.1.0"

__all__ = [
    "JsjPiece", "JsjResult", "classify", "cross_check", "hyperbolic_oracle",
    "prop31_nonhyperbolic", "FillingTuple", "LinkKind", "orbit_decide",
    "PretzelParams", "alexander", "jones",
]
