"""Exact analysis of foliations on the projective plane relative to the toric divisor.

The hot loops (sparse products, dense division) live in ``kernels``, which
uses a compiled extension when it is built and pure Python otherwise.
"""

from .algebra import AlgebraicContext, AlgNum, ZeroDivisorSplit, over_branches
from .kernels import BACKEND
from .parse import parse_input
from .poly import INFINITY, SparsePoly
from .projective import dichotomy, from_holomorphic, validate

__all__ = [
    "AlgebraicContext",
    "AlgNum",
    "BACKEND",
    "INFINITY",
    "SparsePoly",
    "ZeroDivisorSplit",
    "dichotomy",
    "from_holomorphic",
    "over_branches",
    "parse_input",
    "validate",
]
