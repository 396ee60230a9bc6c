"""Exact affine Kac-Moody algebras and their unitarizable highest-weight modules."""

from .cartan import GeneralizedCartanMatrix, classify, validate_gcm
from .rootdata import catalog, enumerate_roots
from .chevalley import chevalley_basis
from .affine import LoopElement, affine_generators, bracket, twist
from .weights import fundamental_weights, level
from .verma import StandardBorelSpec, check_unitarizable, gram
from .errors import KmxError

__version__ = "0.1.0"

__all__ = [
    "GeneralizedCartanMatrix",
    "classify",
    "validate_gcm",
    "catalog",
    "enumerate_roots",
    "chevalley_basis",
    "LoopElement",
    "affine_generators",
    "bracket",
    "twist",
    "fundamental_weights",
    "level",
    "StandardBorelSpec",
    "check_unitarizable",
    "gram",
    "KmxError",
]
