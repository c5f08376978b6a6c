from .expr import *
from .parser import parse, tokenize
from .wirtinger import wirtinger_dz, wirtinger_dzbar, is_real_valued, RealValuedness

from . import expr as _expr

__all__ = _expr.__all__ + [
    "parse", "tokenize", "wirtinger_dz", "wirtinger_dzbar", "is_real_valued", "RealValuedness",
]
