from .core import *
from .expr import *
from .geometry import *
from .invariants import *
from .strata import *
from .submanifold import *
from .service import *
from .storage import *
from .cli import *

__all__ = []
from . import core, expr, geometry, invariants, strata, submanifold, service, storage, cli
__all__ += core.__all__
__all__ += expr.__all__
__all__ += geometry.__all__
__all__ += invariants.__all__
__all__ += strata.__all__
__all__ += submanifold.__all__
__all__ += service.__all__
__all__ += storage.__all__
__all__ += cli.__all__
