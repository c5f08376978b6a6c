from .hypersurface import Hypersurface

__all__ = ["Hypersurface"]
