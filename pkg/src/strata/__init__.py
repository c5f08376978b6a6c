from .sampling import grid_seeds, to_real, to_complex, gauss_newton, sample_hypersurface, sample_zero_set
from .strata import (
    check_stratum_index, stratum_residuals, refine_to_stratum, estimate_dimension, necessary_condition, conventions,
    detect_stratum, nullity_filtration,
)

__all__ = [
    "grid_seeds", "to_real", "to_complex", "gauss_newton", "sample_hypersurface", "sample_zero_set",
    "check_stratum_index", "stratum_residuals", "refine_to_stratum", "estimate_dimension", "necessary_condition", "conventions",
    "detect_stratum", "nullity_filtration",
]
