from .submanifold import (
    dbar_b, partial_b, covector_matrix, tangent_basis, nondegeneracy_check, rank_test, wedge_check,
    parameter_samples, verify_parametrized, verify_radical_generators,
)

__all__ = [
    "dbar_b", "partial_b", "covector_matrix", "tangent_basis", "nondegeneracy_check", "rank_test",
    "wedge_check", "parameter_samples", "verify_parametrized", "verify_radical_generators",
]
