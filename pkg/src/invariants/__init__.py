from .linalg import (
    jacobi_eigh, hermitian_eigenvalues, char_coeffs, coeffs_from_eigenvalues, elementary_symmetric,
    principal_minor_sum, numerical_rank, singular_values, gram_determinant,
)
from .levi import (
    levi_matrix, projected_hessian, nullity, classify_point, classify_points, null_space,
    ambient_null_space, pseudoconvexity_scan, levi_flat_check,
)

__all__ = [
    "jacobi_eigh", "hermitian_eigenvalues", "char_coeffs", "coeffs_from_eigenvalues", "elementary_symmetric",
    "principal_minor_sum", "numerical_rank", "singular_values", "gram_determinant",
    "levi_matrix", "projected_hessian", "nullity", "classify_point", "classify_points", "null_space",
    "ambient_null_space", "pseudoconvexity_scan", "levi_flat_check",
]
