"""Exact-arithmetic toolkit for q-Steiner systems and the Grassmann scheme."""

from .exactq import (
    ExactRational,
    gauss_binom,
    is_prime_power,
    q_int,
    q_pochhammer,
    q_valuation,
)
from .gfspaces import (
    FieldSpec,
    Subspace,
    canonical_index,
    count_fixed_intersection,
    enumerate_subspaces,
    field,
    intersection_dim,
    mobius_interval,
    spanning_count_bruteforce,
    spanning_count_formula,
)
from .grassmann import (
    SchemeInstance,
    eberlein_eigenvalue,
    eigenspace_multiplicity,
    eisfeld_eigenvalue,
    verify_spectrum,
)
from .linalg import ExactMatrix, mat_mul, rank_exact, rank_mod_p, transpose
from .steiner import (
    Design,
    ParamSet,
    dimension_formula,
    enumerate_steiner,
    gram_check,
    gram_coefficients,
    incidence_matrix,
    inclusion_matrix,
    intersect_count,
    kappa_formula,
    kappa_i_formula,
    lambda_i,
    load_design_file,
    mu_eigenvalue,
    rank_certificate,
    sample_steiner,
    save_design_file,
    verify_design,
)

__all__ = [
    "Design",
    "ExactMatrix",
    "ExactRational",
    "FieldSpec",
    "ParamSet",
    "SchemeInstance",
    "Subspace",
    "canonical_index",
    "count_fixed_intersection",
    "dimension_formula",
    "eberlein_eigenvalue",
    "eigenspace_multiplicity",
    "eisfeld_eigenvalue",
    "enumerate_steiner",
    "enumerate_subspaces",
    "field",
    "gauss_binom",
    "gram_check",
    "gram_coefficients",
    "incidence_matrix",
    "inclusion_matrix",
    "intersect_count",
    "intersection_dim",
    "is_prime_power",
    "kappa_formula",
    "kappa_i_formula",
    "lambda_i",
    "load_design_file",
    "mat_mul",
    "mobius_interval",
    "mu_eigenvalue",
    "q_int",
    "q_pochhammer",
    "q_valuation",
    "rank_certificate",
    "rank_exact",
    "rank_mod_p",
    "sample_steiner",
    "save_design_file",
    "spanning_count_bruteforce",
    "spanning_count_formula",
    "transpose",
    "verify_design",
    "verify_spectrum",
]

__version__ = "0.1.0"
