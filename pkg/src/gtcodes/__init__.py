"""Generalized twisted centralizer codes C(A, D) = {B : AB = BAD} over prime fields."""

from .analysis import (
    CodeReport,
    ProductBound,
    SearchResult,
    TwistCandidate,
    bound_report,
    centralizer_dimension,
    find_invertible_codeword,
    minimum_distance,
    product_code_check,
    search_twists,
    weight_distribution,
)
from .code import (
    GtcCode,
    SyndromeTable,
    build_syndrome_table,
    construct_code,
    correct_single_error,
    encode,
    is_codeword,
    message_of,
    parity_check_matrix,
    syndrome,
)
from .errors import *  # noqa: F401,F403
from .galois import (
    FieldElement,
    Matrix,
    field_inverse,
    kernel_basis,
    kronecker_product,
    matrix_inverse,
    matrix_product,
    matrix_transpose,
    rank,
    row_reduce,
    unvectorize,
    vectorize,
)
from .graphs import (
    Permutation,
    automorphism_group,
    group_act,
    is_graph_automorphism,
    verify_coordinate_action,
)
from .puncture import (
    PositionMask,
    PuncturedCode,
    puncture,
    punctured_minimum_distance,
    zero_constrained_subcode,
)

__version__ = "0.1.0"
