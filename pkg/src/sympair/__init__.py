"""Symbol-pair MDS evaluation codes over finite fields.

Field arithmetic, pair-weight metrics, the interleaved evaluation-code
construction, and exhaustive pair-weight spectra checked against closed
forms.
"""

from .construction import (
    CodeSpec,
    Codeword,
    EvalPoint,
    encode,
    generator_matrix,
    is_mds_pair,
    layout,
    make_spec,
    matrix_rank,
    root_spec,
    singleton_pair_cap,
    theoretical_dp,
)
from .errors import SymPairError
from .finite_field import (
    GF,
    Field,
    FieldElement,
    Polynomial,
    count_monic_irreducible,
    enumerate_elements,
    field_from_order,
    is_irreducible,
    poly_eval,
    poly_from_roots,
)
from .pair_metric import (
    Shape,
    SymbolVector,
    hamming_distance,
    hamming_weight,
    pair_distance,
    pair_read,
    pair_weight,
    shape_bound,
    shape_decompose,
)
from .spectrum import (
    WeightDistribution,
    brute_min_pair_distance,
    class_census,
    closed_form_A3,
    closed_form_A4,
    compare_distributions,
    pair_weight_distribution,
)

__version__ = "0.1.0"
