from .layered import (
    BLPiece,
    ClmValidation,
    KKSplit,
    LayeredMulticomplex,
    bl_decompose,
    clm_length,
    clm_link,
    complete_clm,
    element_sum,
    injective_clm,
    kk_split,
    layer_by_distance,
    multicomplex_to_complex,
    random_clm,
    validate_clm,
)
from .legal import LegalChecker, LegalSequence, is_convex, legal_check, legal_double
from .nonpure import (
    NonpureLayeredFamily,
    example_hnp5,
    extend_nonpure,
    seed_nonpure,
    validate_nonpure,
)
from .search import ClmSearchResult, max_clm_search
