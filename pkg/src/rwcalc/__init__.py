"""rwcalc: exact Koszul matrix factorisation calculus and the surface
invariants it generates.

The layers, bottom up: exact polynomials (`poly`), factorisation words
(`matfac`), the rewrite calculus (`rewrite`), homotopy certification and
cohomology (`oracle`), the defect 2-category (`cat2`), duality data
(`duality`), surface evaluation (`tqft`), the word language (`bordism`) and
the command line (`cli`).
"""

from .poly import (
    Bidegree, Variable, Polynomial, poly, vdiff, varlist, dot,
    parse_poly, parse_variable, divided_difference, divide_linear,
    bidegree_of,
    DEG_X, DEG_A, DEG_W, DEG_D, ZERO_DEG,
)
from .matfac import (
    KoszulFactor, KoszulWord, MatrixFactorisation, koszul, koszul_multi,
    unit_mf, word_from_json, check_mf, WordError,
)
from .rewrite import (
    normalize, NormalizeResult, eliminate_internal, row_combine,
    swap_factor, negate_word, collapse_zero_factor, FreeSummandLog,
    RewriteError,
)
from .oracle import (
    certify_equivalence, certify_elimination, cohomology_of_zero,
    slice_cohomology, HomotopyCertificate, GradedVectorSpace, OracleError,
)
from .cat2 import (
    ObjectC, OneMorphism, TwoMorphism, compose_1, identity_1, box_1,
    braiding, unitor_lambda, unitor_rho, unit_2, vertical, horizontal,
    box_2, canonical_form,
)
from .duality import (
    TwistParams, DEFAULT_PARAMS, adjunction_one_morphisms, verify_zorro,
    serre, verify_serre_trivial,
)
from .series import HilbertSeries, FactoredSeries
from .tqft import (
    circle, state_space, generating_function, specialize_s_to_minus_t,
    index_closed_form, frobenius, verify_frobenius, circle_class_word,
    grothendieck_product, StateSpace,
)
from .bordism import parse_bordism, evaluate, BordismError

__all__ = [
    "Bidegree", "Variable", "Polynomial", "poly", "vdiff", "varlist", "dot",
    "parse_poly", "parse_variable", "divided_difference", "divide_linear",
    "bidegree_of",
    "DEG_X", "DEG_A", "DEG_W", "DEG_D", "ZERO_DEG",
    "KoszulFactor", "KoszulWord", "MatrixFactorisation", "koszul",
    "koszul_multi", "unit_mf", "word_from_json", "check_mf", "WordError",
    "normalize", "NormalizeResult", "eliminate_internal", "row_combine",
    "swap_factor", "negate_word", "collapse_zero_factor", "FreeSummandLog",
    "RewriteError",
    "certify_equivalence", "certify_elimination", "cohomology_of_zero",
    "slice_cohomology", "HomotopyCertificate", "GradedVectorSpace",
    "OracleError",
    "ObjectC", "OneMorphism", "TwoMorphism", "compose_1", "identity_1",
    "box_1", "braiding", "unitor_lambda", "unitor_rho", "unit_2",
    "vertical", "horizontal", "box_2", "canonical_form",
    "TwistParams", "DEFAULT_PARAMS", "adjunction_one_morphisms",
    "verify_zorro", "serre", "verify_serre_trivial",
    "HilbertSeries", "FactoredSeries",
    "circle", "state_space", "generating_function",
    "specialize_s_to_minus_t", "index_closed_form", "frobenius",
    "verify_frobenius", "circle_class_word", "grothendieck_product",
    "StateSpace",
    "parse_bordism", "evaluate", "BordismError",
]
