"""Quaternion products, commutators, similarity classes and exponential derivatives.

Two scalar backends: IEEE doubles (Float mode) and ``fractions.Fraction``
(Exact mode). The mode of a value follows from the type of its components.
"""

from .algebra import (
    DEFAULT_TOLERANCE,
    I,
    J,
    K,
    ONE,
    Mode,
    Quaternion,
    Tolerance,
    Vector3,
    conj,
    det3,
    inverse,
    mul,
    norm,
    norm_sq,
)
from .commutator import (
    Permutation,
    SignClaimReport,
    Verdict,
    all_permutations,
    commutator,
    flat_formula,
    nested_commutator,
    verify_sign_claim,
)
from .errors import ArityError, ModeError, ParseError, PreconditionError, QuaternionError, SizeLimitError
from .exponential import (
    JetPair,
    PolarForm,
    polar_decompose,
    qexp,
    qexp_derivative,
    qexp_derivative_series,
    qexp_series,
)
from .literals import format_quaternion, parse_quaternion
from .similarity import (
    ClassPartition,
    DependenceCoefficients,
    SimilarityKey,
    dependence_coefficients,
    enumerate_class_partition,
    is_similar,
    multiproduct,
    quad_criterion,
    quad_re_difference_formula,
    similarity_witness,
    triple_re_difference,
    triple_similar_criterion,
)

__all__ = [
    "DEFAULT_TOLERANCE",
    "I",
    "J",
    "K",
    "ONE",
    "Mode",
    "Quaternion",
    "Tolerance",
    "Vector3",
    "conj",
    "det3",
    "inverse",
    "mul",
    "norm",
    "norm_sq",
    "Permutation",
    "SignClaimReport",
    "Verdict",
    "all_permutations",
    "commutator",
    "flat_formula",
    "nested_commutator",
    "verify_sign_claim",
    "JetPair",
    "PolarForm",
    "polar_decompose",
    "qexp",
    "qexp_derivative",
    "qexp_derivative_series",
    "qexp_series",
    "ClassPartition",
    "DependenceCoefficients",
    "SimilarityKey",
    "dependence_coefficients",
    "enumerate_class_partition",
    "is_similar",
    "multiproduct",
    "quad_criterion",
    "quad_re_difference_formula",
    "similarity_witness",
    "triple_re_difference",
    "triple_similar_criterion",
    "ArityError",
    "ModeError",
    "ParseError",
    "PreconditionError",
    "QuaternionError",
    "SizeLimitError",
    "format_quaternion",
    "parse_quaternion",
]

__version__ = "0.1.0"
