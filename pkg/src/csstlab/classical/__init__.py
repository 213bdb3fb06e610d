"""Classical binary linear codes: construction, classification and distances."""

from .code import (
    CodeClassification,
    LinearCode,
    augment,
    classify,
    complement_basis,
    from_rows,
    full_space,
    puncture,
    repetition_code,
    schur_square,
    shorten,
    span,
    zero_code,
)
from .cyclic import cyclic_code, cyclic_divisors, cyclotomic_cosets, irreducible_factors
from .distance import DistanceResult, coset_min_weight, min_distance

__all__ = [
    "CodeClassification",
    "DistanceResult",
    "LinearCode",
    "augment",
    "classify",
    "complement_basis",
    "coset_min_weight",
    "cyclic_code",
    "cyclic_divisors",
    "cyclotomic_cosets",
    "from_rows",
    "full_space",
    "irreducible_factors",
    "min_distance",
    "puncture",
    "repetition_code",
    "schur_square",
    "shorten",
    "span",
    "zero_code",
]
