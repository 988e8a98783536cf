"""Pushforward of quadratic differentials: the coderivative of the pullback map."""

from pullback.pushforward.coderivative import (
    CoderivativeMatrix,
    check_admissible,
    coderivative_rank,
    critical_value_locus,
)
from pullback.pushforward.local import (
    DegenerateInput,
    cauchy_closed_form,
    cauchy_like_det,
    cauchy_like_matrix,
    laurent_local_pushforward,
)
from pullback.pushforward.numeric import (
    AsymptoticFit,
    NotSimpleCritical,
    NumericFailure,
    asymptotic_constant,
    fiber_sum,
)
from pullback.pushforward.qd import (
    AdmissibilityViolated,
    DuplicatePoint,
    NonIntegrable,
    QuadraticDifferential,
    TooFewPoints,
    expand_in_basis,
    qd_basis,
    residue,
)
from pullback.pushforward.trace import (
    ConstantMap,
    InternalNonInvertible,
    pole_locus,
    power_sums,
    pushforward,
)

__all__ = [
    "AdmissibilityViolated",
    "AsymptoticFit",
    "CoderivativeMatrix",
    "ConstantMap",
    "DegenerateInput",
    "DuplicatePoint",
    "InternalNonInvertible",
    "NonIntegrable",
    "NotSimpleCritical",
    "NumericFailure",
    "QuadraticDifferential",
    "TooFewPoints",
    "asymptotic_constant",
    "cauchy_closed_form",
    "cauchy_like_det",
    "cauchy_like_matrix",
    "check_admissible",
    "coderivative_rank",
    "critical_value_locus",
    "expand_in_basis",
    "fiber_sum",
    "laurent_local_pushforward",
    "pole_locus",
    "power_sums",
    "pushforward",
    "qd_basis",
    "residue",
]
