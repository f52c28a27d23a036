"""Logarithmic ramification theory over Q, in exact truncated ℓ-adic arithmetic."""

from .artin import (
    LogDivisor,
    QuadSign,
    TowerExp,
    artin_image,
    frobenius_action,
    is_admissible,
    log_divisor_of,
    log_frobenius,
    reciprocity_check,
)
from .errors import (
    FrobeniusUndefined,
    InvalidField,
    LogFrobError,
    NotAUnit,
    NotCoprime,
    NotPrincipal,
    PrecisionLoss,
    PrecisionMismatch,
    RayConditionFailed,
    RayConditionUnverifiable,
    ZeroNorm,
)
from .fields import (
    LogConductor,
    PrimeClassification,
    classify_prime,
    filtration_level,
    global_conductor,
    local_conductor_exponent,
)
from .families import QuadraticField, TowerLayer, make_field
from .ladic import (
    LAdicInt,
    LAdicNum,
    Precision,
    from_rational,
    iwasawa_log,
    pow_ladic,
    principal_part,
    teichmuller,
)
from .logvals import (
    IndexTuple,
    QuadLocalElement,
    deg_ell,
    h_value,
    indices,
    log_valuation_q,
    log_valuation_quad,
    norm_quad,
)
from .rational import RationalNonzero
from .symbols import local_symbol, product_formula_check, sylow_project

__version__ = "0.1.0"
