"""Set-theoretic complete intersection certificates for monomial space curves."""

__version__ = "0.1.0"

from .numsg import NumericalSemigroup, apery_set, contains, factorize, gap_data, make_semigroup
from .poly import SparsePoly, TruncSeries, substitute_param
from .herzog import (
    defining_equations,
    gs1_forward,
    gs1_is_image,
    gs2_check,
    gs2_forward,
    gs2_is_image,
    herzog_data,
    lemma3_pair,
)
from .stci import bresinsky_reduce, moh_check, syzygy_check
from .deform import (
    Parametrization,
    certify_stci,
    lift_relations,
    make_parametrization,
    one_form_valuation,
    parametrization_from_dict,
    value_semigroup,
)
from .families import cor44_evaluate, family_instance, lemma43_check, scan

__all__ = [
    "NumericalSemigroup", "apery_set", "contains", "factorize", "gap_data", "make_semigroup",
    "SparsePoly", "TruncSeries", "substitute_param",
    "defining_equations", "gs1_forward", "gs1_is_image", "gs2_check", "gs2_forward", "gs2_is_image",
    "herzog_data", "lemma3_pair",
    "bresinsky_reduce", "moh_check", "syzygy_check",
    "Parametrization", "certify_stci", "lift_relations", "make_parametrization", "one_form_valuation",
    "parametrization_from_dict", "value_semigroup",
    "cor44_evaluate", "family_instance", "lemma43_check", "scan",
]
