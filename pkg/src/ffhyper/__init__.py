"""Finite field A-hypergeometric functions and torus exponential sums in exact arithmetic."""

from .character import (
    AddCharTwist,
    MultChar,
    additive_char_eval,
    gauss_sum,
    mult_char_eval,
    twist_relation_check,
)
from .field import FieldDesc, FieldElement, build_field, discrete_log, element_op, field_of_order, trace
from .hypergeometric import (
    CharSolutionSet,
    F_A,
    HypergeometricInstance,
    S_A,
    dwork_loeser_instance,
    fourier_coefficient,
    mccarthy_hypergeometric,
    normalization_C,
    solve_L_beta,
    specialization_identity_check,
)
from .value import CycValue, root_of_unity, to_complex, value_op

__all__ = [
    "AddCharTwist",
    "CharSolutionSet",
    "CycValue",
    "F_A",
    "FieldDesc",
    "FieldElement",
    "HypergeometricInstance",
    "MultChar",
    "S_A",
    "additive_char_eval",
    "build_field",
    "discrete_log",
    "dwork_loeser_instance",
    "element_op",
    "field_of_order",
    "fourier_coefficient",
    "gauss_sum",
    "mccarthy_hypergeometric",
    "mult_char_eval",
    "normalization_C",
    "root_of_unity",
    "solve_L_beta",
    "specialization_identity_check",
    "to_complex",
    "trace",
    "twist_relation_check",
    "value_op",
]
