"""Exact jets of schemes and foliations, tangency tests, blow-ups and singularity classification."""

__version__ = "0.1.0"

from .algebra import GREVLEX, LEX, Polynomial, VarContext, compose, multivariate_gcd
from .blowup import Chart, blowup_point_charts, dicritical_probe, transform_form
from .classify import (
    NormalFormSpec,
    classify_reduced_2d,
    jet_comparison_probe,
    normal_form_generate,
    presimple_check,
    resonance_check,
)
from .errors import JetfolError, ParseError, ResourceLimitError, UnsupportedError, UserInputError
from .foliation import OneForm, integrability_check, pullback_form, saturate_form, singular_ideal
from .groebner import Ideal, groebner, ideal_equal, ideal_member, radical_member, step_budget
from .jets import jet_ideal_foliation, jet_ideal_scheme, nc_jet_oracle
from .parsing import parse_form, parse_ideal, parse_point, parse_polynomial
from .resolve import resolve_2d
from .tangency import full_tangency_up_to, strong_tangency_up_to, weak_tangency

__all__ = [
    "GREVLEX", "LEX", "Polynomial", "VarContext", "compose", "multivariate_gcd",
    "Chart", "blowup_point_charts", "dicritical_probe", "transform_form",
    "NormalFormSpec", "classify_reduced_2d", "jet_comparison_probe", "normal_form_generate",
    "presimple_check", "resonance_check",
    "JetfolError", "ParseError", "ResourceLimitError", "UnsupportedError", "UserInputError",
    "OneForm", "integrability_check", "pullback_form", "saturate_form", "singular_ideal",
    "Ideal", "groebner", "ideal_equal", "ideal_member", "radical_member", "step_budget",
    "jet_ideal_foliation", "jet_ideal_scheme", "nc_jet_oracle",
    "parse_form", "parse_ideal", "parse_point", "parse_polynomial",
    "resolve_2d",
    "full_tangency_up_to", "strong_tangency_up_to", "weak_tangency",
]
