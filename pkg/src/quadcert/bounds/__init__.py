"""Closed-form coefficients and error bounds for the three-point rule."""

from .classical import (
    classic_convex,
    classic_midpoint,
    classic_midpoint_holder,
    classic_simpson_holder,
    classic_trapezoid_holder,
    improvement_coefficients,
)
from .moments import classify_case, holder_moments, kernel_moments
from .named import Rule, named_rule_bound
from .rule import rule_error, rule_value
from .select import best_bound
from .general import (
    bound_for,
    bound_holder_concave,
    bound_holder_convex,
    bound_power_mean,
    power_mean_q1,
)
from .types import (
    Bound,
    Case,
    CaseInfo,
    ConvexityClass,
    DerivativeData,
    HolderMoments,
    Interval,
    Method,
    Mode,
    MomentSet,
    RuleParams,
)

__all__ = [
    "Bound",
    "Case",
    "CaseInfo",
    "ConvexityClass",
    "DerivativeData",
    "HolderMoments",
    "Interval",
    "Method",
    "Mode",
    "MomentSet",
    "Rule",
    "RuleParams",
    "best_bound",
    "bound_for",
    "bound_holder_concave",
    "bound_holder_convex",
    "bound_power_mean",
    "classic_convex",
    "classic_midpoint",
    "classic_midpoint_holder",
    "classic_simpson_holder",
    "classic_trapezoid_holder",
    "classify_case",
    "holder_moments",
    "improvement_coefficients",
    "kernel_moments",
    "named_rule_bound",
    "power_mean_q1",
    "rule_error",
    "rule_value",
]
