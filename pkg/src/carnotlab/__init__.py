"""Desk-scale computational laboratory for Carnot groups.

The package provides exact graded-nilpotent Lie group arithmetic in
exponential coordinates (BCH products, dilations, horizontal projection),
homogeneous norms including a uniformly convex group norm with searched
parameters, Carnot-Caratheodory distance estimators, Christ-style cube
hierarchies on sampled balls, coarse-differentiation and Markov-convexity
functionals, and experiment drivers with a CSV/CLI surface.
"""

from .liealg import (
    GradedLieAlgebra,
    GroupElement,
    HorizontalVector,
    ValidationReport,
    bch_multiply,
    bracket,
    dilate,
    get_algebra,
    horizontal_project,
    inverse,
    load_algebra_json,
    validate_algebra,
)
from .norms import (
    ConvexNormParams,
    MetricChoice,
    convex_norm,
    midpoint_convexity_defect,
    nh,
    norm_infty,
    quasi_triangle_constant,
    search_lambda,
)

__all__ = [
    "GradedLieAlgebra",
    "GroupElement",
    "HorizontalVector",
    "ValidationReport",
    "bracket",
    "bch_multiply",
    "inverse",
    "dilate",
    "horizontal_project",
    "validate_algebra",
    "get_algebra",
    "load_algebra_json",
    "ConvexNormParams",
    "MetricChoice",
    "norm_infty",
    "convex_norm",
    "nh",
    "midpoint_convexity_defect",
    "search_lambda",
    "quasi_triangle_constant",
]
