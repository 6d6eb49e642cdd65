"""Derivative-free optimisers, annealing and exhaustive search."""

from .annealing import SaSchedule, simulated_annealing
from .bayes import (
    BoOptions,
    GpModel,
    bo_minimize,
    ei_closed_form,
    expected_improvement,
    gp_fit,
    gp_predict,
    periodic_kernel,
)
from .cobyla import CobylaOptions, cobyla_minimize
from .exhaustive import ExhaustiveResult, exhaustive_search
from .objective import NonFiniteObjective, ObjectiveHandle
from .powell import PowellOptions, powell_minimize

__all__ = [
    "BoOptions",
    "CobylaOptions",
    "ExhaustiveResult",
    "GpModel",
    "NonFiniteObjective",
    "ObjectiveHandle",
    "PowellOptions",
    "SaSchedule",
    "bo_minimize",
    "cobyla_minimize",
    "ei_closed_form",
    "exhaustive_search",
    "expected_improvement",
    "gp_fit",
    "gp_predict",
    "periodic_kernel",
    "powell_minimize",
    "simulated_annealing",
]
