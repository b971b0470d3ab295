"""Cohomology and Ext groups of tautological bundles on punctual Quot schemes of curves.

All computations are exact and happen on graded dimensions (Poincaré
polynomials); see :mod:`quottaut.gradedspace` for the value type.
"""

from .curve import BundleClass, CohPolicy, CurveModel, canonical, line_bundle, split_bundle, structure_sheaf
from .errors import (
    AmbiguousCohomology,
    InconsistentOverride,
    OracleBoundsError,
    OutOfRange,
    PreconditionViolated,
    QuotTautError,
    RankAssumptionViolated,
)
from .formulas import PredictionReport, QuotContext, Status, Verdict, VerdictKind
from .gradedspace import GradedDim

__version__ = "0.1.0"

__all__ = [
    "AmbiguousCohomology",
    "BundleClass",
    "CohPolicy",
    "CurveModel",
    "GradedDim",
    "InconsistentOverride",
    "OracleBoundsError",
    "OutOfRange",
    "PredictionReport",
    "PreconditionViolated",
    "QuotContext",
    "QuotTautError",
    "RankAssumptionViolated",
    "Status",
    "Verdict",
    "VerdictKind",
    "canonical",
    "line_bundle",
    "split_bundle",
    "structure_sheaf",
]
