"""Data-driven multi-criteria ranking of training programs.

Ranks alternatives with the ideal-point closeness method on median-aggregated
labor outcomes, and quantifies how much each criterion's weight matters: by
comparing most/least-weighted scenario rankings through Kendall-tau distance,
and by variance-based main effects of each criterion on the scores.
"""

from .model import (
    CriterionSpec,
    Direction,
    MatrixValidationError,
    PerformanceMatrix,
    RankingResult,
    ValidationIssue,
    WeightVector,
    validate_matrix,
)
from .rankcompare import kendall_tau_distance
from .scenario import scenario_analysis, scenario_panel
from .topsis import closeness_scores, rank
from .weights import ScenarioKind, normalize, scenario_weights

__version__ = "0.1.0"

__all__ = [
    "CriterionSpec",
    "Direction",
    "MatrixValidationError",
    "PerformanceMatrix",
    "RankingResult",
    "ScenarioKind",
    "ValidationIssue",
    "WeightVector",
    "closeness_scores",
    "kendall_tau_distance",
    "normalize",
    "rank",
    "scenario_analysis",
    "scenario_panel",
    "scenario_weights",
    "validate_matrix",
]
