"""Per-criterion most/least-weighted scenario rankings and their divergence.

For each criterion, the matrix is ranked twice: once with that criterion at
twice the relative weight of the others, once at half. The Kendall-tau
distance between the two rankings measures how much the preference order
depends on that criterion's weight — computable before any expert commits to
a weighting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .model import PerformanceMatrix, RankingResult
from .rankcompare import kendall_tau_distance
from .topsis import rank
from .weights import ScenarioKind, scenario_weights


class TooFewCriteriaError(ValueError):
    pass


class CriteriaMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioResult:
    """Both scenario rankings and their rank distance for one criterion."""

    criterion_id: str
    ranking_most: RankingResult
    ranking_least: RankingResult
    distance: float


@dataclass(frozen=True)
class FiveNumberSummary:
    min: float
    q1: float
    median: float
    q3: float
    max: float


@dataclass(frozen=True)
class ScenarioPanel:
    """Scenario distances per criterion over a set of yearly matrices."""

    criterion_ids: tuple[str, ...]
    distances: dict[str, tuple[tuple[int, float], ...]]  # criterion -> ((year, distance), ...)
    summaries: dict[str, FiveNumberSummary]


def scenario_analysis(matrix: PerformanceMatrix, ratio: float = 2.0) -> list[ScenarioResult]:
    """Evaluate both weight scenarios for every criterion of one matrix.

    Needs no externally supplied weights: the scenario vectors are built from
    the criterion count alone.
    """
    n = matrix.shape[1]
    if n < 2:
        raise TooFewCriteriaError("scenario analysis needs at least 2 criteria")
    results = []
    for j, criterion in enumerate(matrix.criteria, start=1):
        most = rank(matrix, scenario_weights(n, j, ScenarioKind.MOST_WEIGHTED, ratio))
        least = rank(matrix, scenario_weights(n, j, ScenarioKind.LEAST_WEIGHTED, ratio))
        distance = kendall_tau_distance(most.order, least.order)
        results.append(ScenarioResult(criterion.id, most, least, distance))
    return results


def _summary(values: list[float]) -> FiveNumberSummary:
    arr = np.asarray(values, dtype=float)
    q1, median, q3 = np.percentile(arr, [25, 50, 75])
    return FiveNumberSummary(float(arr.min()), float(q1), float(median), float(q3), float(arr.max()))


def scenario_panel(matrices: Mapping[int, PerformanceMatrix], ratio: float = 2.0) -> ScenarioPanel:
    """Scenario distances for every criterion across yearly matrices.

    All matrices must share the same criteria set (ids and directions).
    """
    if not matrices:
        raise ValueError("no matrices given")
    years = sorted(matrices)
    reference = matrices[years[0]]
    ref_key = [(c.id, c.direction) for c in reference.criteria]
    for year in years[1:]:
        key = [(c.id, c.direction) for c in matrices[year].criteria]
        if key != ref_key:
            raise CriteriaMismatchError(f"criteria of year {year} do not match year {years[0]}")
    per_criterion: dict[str, list[tuple[int, float]]] = {c.id: [] for c in reference.criteria}
    for year in years:
        for result in scenario_analysis(matrices[year], ratio):
            per_criterion[result.criterion_id].append((year, result.distance))
    summaries = {cid: _summary([d for _, d in points]) for cid, points in per_criterion.items()}
    return ScenarioPanel(
        criterion_ids=reference.criterion_ids,
        distances={cid: tuple(points) for cid, points in per_criterion.items()},
        summaries=summaries,
    )
