"""Ranking kernel: column normalization, ideal/antiideal poles, closeness scores.

The score of an alternative is d_worst / (d_worst + d_best), the relative
closeness to the per-criterion best values and remoteness from the worst ones,
measured with Euclidean distance on the weighted normalized matrix. Scores lie
in [0, 1]; 1 means the alternative coincides with the ideal point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import (
    PerformanceMatrix,
    RankingResult,
    WeightVector,
    percentile_of_rank,
    require_valid,
)


class DegenerateGeometryError(RuntimeError):
    """An alternative is at zero distance from both poles (excluded by validation)."""


@dataclass(frozen=True)
class TopsisIntermediates:
    """Intermediate quantities of one scoring run, kept for diagnostics."""

    normalized: np.ndarray
    ideal: np.ndarray
    antiideal: np.ndarray
    dist_ideal: np.ndarray
    dist_antiideal: np.ndarray


def _weight_array(weights: WeightVector | Sequence[float], n: int) -> np.ndarray:
    arr = weights.as_array() if isinstance(weights, WeightVector) else np.asarray(weights, dtype=float)
    if arr.shape != (n,):
        raise ValueError(f"expected {n} weights, got shape {arr.shape}")
    if not np.isfinite(arr).all() or (arr <= 0).any():
        raise ValueError("weights must be finite and > 0")
    return arr


def normalize_and_weight(matrix: PerformanceMatrix, weights: WeightVector | Sequence[float]) -> np.ndarray:
    """Scale each column to unit Euclidean norm, then multiply by its weight.

    Raw weight sequences are accepted as well as WeightVector: scores are
    invariant under positive rescaling of the weights, so the sum-to-1
    constraint is not enforced here.
    """
    require_valid(matrix)
    w = _weight_array(weights, matrix.shape[1])
    norms = np.sqrt((matrix.values**2).sum(axis=0))
    return w * matrix.values / norms


def ideal_solutions(normalized: np.ndarray, benefit: Sequence[bool]) -> tuple[np.ndarray, np.ndarray]:
    """Per-column best (ideal) and worst (antiideal) values.

    Benefit columns take max for the ideal and min for the antiideal; cost
    columns the reverse.
    """
    normalized = np.asarray(normalized, dtype=float)
    if normalized.shape[0] < 2:
        raise ValueError("need at least 2 alternatives")
    mask = np.asarray(benefit, dtype=bool)
    if mask.shape != (normalized.shape[1],):
        raise ValueError("benefit mask length must equal the criterion count")
    col_max = normalized.max(axis=0)
    col_min = normalized.min(axis=0)
    ideal = np.where(mask, col_max, col_min)
    antiideal = np.where(mask, col_min, col_max)
    return ideal, antiideal


def closeness_scores(
    matrix: PerformanceMatrix, weights: WeightVector | Sequence[float]
) -> tuple[np.ndarray, TopsisIntermediates]:
    """Score every alternative by relative closeness to the ideal point."""
    normalized = normalize_and_weight(matrix, weights)
    ideal, antiideal = ideal_solutions(normalized, matrix.benefit_mask())
    dist_ideal = np.sqrt(((normalized - ideal) ** 2).sum(axis=1))
    dist_antiideal = np.sqrt(((normalized - antiideal) ** 2).sum(axis=1))
    denom = dist_ideal + dist_antiideal
    if (denom == 0).any():
        # validation rejects constant columns, so both poles can only collapse
        # onto an alternative if that guarantee was bypassed
        bad = int(np.nonzero(denom == 0)[0][0])
        raise DegenerateGeometryError(f"alternative {matrix.alternatives[bad]!r} coincides with both poles")
    scores = dist_antiideal / denom
    return scores, TopsisIntermediates(normalized, ideal, antiideal, dist_ideal, dist_antiideal)


def rank(matrix: PerformanceMatrix, weights: WeightVector | Sequence[float]) -> RankingResult:
    """Rank alternatives by descending score; ties break on ascending id.

    The deterministic tie-break keeps every ranking a strict order, which the
    rank-distance comparisons downstream rely on.
    """
    scores, _ = closeness_scores(matrix, weights)
    m = len(matrix.alternatives)
    order = sorted(range(m), key=lambda i: (-scores[i], matrix.alternatives[i]))
    ranks = [0] * m
    for position, i in enumerate(order, start=1):
        ranks[i] = position
    percentiles = tuple(percentile_of_rank(p, m) for p in ranks)
    return RankingResult(
        alternatives=matrix.alternatives,
        scores=tuple(float(s) for s in scores),
        ranks=tuple(ranks),
        percentiles=percentiles,
    )
