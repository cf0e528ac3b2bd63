"""Shared domain types: criteria, performance matrices, weights and rankings.

All types are immutable after construction and safe to share across threads.
File formats (matrix CSV, support sidecar, criteria JSON) live here too since
every other module exchanges data through them.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

WEIGHT_SUM_TOL = 1e-9


class Direction(str, Enum):
    """Whether larger (benefit) or smaller (cost) criterion values are preferable."""

    BENEFIT = "benefit"
    COST = "cost"


@dataclass(frozen=True)
class CriterionSpec:
    """Identity, direction and relative (expert-scale) weight of one criterion."""

    id: str
    label: str
    direction: Direction
    relative_weight: float

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("criterion id must be non-empty")
        if not math.isfinite(self.relative_weight) or self.relative_weight <= 0:
            raise ValueError(f"criterion {self.id}: relative_weight must be > 0, got {self.relative_weight}")


@dataclass(frozen=True)
class WeightVector:
    """Normalized absolute weights: strictly positive, summing to 1."""

    absolute: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.absolute) == 0:
            raise ValueError("weight vector must be non-empty")
        if any(not math.isfinite(w) or w <= 0 for w in self.absolute):
            raise ValueError("all absolute weights must be finite and > 0")
        total = math.fsum(self.absolute)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"absolute weights must sum to 1 (got {total!r})")

    def __len__(self) -> int:
        return len(self.absolute)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.absolute, dtype=float)


class MatrixValidationError(ValueError):
    """Raised when an operation requires a matrix that fails validation."""

    def __init__(self, issues: Sequence["ValidationIssue"]):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


@dataclass(frozen=True)
class ValidationIssue:
    """One matrix invariant violation. Row/col positions are 1-based."""

    kind: str
    row: int | None
    col: int | None
    message: str

    def __str__(self) -> str:
        where = []
        if self.row is not None:
            where.append(f"row {self.row}")
        if self.col is not None:
            where.append(f"col {self.col}")
        loc = f" ({', '.join(where)})" if where else ""
        return f"{self.kind}{loc}: {self.message}"


@dataclass(frozen=True)
class PerformanceMatrix:
    """Criterion scores of m alternatives on n criteria.

    ``support_counts``, when present, holds the number of underlying data
    points behind each cell (e.g. persons whose median forms the cell).
    """

    alternatives: tuple[str, ...]
    criteria: tuple[CriterionSpec, ...]
    values: np.ndarray
    support_counts: np.ndarray | None = None

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        m, n = len(self.alternatives), len(self.criteria)
        if m < 2:
            raise ValueError(f"need at least 2 alternatives, got {m}")
        if n < 1:
            raise ValueError("need at least 1 criterion")
        if values.shape != (m, n):
            raise ValueError(f"values shape {values.shape} does not match {m} alternatives x {n} criteria")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "criteria", tuple(self.criteria))
        if self.support_counts is not None:
            support = np.array(self.support_counts, dtype=int)
            if support.shape != (m, n):
                raise ValueError(f"support_counts shape {support.shape} does not match values shape {(m, n)}")
            if (support < 0).any():
                raise ValueError("support_counts must be non-negative")
            support.setflags(write=False)
            object.__setattr__(self, "support_counts", support)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def criterion_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.criteria)

    def benefit_mask(self) -> np.ndarray:
        return np.array([c.direction is Direction.BENEFIT for c in self.criteria])


@dataclass(frozen=True)
class RankingResult:
    """Scores, 1-based ranks (1 = best) and rank percentiles for one run.

    The percentile of rank p among m alternatives is (m - p) / (m - 1), so the
    best alternative gets 1.0 and the worst 0.0.
    """

    alternatives: tuple[str, ...]
    scores: tuple[float, ...]
    ranks: tuple[int, ...]
    percentiles: tuple[float, ...]

    def __post_init__(self) -> None:
        m = len(self.alternatives)
        if not (len(self.scores) == len(self.ranks) == len(self.percentiles) == m):
            raise ValueError("alternatives, scores, ranks and percentiles must have equal length")
        if sorted(self.ranks) != list(range(1, m + 1)):
            raise ValueError("ranks must be a permutation of 1..m")
        for p, pct in zip(self.ranks, self.percentiles):
            if pct != percentile_of_rank(p, m):
                raise ValueError(f"percentile for rank {p} must be {percentile_of_rank(p, m)}, got {pct}")

    @property
    def order(self) -> tuple[str, ...]:
        """Alternative ids sorted best (rank 1) first."""
        by_rank = sorted(zip(self.ranks, self.alternatives))
        return tuple(alt for _, alt in by_rank)


def percentile_of_rank(rank: int, m: int) -> float:
    """Normalized rank position on [0, 1]: rank 1 of m maps to 1.0, rank m to 0.0."""
    if m < 2:
        raise ValueError("percentiles need at least 2 alternatives")
    return (m - rank) / (m - 1)


def validate_matrix(matrix: PerformanceMatrix) -> list[ValidationIssue]:
    """Check value-level invariants; an empty result means the matrix is usable.

    Reported kinds: NonFiniteValue, DuplicateAlternativeId, ZeroColumn (zero
    Euclidean norm) and DegenerateColumn (all entries equal, so the criterion
    cannot discriminate). Positions are 1-based.
    """
    issues: list[ValidationIssue] = []
    seen: dict[str, int] = {}
    for i, alt in enumerate(matrix.alternatives):
        if alt in seen:
            issues.append(
                ValidationIssue(
                    "DuplicateAlternativeId", i + 1, None,
                    f"alternative id {alt!r} already used at row {seen[alt] + 1}",
                )
            )
        else:
            seen[alt] = i
    values = matrix.values
    finite = np.isfinite(values)
    for i, j in zip(*np.nonzero(~finite)):
        issues.append(ValidationIssue("NonFiniteValue", int(i) + 1, int(j) + 1, f"value {values[i, j]} is not finite"))
    for j in range(values.shape[1]):
        col = values[:, j]
        if not finite[:, j].all():
            continue  # already reported cell-wise
        if not col.any():
            issues.append(ValidationIssue("ZeroColumn", None, j + 1, f"criterion {matrix.criteria[j].id} has zero norm"))
        elif (col == col[0]).all():
            issues.append(
                ValidationIssue(
                    "DegenerateColumn", None, j + 1,
                    f"criterion {matrix.criteria[j].id} is constant ({col[0]}) and cannot discriminate",
                )
            )
    return issues


def require_valid(matrix: PerformanceMatrix) -> PerformanceMatrix:
    """Return the matrix unchanged, raising MatrixValidationError on any issue."""
    issues = validate_matrix(matrix)
    if issues:
        raise MatrixValidationError(issues)
    return matrix


# ---------------------------------------------------------------------------
# File formats


def read_criteria_json(path: str | Path) -> tuple[CriterionSpec, ...]:
    """Load a criteria set from a JSON array of {id, label, direction, relative_weight}."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list) or not raw:
        raise ValueError(f"{path}: expected a non-empty JSON array of criteria")
    criteria = []
    for k, entry in enumerate(raw):
        try:
            criteria.append(
                CriterionSpec(
                    id=str(entry["id"]),
                    label=str(entry.get("label", entry["id"])),
                    direction=Direction(entry["direction"]),
                    relative_weight=float(entry["relative_weight"]),
                )
            )
        except (KeyError, ValueError) as exc:
            raise ValueError(f"{path}: bad criterion at index {k}: {exc}") from exc
    ids = [c.id for c in criteria]
    if len(set(ids)) != len(ids):
        raise ValueError(f"{path}: duplicate criterion ids")
    return tuple(criteria)


def write_criteria_json(criteria: Iterable[CriterionSpec], path: str | Path) -> None:
    payload = [
        {"id": c.id, "label": c.label, "direction": c.direction.value, "relative_weight": c.relative_weight}
        for c in criteria
    ]
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def support_sidecar_path(matrix_path: str | Path) -> Path:
    """`foo.csv` -> `foo.support.csv` (same directory)."""
    path = Path(matrix_path)
    return path.with_suffix(".support.csv")


def read_matrix_csv(path: str | Path, criteria: Sequence[CriterionSpec]) -> PerformanceMatrix:
    """Read a performance matrix CSV with header `alternative,<id>,...`.

    Column ids must match the criteria set exactly and in order. A sidecar
    `<name>.support.csv` of identical shape is picked up when present.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    header = rows[0]
    expected = ["alternative"] + [c.id for c in criteria]
    if header != expected:
        raise ValueError(f"{path}: header {header} does not match criteria {expected}")
    alternatives: list[str] = []
    values: list[list[float]] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(expected):
            raise ValueError(f"{path}: row {lineno} has {len(row)} fields, expected {len(expected)}")
        alternatives.append(row[0])
        try:
            values.append([float(v) for v in row[1:]])
        except ValueError as exc:
            raise ValueError(f"{path}: row {lineno}: {exc}") from exc
    support = None
    sidecar = support_sidecar_path(path)
    if sidecar.exists():
        with open(sidecar, newline="", encoding="utf-8") as fh:
            srows = list(csv.reader(fh))
        if srows[0] != expected:
            raise ValueError(f"{sidecar}: header does not match {path}")
        if [r[0] for r in srows[1:]] != alternatives:
            raise ValueError(f"{sidecar}: alternative ids do not match {path}")
        support = [[int(v) for v in r[1:]] for r in srows[1:]]
    return PerformanceMatrix(tuple(alternatives), tuple(criteria), np.array(values), support)


def write_matrix_csv(matrix: PerformanceMatrix, path: str | Path) -> None:
    """Write the matrix (and its support sidecar when present) as CSV."""
    path = Path(path)
    header = ["alternative"] + list(matrix.criterion_ids)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i, alt in enumerate(matrix.alternatives):
            writer.writerow([alt] + [repr(float(v)) for v in matrix.values[i]])
    if matrix.support_counts is not None:
        with open(support_sidecar_path(path), "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for i, alt in enumerate(matrix.alternatives):
                writer.writerow([alt] + [int(v) for v in matrix.support_counts[i]])
