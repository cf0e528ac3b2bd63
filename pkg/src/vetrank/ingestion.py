"""From raw graduate and contract records to per-year performance matrices.

Pipeline: load and link the flat files, score every (person, program) pair on
the eight employability criteria, aggregate per program-year by median with
support filtering, then select the years with enough surviving programs.

Day-count conventions (all durations in whole days):
  - Only contracts starting on or after graduation are considered.
  - Coverage (worked time, uncovered time) is counted over the calendar days
    strictly after graduation day up to and including the observation end, so
    a contract spanning that whole window leaves zero uncovered days.
  - Overlapping contract intervals are merged before counting worked days;
    days covered by both an in-field and an out-of-field contract count as
    in-field, and days under both temporary and indefinite contracts count as
    temporary.
  - Gaps between consecutive contracts are clamped at zero when a follow-up
    contract starts before the previous one ends.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from datetime import date
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .model import CriterionSpec, Direction, PerformanceMatrix, RankingResult

logger = logging.getLogger(__name__)

#: The eight employability criteria computed by this pipeline. Directions:
#: only the in-field share of worked time is a benefit; every elapsed time,
#: temporary share and uncovered time is a cost. Relative weights are the
#: expert-panel defaults and can be overridden per run.
DEFAULT_CRITERIA: tuple[CriterionSpec, ...] = (
    CriterionSpec("C1", "Days from graduation to first in-field contract", Direction.COST, 4.0),
    CriterionSpec("C2", "Mean gap between consecutive in-field contracts", Direction.COST, 2.5),
    CriterionSpec("C3", "Share of worked days in field", Direction.BENEFIT, 1.0),
    CriterionSpec("C4", "Share of in-field worked days under temporary contracts", Direction.COST, 1.0),
    CriterionSpec("C5", "Days from graduation to first contract", Direction.COST, 3.0),
    CriterionSpec("C6", "Mean gap between consecutive contracts", Direction.COST, 2.0),
    CriterionSpec("C7", "Share of worked days under temporary contracts", Direction.COST, 1.0),
    CriterionSpec("C8", "Days without any contract", Direction.COST, 1.0),
)

CRITERION_IDS = tuple(c.id for c in DEFAULT_CRITERIA)


class ParseError(ValueError):
    def __init__(self, path: str | Path, row: int, message: str):
        self.path = str(path)
        self.row = row
        super().__init__(f"{path}: row {row}: {message}")


class EmptyWindowError(ValueError):
    pass


class ContractType(Enum):
    TEMPORARY = "T"
    INDEFINITE = "I"


@dataclass(frozen=True)
class GraduateRecord:
    person_id: str
    program_id: str
    family_id: str
    graduation_date: date


@dataclass(frozen=True)
class ContractRecord:
    person_id: str
    start_date: date
    end_date: date
    contract_type: ContractType
    sector_code: str

    def __post_init__(self) -> None:
        if self.start_date > self.end_date:
            raise ValueError(f"contract for {self.person_id}: start {self.start_date} after end {self.end_date}")


class SectorFamilyMap:
    """Many-to-many map from economic sector codes to professional families."""

    def __init__(self, pairs: Iterable[tuple[str, str]]):
        mapping: dict[str, set[str]] = {}
        for code, family in pairs:
            mapping.setdefault(code, set()).add(family)
        self._map = {code: frozenset(families) for code, families in mapping.items()}
        self._warned: set[str] = set()

    def families(self, sector_code: str) -> frozenset[str]:
        found = self._map.get(sector_code)
        if found is None:
            if sector_code not in self._warned:
                self._warned.add(sector_code)
                logger.warning("sector code %r not in sector map; treating as no family", sector_code)
            return frozenset()
        return found

    def __len__(self) -> int:
        return len(self._map)


@dataclass(frozen=True)
class PersonCriteria:
    """Criterion scores of one person for one program; None marks undefined."""

    person_id: str
    program_id: str
    graduation_year: int
    c1: float | None
    c2: float | None
    c3: float | None
    c4: float | None
    c5: float | None
    c6: float | None
    c7: float | None
    c8: float | None

    def value(self, criterion_id: str) -> float | None:
        return getattr(self, criterion_id.lower())

    def as_dict(self) -> dict[str, float | None]:
        return {cid: self.value(cid) for cid in CRITERION_IDS}


@dataclass(frozen=True)
class LinkedDataset:
    """Graduate and contract records joined by person, ready for scoring."""

    graduates: tuple[GraduateRecord, ...]
    contracts_by_person: dict[str, tuple[ContractRecord, ...]]
    sector_map: SectorFamilyMap
    observation_end: date
    orphan_contracts: int

    def contracts_for(self, person_id: str) -> tuple[ContractRecord, ...]:
        return self.contracts_by_person.get(person_id, ())


def _parse_date(value: str, path: str | Path, row: int, column: str) -> date:
    try:
        return date.fromisoformat(value)
    except ValueError as exc:
        raise ParseError(path, row, f"bad {column} {value!r}: {exc}") from exc


def _read_rows(path: str | Path, expected_header: list[str]) -> list[tuple[int, list[str]]]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ParseError(path, 1, "empty file")
    if rows[0] != expected_header:
        raise ParseError(path, 1, f"header {rows[0]} != {expected_header}")
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(expected_header):
            raise ParseError(path, lineno, f"expected {len(expected_header)} fields, got {len(row)}")
        out.append((lineno, row))
    return out


def load_datasets(
    graduates_csv: str | Path,
    contracts_csv: str | Path,
    sector_map_csv: str | Path,
    observation_end: date | None = None,
) -> LinkedDataset:
    """Load and link the three flat files into one in-memory dataset.

    Identical contract rows are deduplicated; contracts for unknown persons
    are counted as orphans and skipped. Open-ended contracts (empty end date)
    are capped at the observation end, which defaults to the latest date seen
    anywhere in the data.
    """
    graduates: list[GraduateRecord] = []
    seen_grads: set[tuple] = set()
    for lineno, row in _read_rows(graduates_csv, ["person_id", "program_id", "family_id", "graduation_date"]):
        record = GraduateRecord(row[0], row[1], row[2], _parse_date(row[3], graduates_csv, lineno, "graduation_date"))
        key = (record.person_id, record.program_id, record.family_id, record.graduation_date)
        if key not in seen_grads:
            seen_grads.add(key)
            graduates.append(record)

    raw_contracts: list[tuple[str, date, date | None, ContractType, str]] = []
    max_seen = max((g.graduation_date for g in graduates), default=None)
    for lineno, row in _read_rows(contracts_csv, ["person_id", "start_date", "end_date", "contract_type", "sector_code"]):
        start = _parse_date(row[1], contracts_csv, lineno, "start_date")
        end = _parse_date(row[2], contracts_csv, lineno, "end_date") if row[2] else None
        try:
            ctype = ContractType(row[3])
        except ValueError:
            raise ParseError(contracts_csv, lineno, f"contract_type must be T or I, got {row[3]!r}") from None
        if end is not None and start > end:
            raise ParseError(contracts_csv, lineno, f"start {start} after end {end}")
        raw_contracts.append((row[0], start, end, ctype, row[4]))
        for candidate in (start, end):
            if candidate is not None and (max_seen is None or candidate > max_seen):
                max_seen = candidate

    if observation_end is None:
        if max_seen is None:
            raise ValueError("cannot infer observation end from empty data")
        observation_end = max_seen

    pairs = []
    for lineno, row in _read_rows(sector_map_csv, ["sector_code", "family_id"]):
        pairs.append((row[0], row[1]))
    sector_map = SectorFamilyMap(pairs)

    known_persons = {g.person_id for g in graduates}
    orphans = 0
    per_person: dict[str, set[ContractRecord]] = {}
    for person_id, start, end, ctype, sector in raw_contracts:
        if person_id not in known_persons:
            orphans += 1
            continue
        if start > observation_end:
            continue  # outside the observation window entirely
        capped_end = observation_end if end is None or end > observation_end else end
        record = ContractRecord(person_id, start, capped_end, ctype, sector)
        per_person.setdefault(person_id, set()).add(record)
    if orphans:
        logger.warning("skipped %d contract rows for persons absent from the graduates file", orphans)

    contracts_by_person = {
        person: tuple(sorted(contracts, key=lambda c: (c.start_date, c.end_date, c.sector_code, c.contract_type.value)))
        for person, contracts in per_person.items()
    }
    graduates.sort(key=lambda g: (g.person_id, g.program_id, g.graduation_date))
    return LinkedDataset(tuple(graduates), contracts_by_person, sector_map, observation_end, orphans)


def merge_intervals(intervals: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Union of inclusive integer intervals, as a sorted list of disjoint spans."""
    spans = sorted(intervals)
    merged: list[tuple[int, int]] = []
    for lo, hi in spans:
        if merged and lo <= merged[-1][1] + 1:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


def _covered_days(intervals: list[tuple[int, int]]) -> int:
    return sum(hi - lo + 1 for lo, hi in merge_intervals(intervals))


def _mean_gap(contracts: Sequence[ContractRecord]) -> float | None:
    if len(contracts) < 2:
        return None
    gaps = []
    for prev, nxt in zip(contracts, contracts[1:]):
        gaps.append(max(0, nxt.start_date.toordinal() - prev.end_date.toordinal()))
    return sum(gaps) / len(gaps)


def person_criteria(
    graduate: GraduateRecord,
    contracts: Sequence[ContractRecord],
    sector_map: SectorFamilyMap,
    observation_end: date,
) -> PersonCriteria:
    """Score one (person, program) pair on all eight criteria.

    A contract is in-field when its sector maps to the program's professional
    family. Undefined criteria (no qualifying contracts) come back as None.
    """
    if graduate.graduation_date > observation_end:
        raise ValueError(
            f"graduation {graduate.graduation_date} of {graduate.person_id} is after observation end {observation_end}"
        )
    grad_ord = graduate.graduation_date.toordinal()
    obs_ord = observation_end.toordinal()
    window_days = obs_ord - grad_ord

    considered = sorted(
        (c for c in contracts if c.start_date >= graduate.graduation_date),
        key=lambda c: (c.start_date, c.end_date, c.sector_code, c.contract_type.value),
    )
    in_field = [c for c in considered if graduate.family_id in sector_map.families(c.sector_code)]
    temporary = [c for c in considered if c.contract_type is ContractType.TEMPORARY]
    in_field_temporary = [c for c in in_field if c.contract_type is ContractType.TEMPORARY]

    def clipped(cs: Sequence[ContractRecord]) -> list[tuple[int, int]]:
        spans = []
        for c in cs:
            lo = max(c.start_date.toordinal(), grad_ord + 1)
            hi = min(c.end_date.toordinal(), obs_ord)
            if lo <= hi:
                spans.append((lo, hi))
        return spans

    total_days = _covered_days(clipped(considered))
    in_field_days = _covered_days(clipped(in_field))
    temporary_days = _covered_days(clipped(temporary))
    in_field_temp_days = _covered_days(clipped(in_field_temporary))

    first_in_field = float(in_field[0].start_date.toordinal() - grad_ord) if in_field else None
    first_any = float(considered[0].start_date.toordinal() - grad_ord) if considered else None

    return PersonCriteria(
        person_id=graduate.person_id,
        program_id=graduate.program_id,
        graduation_year=graduate.graduation_date.year,
        c1=first_in_field,
        c2=_mean_gap(in_field),
        c3=in_field_days / total_days if total_days else None,
        c4=in_field_temp_days / in_field_days if in_field_days else None,
        c5=first_any,
        c6=_mean_gap(considered),
        c7=temporary_days / total_days if total_days else None,
        c8=float(window_days - total_days),
    )


def compute_person_criteria(dataset: LinkedDataset) -> list[PersonCriteria]:
    """Score every (person, program) pair; multiple degrees yield one entry each."""
    records = []
    for graduate in dataset.graduates:
        if graduate.graduation_date > dataset.observation_end:
            logger.warning(
                "skipping %s/%s: graduation %s after observation end",
                graduate.person_id, graduate.program_id, graduate.graduation_date,
            )
            continue
        records.append(
            person_criteria(graduate, dataset.contracts_for(graduate.person_id), dataset.sector_map, dataset.observation_end)
        )
    return records


@dataclass(frozen=True)
class ProgramDrop:
    """A program excluded from one year, with the weakest criterion that caused it."""

    program_id: str
    criterion_id: str
    support: int


@dataclass(frozen=True)
class AggregateResult:
    year: int
    matrix: PerformanceMatrix | None
    dropped: tuple[ProgramDrop, ...]
    program_count: int  # surviving programs


def aggregate(
    records: Iterable[PersonCriteria],
    year: int,
    criteria: Sequence[CriterionSpec] = DEFAULT_CRITERIA,
    min_support: int = 6,
) -> AggregateResult:
    """Median-aggregate one graduation year into a performance matrix.

    Each cell is the median of the criterion over persons with that criterion
    defined; a program is kept only when every criterion has at least
    ``min_support`` defined values. With fewer than two surviving programs no
    matrix is produced.
    """
    by_program: dict[str, list[PersonCriteria]] = {}
    for record in records:
        if record.graduation_year == year:
            by_program.setdefault(record.program_id, []).append(record)

    surviving: list[str] = []
    rows: list[list[float]] = []
    supports: list[list[int]] = []
    dropped: list[ProgramDrop] = []
    for program_id in sorted(by_program):
        persons = by_program[program_id]
        cells: list[float] = []
        counts: list[int] = []
        weakest: tuple[int, str] | None = None
        for criterion in criteria:
            values = [v for v in (p.value(criterion.id) for p in persons) if v is not None]
            counts.append(len(values))
            if len(values) < min_support and (weakest is None or len(values) < weakest[0]):
                weakest = (len(values), criterion.id)
            cells.append(float(np.median(values)) if values else float("nan"))
        if weakest is not None:
            dropped.append(ProgramDrop(program_id, weakest[1], weakest[0]))
            continue
        surviving.append(program_id)
        rows.append(cells)
        supports.append(counts)

    matrix = None
    if len(surviving) >= 2:
        matrix = PerformanceMatrix(tuple(surviving), tuple(criteria), np.array(rows), np.array(supports))
    return AggregateResult(year, matrix, tuple(dropped), len(surviving))


def build_yearly_results(
    records: Sequence[PersonCriteria],
    criteria: Sequence[CriterionSpec] = DEFAULT_CRITERIA,
    min_support: int = 6,
) -> dict[int, AggregateResult]:
    """Aggregate every graduation year present in the records."""
    years = sorted({r.graduation_year for r in records})
    return {year: aggregate(records, year, criteria, min_support) for year in years}


@dataclass(frozen=True)
class WindowSelection:
    """Years retained for analysis plus per-year surviving program counts."""

    matrices: dict[int, PerformanceMatrix]
    program_counts: dict[int, int]


def select_window(
    yearly: Mapping[int, PerformanceMatrix | None], min_programs: int = 30
) -> WindowSelection:
    """Keep the years whose surviving-program count reaches the threshold."""
    counts = {year: (0 if matrix is None else len(matrix.alternatives)) for year, matrix in yearly.items()}
    retained = {
        year: matrix for year, matrix in yearly.items() if matrix is not None and counts[year] >= min_programs
    }
    if not retained:
        raise EmptyWindowError(f"no year reaches {min_programs} programs (counts: {counts})")
    return WindowSelection(dict(sorted(retained.items())), dict(sorted(counts.items())))


@dataclass(frozen=True)
class ProgramPercentileSummary:
    program_id: str
    mean_percentile: float
    years_present: tuple[int, ...]


@dataclass(frozen=True)
class FamilyYearSummary:
    family_id: str
    year: int
    mean: float
    min: float
    max: float
    count: int


@dataclass(frozen=True)
class PercentilePanel:
    """Per-program mean percentiles and per-family yearly percentile spreads."""

    program_summaries: tuple[ProgramPercentileSummary, ...]  # sorted best first
    percentiles: dict[str, dict[int, float]]  # program -> year -> percentile
    family_summaries: tuple[FamilyYearSummary, ...]


def percentile_panel(
    yearly_rankings: Mapping[int, RankingResult],
    program_families: Mapping[str, str] | None = None,
) -> PercentilePanel:
    """Summarize rank percentiles per program over years, and per family-year.

    Programs are ordered by descending mean percentile over the years they
    appear in. Family summaries need the program-to-family map and cover the
    programs present in it.
    """
    if not yearly_rankings:
        raise ValueError("need at least one yearly ranking")
    percentiles: dict[str, dict[int, float]] = {}
    for year in sorted(yearly_rankings):
        ranking = yearly_rankings[year]
        for alt, pct in zip(ranking.alternatives, ranking.percentiles):
            percentiles.setdefault(alt, {})[year] = pct

    summaries = [
        ProgramPercentileSummary(
            program_id=program,
            mean_percentile=sum(by_year.values()) / len(by_year),
            years_present=tuple(sorted(by_year)),
        )
        for program, by_year in percentiles.items()
    ]
    summaries.sort(key=lambda s: (-s.mean_percentile, s.program_id))

    family_rows: list[FamilyYearSummary] = []
    if program_families:
        members: dict[tuple[str, int], list[float]] = {}
        for program, by_year in percentiles.items():
            family = program_families.get(program)
            if family is None:
                continue
            for year, pct in by_year.items():
                members.setdefault((family, year), []).append(pct)
        for (family, year), pcts in sorted(members.items()):
            family_rows.append(FamilyYearSummary(family, year, sum(pcts) / len(pcts), min(pcts), max(pcts), len(pcts)))

    return PercentilePanel(tuple(summaries), percentiles, tuple(family_rows))
