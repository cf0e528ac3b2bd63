"""Stateless JSON facade over the ranking and sensitivity library.

The dataset snapshot is loaded once at startup and never mutated; scenario
distances are weight-independent, so they are cached eagerly. Everything else
is computed per request, which stays interactive for matrices of a few
hundred alternatives.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import gsa as gsa_mod
from .ingestion import percentile_panel
from .model import CriterionSpec, PerformanceMatrix, RankingResult, read_criteria_json, read_matrix_csv
from .rankcompare import kendall_tau_distance
from .scenario import ScenarioPanel, ScenarioResult, scenario_analysis, scenario_panel
from .topsis import rank
from .weights import ScenarioKind, normalize, scenario_weights


@dataclass(frozen=True)
class ServiceDataset:
    """Immutable snapshot served by the API."""

    criteria: tuple[CriterionSpec, ...]
    matrices: dict[int, PerformanceMatrix]
    default_rankings: dict[int, RankingResult]
    scenario_distances: dict[int, list[ScenarioResult]]
    panel: ScenarioPanel
    program_families: dict[str, str] | None
    scenario_ratio: float


def read_program_families(path: str | Path) -> dict[str, str]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["program_id", "family_id"]:
        raise ValueError(f"{path}: expected header program_id,family_id")
    return {row[0]: row[1] for row in rows[1:] if row}


def discover_matrices(matrices_dir: str | Path, criteria) -> dict[int, PerformanceMatrix]:
    """Load every matrix_<year>.csv under a directory."""
    matrices: dict[int, PerformanceMatrix] = {}
    for path in sorted(Path(matrices_dir).glob("matrix_*.csv")):
        if path.name.endswith(".support.csv"):
            continue
        stem = path.stem.removeprefix("matrix_")
        try:
            year = int(stem)
        except ValueError:
            continue
        matrices[year] = read_matrix_csv(path, criteria)
    if not matrices:
        raise FileNotFoundError(f"no matrix_<year>.csv files found in {matrices_dir}")
    return matrices


def load_service_dataset(
    matrices_dir: str | Path,
    criteria_path: str | Path,
    programs_path: str | Path | None = None,
    scenario_ratio: float = 2.0,
) -> ServiceDataset:
    criteria = read_criteria_json(criteria_path)
    matrices = discover_matrices(matrices_dir, criteria)
    default_weights = normalize([c.relative_weight for c in criteria])
    default_rankings = {year: rank(matrix, default_weights) for year, matrix in matrices.items()}
    scenario_distances = {year: scenario_analysis(matrix, scenario_ratio) for year, matrix in matrices.items()}
    panel = scenario_panel(matrices, scenario_ratio)
    families = read_program_families(programs_path) if programs_path else None
    return ServiceDataset(
        criteria=criteria,
        matrices=matrices,
        default_rankings=default_rankings,
        scenario_distances=scenario_distances,
        panel=panel,
        program_families=families,
        scenario_ratio=scenario_ratio,
    )


class RankRequest(BaseModel):
    year: int
    relative_weights: list[float] = Field(min_length=1)


class GsaRequest(BaseModel):
    relative_weights: list[float] = Field(min_length=1)
    estimator: Literal["smoother", "binned"] = "smoother"
    pooled: bool = True
    year: int | None = None
    bins: int | None = None
    compare: bool = False
    focus: str | None = None


class PanelRequest(BaseModel):
    relative_weights: list[float] = Field(min_length=1)


def create_app(dataset: ServiceDataset | None) -> FastAPI:
    app = FastAPI(title="vetrank service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def ds() -> ServiceDataset:
        if dataset is None:
            raise HTTPException(status_code=503, detail="no dataset loaded")
        return dataset

    def parse_weights(relative: list[float]):
        data = ds()
        if len(relative) != len(data.criteria):
            raise HTTPException(
                status_code=400,
                detail=f"expected {len(data.criteria)} weights, got {len(relative)}",
            )
        if any(w <= 0 for w in relative):
            raise HTTPException(status_code=400, detail="all relative weights must be > 0")
        return normalize(relative)

    def matrix_for(year: int) -> PerformanceMatrix:
        data = ds()
        if year not in data.matrices:
            raise HTTPException(status_code=404, detail=f"year {year} not in dataset")
        return data.matrices[year]

    @app.get("/api/meta")
    def meta():
        data = ds()
        programs = sorted({alt for m in data.matrices.values() for alt in m.alternatives})
        families = sorted(set(data.program_families.values())) if data.program_families else []
        return {
            "years": sorted(data.matrices),
            "criteria": [
                {
                    "id": c.id,
                    "label": c.label,
                    "direction": c.direction.value,
                    "relative_weight": c.relative_weight,
                }
                for c in data.criteria
            ],
            "programs": programs,
            "families": families,
            "program_families": data.program_families or {},
            "programs_per_year": {str(year): len(m.alternatives) for year, m in sorted(data.matrices.items())},
        }

    @app.post("/api/rank")
    def rank_endpoint(request: RankRequest):
        matrix = matrix_for(request.year)
        weights = parse_weights(request.relative_weights)
        result = rank(matrix, weights)
        default = ds().default_rankings[request.year]
        by_rank = sorted(
            zip(result.alternatives, result.scores, result.ranks, result.percentiles), key=lambda row: row[2]
        )
        return {
            "year": request.year,
            "ranking": [
                {"alternative": alt, "score": score, "rank": position, "percentile": pct}
                for alt, score, position, pct in by_rank
            ],
            "distance_to_default": kendall_tau_distance(result.order, default.order),
        }

    @app.get("/api/scenarios")
    def scenarios_endpoint(year: int):
        data = ds()
        if year not in data.scenario_distances:
            raise HTTPException(status_code=404, detail=f"year {year} not in dataset")
        return {
            "year": year,
            "distances": [
                {"criterion": res.criterion_id, "distance": res.distance}
                for res in data.scenario_distances[year]
            ],
        }

    @app.get("/api/scenarios/summary")
    def scenarios_summary():
        data = ds()
        return {
            "criteria": [
                {
                    "criterion": cid,
                    "min": data.panel.summaries[cid].min,
                    "q1": data.panel.summaries[cid].q1,
                    "median": data.panel.summaries[cid].median,
                    "q3": data.panel.summaries[cid].q3,
                    "max": data.panel.summaries[cid].max,
                    "points": [{"year": year, "distance": d} for year, d in data.panel.distances[cid]],
                }
                for cid in data.panel.criterion_ids
            ]
        }

    def effects_payload(effects: gsa_mod.MainEffects) -> dict:
        return {
            "estimator": effects.estimator,
            "sample_size": effects.sample_size,
            "effects": [
                {"criterion": cid, "eta_sq": eta, "raw_eta_sq": raw, "residual_var": res}
                for cid, eta, raw, res in zip(
                    effects.criterion_ids, effects.eta_sq, effects.raw_eta_sq, effects.residual_var
                )
            ],
        }

    def run_gsa(weights, request: GsaRequest) -> gsa_mod.MainEffects:
        data = ds()
        try:
            if request.pooled and request.year is None:
                return gsa_mod.pooled_main_effects(data.matrices, weights, request.estimator, request.bins)
            year = request.year if request.year is not None else sorted(data.matrices)[0]
            matrix = matrix_for(year)
            return gsa_mod.main_effects(matrix, weights, request.estimator, request.bins)
        except gsa_mod.TooFewPointsError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except gsa_mod.ZeroOutputVarianceError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/api/gsa")
    def gsa_endpoint(request: GsaRequest):
        data = ds()
        weights = parse_weights(request.relative_weights)
        schemes = [("given", weights)]
        if request.compare:
            n = len(data.criteria)
            ids = [c.id for c in data.criteria]
            focus_id = request.focus if request.focus is not None else ids[0]
            if focus_id not in ids:
                raise HTTPException(status_code=400, detail=f"unknown focus criterion {focus_id!r}")
            focus = ids.index(focus_id) + 1
            schemes.append(
                (f"least_weighted:{focus_id}", scenario_weights(n, focus, ScenarioKind.LEAST_WEIGHTED, data.scenario_ratio))
            )
            schemes.append(
                (f"most_weighted:{focus_id}", scenario_weights(n, focus, ScenarioKind.MOST_WEIGHTED, data.scenario_ratio))
            )
        return {
            "pooled": request.pooled and request.year is None,
            "schemes": [
                {"scheme": name, **effects_payload(run_gsa(w, request))} for name, w in schemes
            ],
        }

    @app.post("/api/panel")
    def panel_endpoint(request: PanelRequest):
        data = ds()
        weights = parse_weights(request.relative_weights)
        rankings = {year: rank(matrix, weights) for year, matrix in data.matrices.items()}
        panel = percentile_panel(rankings, data.program_families)
        families = data.program_families or {}
        return {
            "years": sorted(data.matrices),
            "programs": [
                {
                    "id": summary.program_id,
                    "family": families.get(summary.program_id),
                    "mean_percentile": summary.mean_percentile,
                    "percentiles": {str(year): pct for year, pct in sorted(panel.percentiles[summary.program_id].items())},
                }
                for summary in panel.program_summaries
            ],
            "families": [
                {
                    "family": row.family_id,
                    "year": row.year,
                    "mean": row.mean,
                    "min": row.min,
                    "max": row.max,
                    "count": row.count,
                }
                for row in panel.family_summaries
            ],
        }

    return app
