"""Command-line pipeline: ingest records, rank, analyze sensitivity, serve.

All outputs are CSV (analyst-friendly); criteria configuration is JSON. Every
subcommand is deterministic for identical inputs and flags. Validation
problems exit with status 1 and a message naming the file or row; usage
errors exit with status 2.
"""

from __future__ import annotations

import csv
import functools
import sys
from datetime import date
from pathlib import Path

import click

from . import gsa as gsa_mod
from . import ingestion
from .model import (
    WeightVector,
    read_criteria_json,
    read_matrix_csv,
    write_criteria_json,
    write_matrix_csv,
)
from .scenario import scenario_panel
from .service import discover_matrices, read_program_families
from .topsis import rank as topsis_rank
from .weights import ScenarioKind, normalize, scenario_weights


def _fail_on_data_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ValueError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _parse_relative_weights(text: str | None, criteria) -> WeightVector:
    if text is None:
        return normalize([c.relative_weight for c in criteria])
    try:
        relative = [float(part) for part in text.split(",")]
    except ValueError:
        raise click.BadParameter(f"weights must be comma-separated numbers, got {text!r}")
    if len(relative) != len(criteria):
        raise click.BadParameter(f"expected {len(criteria)} weights, got {len(relative)}")
    return normalize(relative)


def _write_csv(path: Path | None, header: list[str], rows: list[list]) -> None:
    if path is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _fmt(value: float) -> str:
    return repr(float(value))


@click.group()
@click.version_option(package_name="vetrank")
def main() -> None:
    """Rank programs from labor records and analyze criteria influence."""


@main.command()
@click.option("--graduates", "graduates_csv", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--contracts", "contracts_csv", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--sector-map", "sector_map_csv", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--criteria", "criteria_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Criteria JSON; defaults to the built-in eight criteria.")
@click.option("--min-support", default=6, show_default=True,
              help="Minimum defined values behind every program-year cell.")
@click.option("--min-programs", default=30, show_default=True,
              help="Minimum surviving programs for a year to enter the window.")
@click.option("--observation-end", default=None, help="ISO date capping open-ended contracts (default: max date in data).")
@_fail_on_data_errors
def ingest(graduates_csv, contracts_csv, sector_map_csv, out_dir, criteria_path, min_support, min_programs, observation_end):
    """Build per-year performance matrices from record files."""
    criteria = read_criteria_json(criteria_path) if criteria_path else ingestion.DEFAULT_CRITERIA
    obs_end = None
    if observation_end is not None:
        try:
            obs_end = date.fromisoformat(observation_end)
        except ValueError:
            raise click.BadParameter(f"--observation-end must be an ISO date, got {observation_end!r}")
    dataset = ingestion.load_datasets(graduates_csv, contracts_csv, sector_map_csv, obs_end)
    records = ingestion.compute_person_criteria(dataset)
    yearly = ingestion.build_yearly_results(records, criteria, min_support)
    window = ingestion.select_window({year: res.matrix for year, res in yearly.items()}, min_programs)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for year, matrix in window.matrices.items():
        write_matrix_csv(matrix, out / f"matrix_{year}.csv")

    report_rows: list[list] = []
    for year in sorted(yearly):
        status = "retained" if year in window.matrices else "excluded"
        report_rows.append([year, f"year_{status}", "", "", "", window.program_counts[year]])
        for drop in sorted(yearly[year].dropped, key=lambda d: d.program_id):
            report_rows.append([year, "program_dropped", drop.program_id, drop.criterion_id, drop.support, ""])
    _write_csv(out / "filter_report.csv",
               ["year", "event", "program_id", "criterion_id", "support", "program_count"], report_rows)

    families = sorted({(g.program_id, g.family_id) for g in dataset.graduates})
    _write_csv(out / "programs.csv", ["program_id", "family_id"], [list(pair) for pair in families])
    write_criteria_json(criteria, out / "criteria.json")

    click.echo(
        f"ingested {len(dataset.graduates)} graduates, {sum(len(c) for c in dataset.contracts_by_person.values())} contracts"
        f" ({dataset.orphan_contracts} orphan rows skipped)"
    )
    click.echo(f"window: {sorted(window.matrices)} (program counts {window.program_counts})")


@main.command(name="rank")
@click.option("--matrix", "matrix_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--criteria", "criteria_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--weights", "weights_text", default=None, help="Comma-separated relative weights (default: from criteria file).")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="Output CSV (default: stdout).")
@_fail_on_data_errors
def rank_cmd(matrix_path, criteria_path, weights_text, out_path):
    """Rank the alternatives of one matrix."""
    criteria = read_criteria_json(criteria_path)
    weights = _parse_relative_weights(weights_text, criteria)
    matrix = read_matrix_csv(matrix_path, criteria)
    result = topsis_rank(matrix, weights)
    by_rank = sorted(zip(result.alternatives, result.scores, result.ranks, result.percentiles), key=lambda r: r[2])
    rows = [[alt, _fmt(score), position, _fmt(pct)] for alt, score, position, pct in by_rank]
    _write_csv(Path(out_path) if out_path else None, ["alternative", "score", "rank", "percentile"], rows)


@main.command()
@click.option("--matrices", "matrices_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--criteria", "criteria_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--ratio", default=2.0, show_default=True, help="Focus-criterion relative weight ratio.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@_fail_on_data_errors
def scenarios(matrices_dir, criteria_path, ratio, out_dir):
    """Most/least-weighted scenario distances per criterion and year."""
    criteria = read_criteria_json(criteria_path)
    matrices = discover_matrices(matrices_dir, criteria)
    panel = scenario_panel(matrices, ratio)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    distance_rows = [
        [cid, year, _fmt(distance)]
        for cid in panel.criterion_ids
        for year, distance in panel.distances[cid]
    ]
    _write_csv(out / "scenario_distances.csv", ["criterion", "year", "distance"], distance_rows)
    summary_rows = [
        [cid, _fmt(s.min), _fmt(s.q1), _fmt(s.median), _fmt(s.q3), _fmt(s.max)]
        for cid, s in ((cid, panel.summaries[cid]) for cid in panel.criterion_ids)
    ]
    _write_csv(out / "scenario_summary.csv", ["criterion", "min", "q1", "median", "q3", "max"], summary_rows)


@main.command()
@click.option("--matrices", "matrices_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--criteria", "criteria_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--weights", "weights_text", default=None, help="Comma-separated relative weights (default: from criteria file).")
@click.option("--estimator", type=click.Choice(["smoother", "binned"]), default="smoother", show_default=True)
@click.option("--bins", type=int, default=None, help="Bin count for the binned estimator (default: sqrt of sample size).")
@click.option("--pooled/--no-pooled", default=True, show_default=True,
              help="Pool alternative-year pairs across the window.")
@click.option("--year", type=int, default=None, help="Restrict to one year (implies --no-pooled).")
@click.option("--focus", default=None, help="Also emit most/least-weighted schemes focused on this criterion id.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="Output CSV (default: stdout).")
@_fail_on_data_errors
def gsa(matrices_dir, criteria_path, weights_text, estimator, bins, pooled, year, focus, out_path):
    """Variance-explained share of each criterion on the scores."""
    criteria = read_criteria_json(criteria_path)
    weights = _parse_relative_weights(weights_text, criteria)
    matrices = discover_matrices(matrices_dir, criteria)
    if year is not None and year not in matrices:
        raise click.BadParameter(f"year {year} not found in {matrices_dir}")

    schemes = [("given", weights)]
    if focus is not None:
        ids = [c.id for c in criteria]
        if focus not in ids:
            raise click.BadParameter(f"unknown focus criterion {focus!r}")
        position = ids.index(focus) + 1
        schemes.append((f"least_weighted:{focus}", scenario_weights(len(ids), position, ScenarioKind.LEAST_WEIGHTED)))
        schemes.append((f"most_weighted:{focus}", scenario_weights(len(ids), position, ScenarioKind.MOST_WEIGHTED)))

    rows = []
    for name, scheme in schemes:
        if pooled and year is None:
            effects = gsa_mod.pooled_main_effects(matrices, scheme, estimator, bins)
        else:
            use_year = year if year is not None else sorted(matrices)[0]
            effects = gsa_mod.main_effects(matrices[use_year], scheme, estimator, bins)
        for cid, eta, raw, res in zip(effects.criterion_ids, effects.eta_sq, effects.raw_eta_sq, effects.residual_var):
            rows.append([cid, name, _fmt(eta), _fmt(raw), _fmt(res)])
    _write_csv(Path(out_path) if out_path else None,
               ["criterion", "scheme", "eta_sq", "raw_eta_sq", "residual_var"], rows)


@main.command()
@click.option("--matrices", "matrices_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--criteria", "criteria_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--weights", "weights_text", default=None, help="Comma-separated relative weights (default: from criteria file).")
@click.option("--programs", "programs_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="program_id,family_id CSV enabling family summaries.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@_fail_on_data_errors
def panel(matrices_dir, criteria_path, weights_text, programs_path, out_dir):
    """Percentile history per program plus family-level summaries."""
    criteria = read_criteria_json(criteria_path)
    weights = _parse_relative_weights(weights_text, criteria)
    matrices = discover_matrices(matrices_dir, criteria)
    rankings = {year: topsis_rank(matrix, weights) for year, matrix in matrices.items()}
    families = read_program_families(programs_path) if programs_path else None
    result = ingestion.percentile_panel(rankings, families)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pct_rows = []
    for year in sorted(rankings):
        ranking = rankings[year]
        by_rank = sorted(zip(ranking.alternatives, ranking.scores, ranking.ranks, ranking.percentiles), key=lambda r: r[2])
        for alt, score, position, pct in by_rank:
            pct_rows.append([alt, year, _fmt(score), position, _fmt(pct)])
    _write_csv(out / "percentiles.csv", ["program", "year", "score", "rank", "percentile"], pct_rows)

    mean_rows = [
        [s.program_id, _fmt(s.mean_percentile), len(s.years_present)] for s in result.program_summaries
    ]
    _write_csv(out / "mean_percentiles.csv", ["program", "mean_percentile", "years_present"], mean_rows)

    if families is not None:
        family_rows = [
            [row.family_id, row.year, _fmt(row.mean), _fmt(row.min), _fmt(row.max), row.count]
            for row in result.family_summaries
        ]
        _write_csv(out / "family_summary.csv", ["family", "year", "mean", "min", "max", "count"], family_rows)


@main.command()
@click.option("--matrices", "matrices_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--criteria", "criteria_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--programs", "programs_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@_fail_on_data_errors
def serve(matrices_dir, criteria_path, programs_path, port, host):
    """Start the JSON API for the interactive weight-exploration UI."""
    import uvicorn

    from .service import create_app, load_service_dataset

    dataset = load_service_dataset(matrices_dir, criteria_path, programs_path)
    click.echo(f"serving {len(dataset.matrices)} years on http://{host}:{port}")
    uvicorn.run(create_app(dataset), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
