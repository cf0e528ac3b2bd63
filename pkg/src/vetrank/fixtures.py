"""Seeded synthetic data for tests, demos and the bundled sample pipeline.

Two generators live here: a record-level dataset shaped like the real intake
at roughly 1/100 scale (a few hundred graduates, a dozen programs, three
cohort years), and a small adversarial performance matrix whose columns have
designed sensitivity behaviour (one criterion ordering opposed to all others,
one redundant duplicate).
"""

from __future__ import annotations

import csv
from datetime import date, timedelta
from pathlib import Path

import numpy as np

from .ingestion import DEFAULT_CRITERIA
from .model import CriterionSpec, Direction, PerformanceMatrix, write_criteria_json

DEFAULT_SEED = 20160131

FAMILIES = ("FAM_AGR", "FAM_HOT", "FAM_ITC", "FAM_HEA", "FAM_ADM")

#: program -> (family, popularity weight). Uneven popularity makes a few
#: program-years fail the support filter, which the filter report should show.
PROGRAMS: dict[str, tuple[str, float]] = {
    "PRG01": ("FAM_AGR", 4.5),
    "PRG02": ("FAM_AGR", 3.8),
    "PRG03": ("FAM_HOT", 4.5),
    "PRG04": ("FAM_HOT", 3.6),
    "PRG05": ("FAM_ITC", 4.0),
    "PRG06": ("FAM_ITC", 3.4),
    "PRG07": ("FAM_HEA", 4.0),
    "PRG08": ("FAM_HEA", 3.4),
    "PRG09": ("FAM_ADM", 3.6),
    "PRG10": ("FAM_ADM", 3.2),
    "PRG11": ("FAM_HOT", 1.2),
    "PRG12": ("FAM_ITC", 0.8),
}

GRADUATION_YEARS = (2010, 2011, 2012)


def _sector_pairs() -> list[tuple[str, str]]:
    pairs = []
    for k, family in enumerate(FAMILIES):
        for s in range(3):
            pairs.append((f"SEC{k}{s}", family))
    # two cross-family codes: work in these sectors counts for two families
    pairs.append(("SECX0", "FAM_AGR"))
    pairs.append(("SECX0", "FAM_HOT"))
    pairs.append(("SECX1", "FAM_ITC"))
    pairs.append(("SECX1", "FAM_ADM"))
    return pairs


def generate_synthetic_dataset(
    out_dir: str | Path,
    seed: int = DEFAULT_SEED,
    n_persons: int = 283,
) -> dict[str, Path]:
    """Write graduates.csv, contracts.csv, sector_map.csv and criteria.json.

    Deterministic for a given seed. Returns the paths keyed by file stem.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)

    program_ids = list(PROGRAMS)
    popularity = np.array([PROGRAMS[p][1] for p in program_ids])
    popularity = popularity / popularity.sum()
    sector_pairs = _sector_pairs()
    by_family: dict[str, list[str]] = {}
    for code, family in sector_pairs:
        by_family.setdefault(family, []).append(code)
    all_codes = sorted({code for code, _ in sector_pairs})

    graduates: list[list[str]] = []
    contracts: list[list[str]] = []
    for k in range(n_persons):
        person = f"P{k + 1:04d}"
        program = program_ids[int(rng.choice(len(program_ids), p=popularity))]
        family = PROGRAMS[program][0]
        year = int(rng.choice(GRADUATION_YEARS))
        graduation = date(year, 1, 1) + timedelta(days=int(rng.integers(0, 300)))
        graduates.append([person, program, family, graduation.isoformat()])

        # employability profile of the program drives contract generation, so
        # programs genuinely differ and aggregated columns are not degenerate
        quality = 0.35 + 0.5 * ((3 * program_ids.index(program)) % 7) / 6.0
        n_contracts = int(rng.poisson(7.0 + 3.0 * quality))
        cursor = graduation + timedelta(days=int(rng.exponential(160 * (1.2 - quality))) + 1)
        for _ in range(n_contracts):
            duration = int(rng.lognormal(mean=3.8 + 0.8 * quality, sigma=0.6)) + 5
            end = cursor + timedelta(days=duration)
            in_field = rng.random() < 0.5 + 0.35 * quality
            if in_field:
                code = by_family[family][int(rng.integers(0, len(by_family[family])))]
            else:
                code = all_codes[int(rng.integers(0, len(all_codes)))]
            temporary = rng.random() < 0.82 - 0.25 * quality
            open_ended = rng.random() < 0.02
            contracts.append(
                [
                    person,
                    cursor.isoformat(),
                    "" if open_ended else end.isoformat(),
                    "T" if temporary else "I",
                    code,
                ]
            )
            cursor = end + timedelta(days=int(rng.exponential(90 * (1.3 - quality))) + 1)

    paths = {
        "graduates": out / "graduates.csv",
        "contracts": out / "contracts.csv",
        "sector_map": out / "sector_map.csv",
        "criteria": out / "criteria.json",
    }
    with open(paths["graduates"], "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["person_id", "program_id", "family_id", "graduation_date"])
        writer.writerows(graduates)
    with open(paths["contracts"], "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["person_id", "start_date", "end_date", "contract_type", "sector_code"])
        writer.writerows(contracts)
    with open(paths["sector_map"], "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sector_code", "family_id"])
        writer.writerows(sector_pairs)
    write_criteria_json(DEFAULT_CRITERIA, paths["criteria"])
    return paths


ADVERSARIAL_CRITERIA: tuple[CriterionSpec, ...] = tuple(
    CriterionSpec(f"S{j}", label, Direction.BENEFIT, 1.0)
    for j, label in enumerate(
        [
            "base signal A",
            "base signal B",
            "base signal C",
            "base signal D",
            "base signal E",
            "base signal F",
            "duplicate of signal A",
            "opposing signal",
        ],
        start=1,
    )
)

OPPOSING_CRITERION = "S8"
REDUNDANT_CRITERION = "S7"


def adversarial_matrix(m: int = 10, seed: int = 7, noise: float = 0.08) -> PerformanceMatrix:
    """Matrix where S8 orders alternatives opposite to every other criterion.

    Columns S1..S6 are noisy affine images of one quality axis with a large
    offset, so each discriminates weakly after column normalization; S7
    duplicates S1's ordering exactly; S8 reverses the axis with a much larger
    relative spread. Re-weighting S8 up or down then flips the ranking between
    S8-led and consensus-led orders, while re-weighting any other column
    barely moves it.
    """
    rng = np.random.default_rng(seed)
    quality = np.linspace(0.0, 1.0, m) + rng.normal(0.0, 0.02, m)
    columns = []
    for j in range(6):
        slope = 0.8 + 0.4 * rng.random()
        columns.append(10.0 + slope * quality + rng.normal(0.0, noise, m))
    columns.append(1.7 * columns[0] + 0.3)  # redundant: same ordering as S1
    columns.append(2.8 - quality)  # opposing: reversed ordering, high leverage
    values = np.column_stack(columns)
    alternatives = tuple(f"ALT{i + 1:02d}" for i in range(m))
    return PerformanceMatrix(alternatives, ADVERSARIAL_CRITERIA, values)


def adversarial_yearly_matrices(n_years: int = 3, m: int = 10, seed: int = 7) -> dict[int, PerformanceMatrix]:
    """One adversarial matrix per synthetic year, jittered independently."""
    return {2010 + k: adversarial_matrix(m=m, seed=seed + k) for k in range(n_years)}


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="Generate the seeded synthetic record files.")
    parser.add_argument("out_dir", help="directory for graduates/contracts/sector_map CSVs")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--persons", type=int, default=283)
    args = parser.parse_args()
    written = generate_synthetic_dataset(args.out_dir, seed=args.seed, n_persons=args.persons)
    for name, path in written.items():
        print(f"{name}: {path}")
