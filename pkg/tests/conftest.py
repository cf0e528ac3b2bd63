"""Shared fixtures and the independent oracles used across the suite.

The reference implementations here are deliberately straight-line pure Python
with no code shared with the package: they re-derive the same quantities the
library computes, so agreement is meaningful.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest

from vetrank.model import CriterionSpec, Direction, PerformanceMatrix

DATA_DIR = Path(__file__).parent / "data"


# --- independent reference implementations ---------------------------------


def reference_topsis_scores(values, benefit, weights):
    """Five ranking steps, re-implemented directly on nested lists."""
    m = len(values)
    n = len(values[0])
    normalized = [[0.0] * n for _ in range(m)]
    for j in range(n):
        norm = math.sqrt(sum(values[i][j] ** 2 for i in range(m)))
        for i in range(m):
            normalized[i][j] = weights[j] * values[i][j] / norm
    ideal = [0.0] * n
    antiideal = [0.0] * n
    for j in range(n):
        column = [normalized[i][j] for i in range(m)]
        if benefit[j]:
            ideal[j], antiideal[j] = max(column), min(column)
        else:
            ideal[j], antiideal[j] = min(column), max(column)
    scores = []
    for i in range(m):
        d_best = math.sqrt(sum((normalized[i][j] - ideal[j]) ** 2 for j in range(n)))
        d_worst = math.sqrt(sum((normalized[i][j] - antiideal[j]) ** 2 for j in range(n)))
        scores.append(d_worst / (d_worst + d_best))
    return scores


def reference_rank_order(ids, scores):
    """Descending score, ties by ascending id; returns ids best first."""
    return [x for _, x in sorted(zip(scores, ids), key=lambda p: (-p[0], p[1]))]


def brute_force_discordant(a, b):
    """O(m^2) discordant pair count over all label pairs."""
    pos_a = {x: i for i, x in enumerate(a)}
    pos_b = {x: i for i, x in enumerate(b)}
    labels = list(a)
    count = 0
    for i in range(len(labels)):
        for k in range(i + 1, len(labels)):
            delta_a = pos_a[labels[i]] - pos_a[labels[k]]
            delta_b = pos_b[labels[i]] - pos_b[labels[k]]
            if delta_a * delta_b < 0:
                count += 1
    return count


# --- random instance helpers ------------------------------------------------


def make_criteria(n, benefit, prefix="K"):
    return tuple(
        CriterionSpec(
            f"{prefix}{j + 1}",
            f"criterion {j + 1}",
            Direction.BENEFIT if benefit[j] else Direction.COST,
            1.0,
        )
        for j in range(n)
    )


def random_matrix(rng, m=None, n=None, mixed_directions=True):
    """Random positive matrix with continuous entries (degenerate w.p. zero)."""
    m = int(m if m is not None else rng.integers(2, 7))
    n = int(n if n is not None else rng.integers(1, 5))
    values = rng.uniform(0.1, 10.0, size=(m, n))
    benefit = (rng.random(n) < 0.5) if mixed_directions else np.ones(n, dtype=bool)
    alternatives = tuple(f"A{i + 1:02d}" for i in range(m))
    return PerformanceMatrix(alternatives, make_criteria(n, benefit), values), benefit


def random_weights(rng, n):
    raw = rng.uniform(0.2, 2.0, n)
    return raw / raw.sum()


# --- shared fixtures ---------------------------------------------------------


@pytest.fixture(scope="session")
def hand_fixture_dir() -> Path:
    return DATA_DIR / "hand_fixture"


@pytest.fixture(scope="session")
def synthetic_dir(tmp_path_factory) -> Path:
    from vetrank.fixtures import generate_synthetic_dataset

    out = tmp_path_factory.mktemp("synthetic")
    generate_synthetic_dataset(out)
    return out


@pytest.fixture(scope="session")
def ingested_dir(tmp_path_factory, synthetic_dir) -> Path:
    """Synthetic records run through the full ingest step (window of 3 years)."""
    from click.testing import CliRunner

    from vetrank.cli import main

    out = tmp_path_factory.mktemp("ingested")
    result = CliRunner().invoke(
        main,
        [
            "ingest",
            "--graduates", str(synthetic_dir / "graduates.csv"),
            "--contracts", str(synthetic_dir / "contracts.csv"),
            "--sector-map", str(synthetic_dir / "sector_map.csv"),
            "--out", str(out),
            "--min-programs", "8",
        ],
    )
    assert result.exit_code == 0, result.output
    return out
