"""Relative-to-absolute weight conversion and scenario weight construction.

Relative weights follow the expert-elicitation convention of a minimum weight
of 1, with every other weight expressed as a multiple of it. Absolute weights
are the sum-normalized form used by the ranking kernel.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Sequence

from .model import WeightVector


class NonPositiveWeightError(ValueError):
    pass


class ScenarioKind(Enum):
    MOST_WEIGHTED = "most_weighted"
    LEAST_WEIGHTED = "least_weighted"


def normalize(relative: Sequence[float]) -> WeightVector:
    """Divide each relative weight by the total, yielding weights that sum to 1.

    Scale-invariant: any positive rescaling of the input produces the same
    vector. Stored at full precision; published three-decimal tables are
    rounded displays of these values, not the values themselves.
    """
    rel = [float(w) for w in relative]
    if not rel:
        raise NonPositiveWeightError("relative weights must be non-empty")
    for k, w in enumerate(rel):
        if not math.isfinite(w) or w <= 0:
            raise NonPositiveWeightError(f"relative weight at position {k + 1} must be > 0, got {w}")
    total = math.fsum(rel)
    absolute = [w / total for w in rel]
    # fsum guards the 1e-9 sum invariant against long accumulation error
    drift = math.fsum(absolute) - 1.0
    if drift != 0.0:
        absolute[-1] -= drift
    return WeightVector(tuple(absolute))


def scenario_weights(n: int, focus: int, kind: ScenarioKind, ratio: float = 2.0) -> WeightVector:
    """Weight vector where the focus criterion gets `ratio` times (most weighted)
    or 1/`ratio` times (least weighted) the relative weight of every other.

    `focus` is the 1-based criterion position. The default 2:1 ratio is a
    reference value, not a law; callers may tighten or widen it.
    """
    if n < 2:
        raise ValueError(f"scenario weights need at least 2 criteria, got {n}")
    if not 1 <= focus <= n:
        raise IndexError(f"focus criterion {focus} out of range 1..{n}")
    if not math.isfinite(ratio) or ratio <= 0:
        raise NonPositiveWeightError(f"ratio must be > 0, got {ratio}")
    if kind is ScenarioKind.MOST_WEIGHTED:
        relative = [1.0] * n
        relative[focus - 1] = ratio
    else:
        relative = [ratio] * n
        relative[focus - 1] = 1.0
    return normalize(relative)
