"""Variance-based global sensitivity: main effect of each criterion on scores.

The main effect of criterion j is Var(E(score | column j)) / Var(score) — the
share of score variance explained by that column alone. The conditional mean
is estimated nonparametrically, either by equal-count binning or by a
random-walk state-space smoother fitted along the sorted column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .model import PerformanceMatrix, WeightVector
from .topsis import closeness_scores

SMOOTHER_MIN_POINTS = 10
# signal-to-noise candidates for the smoother, chosen by innovation likelihood
SNR_GRID = tuple(float(g) for g in np.logspace(-3.0, 3.0, 13))


class TooFewPointsError(ValueError):
    pass


class ZeroOutputVarianceError(ValueError):
    pass


@dataclass(frozen=True)
class MainEffects:
    """Per-criterion variance-explained shares under one weighting scheme.

    ``eta_sq`` is clamped to [0, 1] for reporting; ``raw_eta_sq`` keeps the
    unclamped estimates, and ``residual_var`` the variance of score minus
    fitted conditional mean, per criterion.
    """

    criterion_ids: tuple[str, ...]
    eta_sq: tuple[float, ...]
    raw_eta_sq: tuple[float, ...]
    residual_var: tuple[float, ...]
    estimator: str
    sample_size: int


def _binned_conditional_mean(x: np.ndarray, r: np.ndarray, bins: int | None) -> np.ndarray:
    m = len(x)
    k = bins if bins is not None else max(1, round(math.sqrt(m)))
    if k < 1:
        raise ValueError(f"bin count must be >= 1, got {k}")
    if m < 2 * k:
        raise TooFewPointsError(f"binned estimator with {k} bins needs at least {2 * k} points, got {m}")
    order = np.argsort(x, kind="stable")
    fitted = np.empty(m, dtype=float)
    for bin_indices in np.array_split(order, k):
        fitted[bin_indices] = r[bin_indices].mean()
    return fitted


def _local_level_filter(y: np.ndarray, snr: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, float]:
    """Forward Kalman pass of a random-walk level observed with unit-variance noise.

    Returns filtered means/variances, one-step predictions, and the
    concentrated innovation log-likelihood (observation variance profiled out,
    diffuse first step excluded).
    """
    m = len(y)
    filt_mean = np.empty(m)
    filt_var = np.empty(m)
    pred_mean = np.empty(m)
    pred_var = np.empty(m)
    pred_mean[0] = y[0]
    pred_var[0] = 1e7  # effectively diffuse start
    sq_sum = 0.0
    log_f_sum = 0.0
    for t in range(m):
        innovation_var = pred_var[t] + 1.0
        innovation = y[t] - pred_mean[t]
        gain = pred_var[t] / innovation_var
        filt_mean[t] = pred_mean[t] + gain * innovation
        filt_var[t] = pred_var[t] * (1.0 - gain)
        if t > 0:
            sq_sum += innovation * innovation / innovation_var
            log_f_sum += math.log(innovation_var)
        if t + 1 < m:
            pred_mean[t + 1] = filt_mean[t]
            pred_var[t + 1] = filt_var[t] + snr
    obs_var = sq_sum / (m - 1)
    if obs_var <= 0.0:
        loglik = math.inf  # noiseless series: any snr fits exactly
    else:
        loglik = -0.5 * ((m - 1) * math.log(obs_var) + log_f_sum)
    return filt_mean, filt_var, pred_mean, pred_var, loglik


def _smooth(filt_mean: np.ndarray, filt_var: np.ndarray, pred_mean: np.ndarray, pred_var: np.ndarray) -> np.ndarray:
    """Backward fixed-interval pass combining each filtered state with the future."""
    m = len(filt_mean)
    smoothed = np.empty(m)
    smoothed[-1] = filt_mean[-1]
    for t in range(m - 2, -1, -1):
        if pred_var[t + 1] == 0.0:
            smoothed[t] = filt_mean[t]
            continue
        c = filt_var[t] / pred_var[t + 1]
        smoothed[t] = filt_mean[t] + c * (smoothed[t + 1] - pred_mean[t + 1])
    return smoothed


def _smoother_conditional_mean(x: np.ndarray, r: np.ndarray) -> np.ndarray:
    m = len(x)
    if m < SMOOTHER_MIN_POINTS:
        raise TooFewPointsError(f"state-space smoother needs at least {SMOOTHER_MIN_POINTS} points, got {m}")
    order = np.argsort(x, kind="stable")
    y = r[order]
    best = None
    for snr in SNR_GRID:
        run = _local_level_filter(y, snr)
        if best is None or run[4] > best[1][4]:
            best = (snr, run)
    filt_mean, filt_var, pred_mean, pred_var, _ = best[1]
    smoothed = _smooth(filt_mean, filt_var, pred_mean, pred_var)
    fitted = np.empty(m)
    fitted[order] = smoothed
    return fitted


def conditional_mean(
    x: Sequence[float], r: Sequence[float], estimator: str = "smoother", bins: int | None = None
) -> np.ndarray:
    """Fitted E(r | x) at every sample point, in input order.

    ``estimator`` is "binned" (equal-count bins, default bin count sqrt(m))
    or "smoother" (random-walk level + fixed-interval smoothing, with the
    signal-to-noise ratio picked by innovation likelihood over a fixed grid).
    """
    x = np.asarray(x, dtype=float)
    r = np.asarray(r, dtype=float)
    if x.shape != r.shape or x.ndim != 1:
        raise ValueError("x and r must be 1-d arrays of equal length")
    if estimator == "binned":
        return _binned_conditional_mean(x, r, bins)
    if estimator == "smoother":
        return _smoother_conditional_mean(x, r)
    raise ValueError(f"unknown estimator {estimator!r}")


def main_effects_from_samples(
    samples: np.ndarray,
    response: np.ndarray,
    criterion_ids: Sequence[str],
    estimator: str = "smoother",
    bins: int | None = None,
) -> MainEffects:
    """Estimate variance-explained shares column by column on raw samples.

    Exposed separately from the matrix entry point so calibration harnesses
    can feed synthetic (input, response) pairs that bypass the ranking step.
    """
    samples = np.asarray(samples, dtype=float)
    response = np.asarray(response, dtype=float)
    total_var = float(np.var(response))
    if total_var == 0.0:
        raise ZeroOutputVarianceError("response has zero variance; main effects are undefined")
    eta_raw, eta_clamped, residual = [], [], []
    for j in range(samples.shape[1]):
        fitted = conditional_mean(samples[:, j], response, estimator=estimator, bins=bins)
        raw = float(np.var(fitted)) / total_var
        eta_raw.append(raw)
        eta_clamped.append(min(1.0, max(0.0, raw)))
        residual.append(float(np.var(response - fitted)))
    return MainEffects(
        criterion_ids=tuple(criterion_ids),
        eta_sq=tuple(eta_clamped),
        raw_eta_sq=tuple(eta_raw),
        residual_var=tuple(residual),
        estimator=estimator,
        sample_size=len(response),
    )


def main_effects(
    matrix: PerformanceMatrix,
    weights: WeightVector,
    estimator: str = "smoother",
    bins: int | None = None,
) -> MainEffects:
    """Main effect of each raw criterion column on the closeness scores."""
    scores, _ = closeness_scores(matrix, weights)
    return main_effects_from_samples(matrix.values, scores, matrix.criterion_ids, estimator, bins)


def pooled_main_effects(
    matrices: Mapping[int, PerformanceMatrix],
    weights: WeightVector,
    estimator: str = "smoother",
    bins: int | None = None,
) -> MainEffects:
    """Main effects over one pooled sample per alternative-year pair.

    A single year is usually too thin for smoothing; pooling the analysis
    window is the intended usage. Scores are computed per year, then stacked.
    """
    if not matrices:
        raise ValueError("no matrices given")
    years = sorted(matrices)
    reference = matrices[years[0]].criterion_ids
    for year in years[1:]:
        if matrices[year].criterion_ids != reference:
            raise ValueError(f"criteria of year {year} do not match year {years[0]}")
    blocks, responses = [], []
    for year in years:
        matrix = matrices[year]
        scores, _ = closeness_scores(matrix, weights)
        blocks.append(matrix.values)
        responses.append(scores)
    return main_effects_from_samples(
        np.vstack(blocks), np.concatenate(responses), reference, estimator, bins
    )


def weight_scheme_comparison(
    matrix: PerformanceMatrix,
    schemes: Sequence[WeightVector],
    estimator: str = "smoother",
    bins: int | None = None,
) -> list[MainEffects]:
    """Main effects under each weighting scheme, for side-by-side comparison."""
    return [main_effects(matrix, scheme, estimator, bins) for scheme in schemes]
