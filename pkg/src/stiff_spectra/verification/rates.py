from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import stats

from stiff_spectra.verification.error import DegenerateFitError

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 3
CONFIDENCE = 0.95


@dataclass(frozen=True)
class RateFit:
    """
    Least-squares line log r = slope·log ε + intercept.

    slope_low / slope_high bound the slope at 95% confidence
    (Student t with n − 2 degrees of freedom).
    """

    slope: float
    intercept: float
    r_squared: float
    n_points: int
    slope_low: float
    slope_high: float


def _line(x: NDArray[np.float64], y: NDArray[np.float64]) -> RateFit:
    if x.size < MIN_FIT_POINTS:
        raise DegenerateFitError(int(x.size), MIN_FIT_POINTS)
    fit = stats.linregress(x, y)
    r_squared = float(fit.rvalue**2) if math.isfinite(fit.rvalue) else 1.0
    half = float(stats.t.ppf(0.5 + CONFIDENCE / 2, x.size - 2) * fit.stderr) if x.size > 2 else math.inf
    return RateFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=r_squared,
        n_points=int(x.size),
        slope_low=float(fit.slope) - half,
        slope_high=float(fit.slope) + half,
    )


def fit_rate(points: Sequence[tuple[float, float]]) -> RateFit:
    """
    Slope of log r against log ε. Points with r ≤ 0 cannot be fitted on the
    log scale; they are dropped and logged.

    Raises:
        DegenerateFitError: fewer than 3 usable points
    """
    array = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    usable = (array[:, 1] > 0) & np.isfinite(array[:, 1]) & (array[:, 0] > 0)
    if not np.all(usable):
        logger.info("Dropped %d nonpositive residual(s) from rate fit", int((~usable).sum()))
    kept = array[usable]
    return _line(np.log(kept[:, 0]), np.log(kept[:, 1]))


def fit_log_against(x: ArrayLike, values: ArrayLike) -> RateFit:
    """Slope of log|v| against a given abscissa (decay-model fits)."""
    x = np.asarray(x, dtype=np.float64)
    v = np.abs(np.asarray(values, dtype=np.float64))
    usable = v > 0
    if not np.all(usable):
        logger.info("Dropped %d zero value(s) from log fit", int((~usable).sum()))
    return _line(x[usable], np.log(v[usable]))


def richardson(fine: float | ArrayLike, coarse: float | ArrayLike, h_fine: float, h_coarse: float):
    """λ_R = λ_f + (λ_f − λ_c)/((h_c/h_f)² − 1), cancelling the O(h²) term."""
    fine = np.asarray(fine, dtype=np.float64)
    coarse = np.asarray(coarse, dtype=np.float64)
    extrapolated = fine + (fine - coarse) / ((h_coarse / h_fine) ** 2 - 1.0)
    return float(extrapolated) if extrapolated.ndim == 0 else extrapolated


def discretization_error(fine: float, coarse: float, h_fine: float, h_coarse: float) -> float:
    """Error estimate of the extrapolated value: |λ_R − λ_f|·(h_f/h_c)²."""
    return abs(richardson(fine, coarse, h_fine, h_coarse) - fine) * (h_fine / h_coarse) ** 2


def fit_correction(eps: ArrayLike, delta: ArrayLike, orders: Sequence[float] = (0.5, 1.0)) -> NDArray[np.float64]:
    """Least-squares coefficients c of δ(ε) ≈ Σ c_k ε^{orders_k}."""
    eps = np.asarray(eps, dtype=np.float64)
    design = np.column_stack([eps**p for p in orders])
    coefficients, *_ = np.linalg.lstsq(design, np.asarray(delta, dtype=np.float64), rcond=None)
    return coefficients
