from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from scipy import integrate

from stiff_spectra.cusp.error import CuspStudyConfigError
from stiff_spectra.cusp.profile import CuspProfile
from stiff_spectra.geometry.cusp_chart import CuspGeometry, thickness_profiles
from stiff_spectra.verification.error import DegenerateFitError
from stiff_spectra.verification.rates import fit_log_against

logger = logging.getLogger(__name__)

MIN_DECAY_POINTS = 5
DIVERGENCE_UPPER = 1.0 / 3.0


class DecayModel(Enum):
    POWER = "Power"
    EXPONENTIAL = "Exponential"


@dataclass(frozen=True)
class DecayFit:
    """
    Power: log|v| = exponent·log x1 + intercept
    Exponential: log|v| = exponent·(1/x1) + intercept (exponent is the rate)
    """

    model: DecayModel
    exponent: float
    intercept: float
    r_squared: float
    n_points: int


def fit_decay(profile: CuspProfile, model: DecayModel) -> DecayFit:
    """
    Raises:
        DegenerateFitError: fewer than 5 nonzero samples
    """
    usable = profile.values != 0
    if int(usable.sum()) < MIN_DECAY_POINTS:
        raise DegenerateFitError(int(usable.sum()), MIN_DECAY_POINTS)
    x1 = profile.x1[usable]
    abscissa = np.log(x1) if model is DecayModel.POWER else 1.0 / x1
    fit = fit_log_against(abscissa, profile.values[usable])
    logger.debug("%s decay fit: exponent=%.6g r2=%.6g", model.value, fit.slope, fit.r_squared)
    return DecayFit(
        model=model,
        exponent=fit.slope,
        intercept=fit.intercept,
        r_squared=fit.r_squared,
        n_points=fit.n_points,
    )


class ThicknessKind(Enum):
    PRINCIPAL = "principal"
    EXACT = "exact"


@dataclass(frozen=True)
class DivergenceCheck:
    """I(δ) = 2c₀²∫_δ^{1/3} H(x1)⁻² dx1 per δ, and the growth exponent of I against 1/δ."""

    deltas: list[float]
    integrals: list[float]
    exponent: float
    r_squared: float


def _divergence_integral(geom: CuspGeometry, c0: float, delta: float, thickness: ThicknessKind, upper: float) -> float:
    if delta >= upper or c0 == 0.0:
        return 0.0

    def integrand(x1: float) -> float:
        _, _, h, hp = thickness_profiles(geom, x1)
        return (hp if thickness is ThicknessKind.PRINCIPAL else h) ** -2

    # the integrand spans many decades; split at geometric breakpoints
    points = np.geomspace(delta, upper, max(2, int(math.ceil(math.log2(upper / delta))) + 1))
    total = 0.0
    for lo, hi in zip(points[:-1], points[1:]):
        value, _ = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=1e-12, limit=200)
        total += value
    return 2.0 * c0**2 * total


def dirichlet_exterior_divergence_check(
    geom: CuspGeometry,
    delta_list: Sequence[float],
    c0: float = 1.0,
    *,
    thickness: ThicknessKind = ThicknessKind.PRINCIPAL,
    upper: float = DIVERGENCE_UPPER,
) -> DivergenceCheck:
    """
    Energy of the constant-trace extension across a cusp of thickness H,
    evaluated by adaptive quadrature for a decreasing list of δ.

    The exponent is the slope of log I against log(1/δ) over the δ with I > 0;
    it is nan when fewer than 3 such δ exist.
    """
    deltas = [float(d) for d in delta_list]
    if any(b >= a for a, b in zip(deltas, deltas[1:])):
        raise CuspStudyConfigError("delta_list", deltas, "must be strictly decreasing")
    integrals = [_divergence_integral(geom, c0, d, thickness, upper) for d in deltas]

    positive = [(d, i) for d, i in zip(deltas, integrals) if i > 0]
    if len(positive) < 3:
        return DivergenceCheck(deltas=deltas, integrals=integrals, exponent=math.nan, r_squared=math.nan)
    fit = fit_log_against(np.log([1.0 / d for d, _ in positive]), [i for _, i in positive])
    logger.info("Divergence check: growth exponent %.4f (r2=%.6f)", fit.slope, fit.r_squared)
    return DivergenceCheck(deltas=deltas, integrals=integrals, exponent=fit.slope, r_squared=fit.r_squared)
