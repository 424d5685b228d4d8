from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from stiff_spectra.asymptotics.error import RegimeError


class Regime(Enum):
    MNEG = "MNeg"
    MZERO = "MZero"
    MSMALL = "MSmall"
    MHALF = "MHalf"
    MLARGE = "MLarge"


def classify_regime(m: float) -> Regime:
    """Exact split at m = 0 and m = 1/2."""
    if not math.isfinite(m):
        raise RegimeError(m)
    if m < 0:
        return Regime.MNEG
    if m == 0:
        return Regime.MZERO
    if m < 0.5:
        return Regime.MSMALL
    if m == 0.5:
        return Regime.MHALF
    return Regime.MLARGE


@dataclass(frozen=True)
class Exponents:
    """λᵋ − ε^α λ⁰ − ε^β λ′ = O(ε^γ)"""

    alpha: float
    beta: float
    gamma: float


def exponents(m: float) -> Exponents:
    regime = classify_regime(m)
    match regime:
        case Regime.MNEG:
            return Exponents(alpha=0.0, beta=1.0, gamma=min(1.0 - m, 2.0))
        case Regime.MZERO:
            return Exponents(alpha=0.0, beta=1.0, gamma=1.5)
        case Regime.MSMALL:
            return Exponents(alpha=0.0, beta=2.0 * m, gamma=min(3.0 * m, 1.0))
        case Regime.MHALF:
            return Exponents(alpha=0.0, beta=0.5, gamma=1.0)
        case Regime.MLARGE:
            gamma = min(4.0 * m - 1.0, 1.0 + m) if m < 1 else 2.0 * m + 1.0
            return Exponents(alpha=2.0 * m - 1.0, beta=2.0 * m, gamma=gamma)
