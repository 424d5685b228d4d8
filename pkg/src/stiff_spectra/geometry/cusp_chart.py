from __future__ import annotations

import math
from dataclasses import dataclass
from typing import overload

import numpy as np
from numpy.typing import NDArray

from stiff_spectra.geometry.error import CuspGeometryError, OutOfChartError


@dataclass(frozen=True)
class CuspGeometry:
    """
    Kissing disks in the cusp chart: tangency point at the origin, core circle
    centered at (0, R0), outer circle centered at (0, R1). Near the origin both
    circles are graphs x2 = H_i(x1) and the annulus lies between them.
    """

    R0: float
    R1: float
    delta_trunc: float

    def __post_init__(self) -> None:
        if not self.R0 > 0:
            raise CuspGeometryError("R0", self.R0, "must be positive")
        if not self.R0 < self.R1:
            raise CuspGeometryError("R1", self.R1, "must exceed R0")
        if not 0.0 < self.delta_trunc < self.R0 / 2:
            raise CuspGeometryError("delta_trunc", self.delta_trunc, "must lie in (0, R0/2)")

    @property
    def curvature_gap(self) -> float:
        """½(1/R0 − 1/R1), so that Hp = curvature_gap·x1²."""
        return 0.5 * (1.0 / self.R0 - 1.0 / self.R1)

    def check_chart(self, x1: float | NDArray[np.float64]) -> None:
        worst = float(np.max(np.abs(x1)))
        if not worst < self.R0:
            raise OutOfChartError(worst, self.R0)


def _height(radius: float, x1: NDArray[np.float64]) -> NDArray[np.float64]:
    # R − sqrt(R² − x²) written without cancellation
    return x1**2 / (radius + np.sqrt(radius**2 - x1**2))


@overload
def thickness_profiles(geom: CuspGeometry, x1: float) -> tuple[float, float, float, float]: ...
@overload
def thickness_profiles(
    geom: CuspGeometry, x1: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]: ...
def thickness_profiles(geom, x1):
    """
    Circle-graph heights above the tangency point.

    Returns:
        (H0, H1, H, Hp): exact core height, exact outer height, thickness H0 − H1
        and the principal part ½(1/R0 − 1/R1)x1².

    Raises:
        OutOfChartError: |x1| >= R0
    """
    geom.check_chart(x1)
    x = np.asarray(x1, dtype=np.float64)
    h0 = _height(geom.R0, x)
    h1 = _height(geom.R1, x)
    hp = geom.curvature_gap * x**2
    if np.ndim(x1) == 0:
        return float(h0), float(h1), float(h0 - h1), float(hp)
    return h0, h1, h0 - h1, hp


def principal_heights(geom: CuspGeometry, x1: float | NDArray[np.float64]):
    """Quadratic heights (H0ᵖ, H1ᵖ) = (x1²/2R0, x1²/2R1)."""
    x = np.asarray(x1, dtype=np.float64)
    return x**2 / (2 * geom.R0), x**2 / (2 * geom.R1)


def stretched_coordinate(geom: CuspGeometry, x1: float, x2: float) -> float:
    """η = (x2 − H1(x1)) / H(x1), in (0, 1) inside the cusp annulus."""
    _, h1, h, _ = thickness_profiles(geom, x1)
    if h == 0.0:
        return math.nan
    return (x2 - h1) / h
