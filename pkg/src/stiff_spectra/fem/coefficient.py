from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from stiff_spectra.fem.error import CoefficientValueError
from stiff_spectra.geometry.enum import RegionTag


@dataclass(frozen=True)
class CoefficientField:
    """Piecewise-constant coefficient: one positive value per RegionTag."""

    core: float
    annulus: float

    def __post_init__(self) -> None:
        for region, value in (("core", self.core), ("annulus", self.annulus)):
            if not (math.isfinite(value) and value > 0):
                raise CoefficientValueError(region, value)

    @classmethod
    def uniform(cls, value: float = 1.0) -> CoefficientField:
        return cls(core=value, annulus=value)

    @classmethod
    def stiffness(cls, eps: float) -> CoefficientField:
        """a = (ε⁻¹, 1)"""
        return cls(core=1.0 / eps, annulus=1.0)

    @classmethod
    def mass(cls, eps: float, m: float) -> CoefficientField:
        """b = (ε^{-2m}, 1)"""
        return cls(core=eps ** (-2.0 * m), annulus=1.0)

    def value(self, region: RegionTag) -> float:
        return self.core if region is RegionTag.CORE else self.annulus

    def per_triangle(self, tags: NDArray[np.int8]) -> NDArray[np.float64]:
        return np.where(tags == int(RegionTag.CORE), self.core, self.annulus).astype(np.float64)
