from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from stiff_spectra.geometry.cusp_chart import CuspGeometry
from stiff_spectra.geometry.enum import DomainKind, RegionTag
from stiff_spectra.geometry.error import (
    DomainSpecError,
    OutsideDomainError,
    OverlapError,
    TangencyViolationError,
)

logger = logging.getLogger(__name__)

TANGENCY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class DiskSpec:
    """Disk with center (length units) and positive radius."""

    center: tuple[float, float]
    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise DomainSpecError("radius", self.radius, "must be a positive finite number")
        if len(self.center) != 2 or not all(math.isfinite(c) for c in self.center):
            raise DomainSpecError("center", self.center, "must be a finite 2D point")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        object.__setattr__(self, "radius", float(self.radius))


@dataclass(frozen=True)
class DomainSpec:
    """
    DomainSpec (Core + Annulus analytic description <Value Object>)

    core は Ω₀、outer は Γ₁ を境界とする外側の円板。
    Ω₁ = outer \\ closure(core) が annulus になる。
    """

    kind: DomainKind
    core: DiskSpec
    outer: DiskSpec

    @classmethod
    def concentric(cls, r0: float, r1: float) -> DomainSpec:
        return cls(
            kind=DomainKind.CONCENTRIC,
            core=DiskSpec(center=(0.0, 0.0), radius=r0),
            outer=DiskSpec(center=(0.0, 0.0), radius=r1),
        )

    @classmethod
    def kissing(cls, r0: float, r1: float) -> DomainSpec:
        """Outer disk at the origin, core tangent at (0, -r1)."""
        return cls(
            kind=DomainKind.KISSING,
            core=DiskSpec(center=(0.0, -(r1 - r0)), radius=r0),
            outer=DiskSpec(center=(0.0, 0.0), radius=r1),
        )

    @classmethod
    def from_dict(cls, dict: dict[str, Any]) -> DomainSpec:
        kind = DomainKind(dict.get("kind", DomainKind.CONCENTRIC.value))
        r0 = float(dict.get("r0", 0.5))
        r1 = float(dict.get("r1", 1.0))
        outer_center = dict.get("outer_center", (0.0, 0.0))
        if "core_center" in dict:
            core_center = dict["core_center"]
        elif kind is DomainKind.KISSING:
            core_center = (outer_center[0], outer_center[1] - (r1 - r0))
        else:
            core_center = outer_center
        return cls(
            kind=kind,
            core=DiskSpec(center=(core_center[0], core_center[1]), radius=r0),
            outer=DiskSpec(center=(outer_center[0], outer_center[1]), radius=r1),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "r0": self.core.radius,
            "r1": self.outer.radius,
            "core_center": list(self.core.center),
            "outer_center": list(self.outer.center),
        }


@dataclass(frozen=True)
class Domain:
    """
    Domain (validated DomainSpec <Value Object>)

    責務:
    - 点の領域判定（classify_point / classify_points）
    - Kissing の場合は接点 𝒫 と cusp chart（𝒫 を原点、annulus が上向きに開く座標系）への変換

    Properties:
    - gap: dist(Γ₀, Γ₁)（Kissing では 0）
    - tangency: 接点 𝒫（Kissing 以外では None）
    """

    spec: DomainSpec
    gap: float
    center_distance: float
    tangency: tuple[float, float] | None = None

    @property
    def kind(self) -> DomainKind:
        return self.spec.kind

    @property
    def core(self) -> DiskSpec:
        return self.spec.core

    @property
    def outer(self) -> DiskSpec:
        return self.spec.outer

    def _chart_frame(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        if self.tangency is None:
            raise DomainSpecError("kind", self.kind.value, "cusp chart exists only for kissing domains")
        origin = np.asarray(self.tangency, dtype=np.float64)
        up = (np.asarray(self.outer.center) - origin) / self.outer.radius
        # columns: chart x1 axis, chart x2 axis
        rotation = np.array([[up[1], up[0]], [-up[0], up[1]]], dtype=np.float64)
        return origin, rotation

    def chart_to_world(self, points: ArrayLike) -> NDArray[np.float64]:
        origin, rotation = self._chart_frame()
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return origin + pts @ rotation.T

    def world_to_chart(self, points: ArrayLike) -> NDArray[np.float64]:
        origin, rotation = self._chart_frame()
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return (pts - origin) @ rotation

    def cusp_geometry(self, delta_trunc: float) -> CuspGeometry:
        if self.kind is not DomainKind.KISSING:
            raise DomainSpecError("kind", self.kind.value, "cusp geometry requires a kissing domain")
        return CuspGeometry(R0=self.core.radius, R1=self.outer.radius, delta_trunc=delta_trunc)


def build_domain(spec: DomainSpec) -> Domain:
    """
    DomainSpec を検証して Domain を返す。

    Raises:
        TangencyViolationError: Kissing で内接していない場合
        OverlapError: core が outer の内部に収まらない場合
        DomainSpecError: Concentric で中心が一致しない場合
    """
    r0, r1 = spec.core.radius, spec.outer.radius
    c0 = np.asarray(spec.core.center)
    c1 = np.asarray(spec.outer.center)
    distance = float(np.hypot(*(c0 - c1)))

    if spec.kind is DomainKind.KISSING:
        if r0 >= r1:
            raise OverlapError(r0, r1, distance)
        gap = abs(distance - (r1 - r0))
        if gap > TANGENCY_TOLERANCE * max(1.0, r1):
            raise TangencyViolationError(gap, TANGENCY_TOLERANCE)
        direction = (c0 - c1) / distance
        tangency = c1 + r1 * direction
        point = (float(tangency[0]), float(tangency[1]))
        logger.debug("Kissing domain: tangency point %s", point)
        return Domain(spec=spec, gap=0.0, center_distance=distance, tangency=point)

    if spec.kind is DomainKind.CONCENTRIC and distance != 0.0:
        raise DomainSpecError("core_center", spec.core.center, "concentric disks must share the center")
    gap = r1 - (distance + r0)
    if gap <= 0.0:
        raise OverlapError(r0, r1, distance)
    return Domain(spec=spec, gap=gap, center_distance=distance)


def classify_points(domain: Domain, points: ArrayLike) -> NDArray[np.int8]:
    """Vectorized classify_point; raises on the first point outside the outer disk."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    outer_distance = np.hypot(*(pts - np.asarray(domain.outer.center)).T)
    outside = np.nonzero(outer_distance > domain.outer.radius)[0]
    if outside.size:
        p = pts[outside[0]]
        raise OutsideDomainError((float(p[0]), float(p[1])))
    core_distance = np.hypot(*(pts - np.asarray(domain.core.center)).T)
    return np.where(core_distance < domain.core.radius, RegionTag.CORE, RegionTag.ANNULUS).astype(np.int8)


def classify_point(domain: Domain, x: tuple[float, float]) -> RegionTag:
    return RegionTag(int(classify_points(domain, [x])[0]))
