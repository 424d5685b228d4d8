from .cusp_chart import CuspGeometry, principal_heights, stretched_coordinate, thickness_profiles
from .domain import (
    DiskSpec,
    Domain,
    DomainSpec,
    build_domain,
    classify_point,
    classify_points,
)
from .enum import BoundaryTag, DomainKind, RegionTag

__all__ = [
    "BoundaryTag",
    "CuspGeometry",
    "DiskSpec",
    "Domain",
    "DomainKind",
    "DomainSpec",
    "RegionTag",
    "build_domain",
    "classify_point",
    "classify_points",
    "principal_heights",
    "stretched_coordinate",
    "thickness_profiles",
]
