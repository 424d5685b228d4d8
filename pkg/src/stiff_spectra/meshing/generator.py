from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import triangle
from numpy.typing import NDArray
from scipy import sparse

from stiff_spectra.geometry.cusp_chart import CuspGeometry, thickness_profiles
from stiff_spectra.geometry.domain import Domain
from stiff_spectra.geometry.enum import BoundaryTag, DomainKind, RegionTag
from stiff_spectra.meshing.error import MeshFailureError
from stiff_spectra.meshing.mesh import GradingSpec, Mesh, triangle_angles, validate_mesh

logger = logging.getLogger(__name__)

MIN_QUALITY_ANGLE = 15.0
TRIANGLE_MIN_ANGLE = 30
BOUNDARY_SPACING = 0.9

# region attributes handed to Triangle (0 means "no region reached")
_REGION_ATTRIBUTE = {RegionTag.CORE: 1.0, RegionTag.ANNULUS: 2.0}

SizeFunction = Callable[[NDArray[np.float64]], NDArray[np.float64]]


@dataclass
class _Pslg:
    """Planar straight line graph handed to Triangle."""

    points: list[NDArray[np.float64]] = field(default_factory=list)
    segments: list[tuple[int, int]] = field(default_factory=list)
    markers: list[int] = field(default_factory=list)
    regions: list[tuple[float, float, float]] = field(default_factory=list)
    holes: list[tuple[float, float]] = field(default_factory=list)
    n_points: int = 0

    def add_points(self, pts: NDArray[np.float64]) -> list[int]:
        pts = np.atleast_2d(pts)
        indices = list(range(self.n_points, self.n_points + pts.shape[0]))
        self.points.append(pts)
        self.n_points += pts.shape[0]
        return indices

    def add_chain(self, indices: list[int], tag: BoundaryTag, closed: bool = False) -> None:
        pairs = list(zip(indices[:-1], indices[1:]))
        if closed:
            pairs.append((indices[-1], indices[0]))
        self.segments.extend(pairs)
        self.markers.extend([int(tag)] * len(pairs))

    def add_region(self, x: float, y: float, region: RegionTag) -> None:
        self.regions.append((x, y, _REGION_ATTRIBUTE[region]))

    def vertices(self) -> NDArray[np.float64]:
        return np.concatenate(self.points)


def _march_angles(
    center: NDArray[np.float64],
    radius: float,
    theta0: float,
    theta1: float,
    size: SizeFunction,
) -> NDArray[np.float64]:
    """
    Angles from theta0 to theta1 (both included) such that consecutive arc
    pieces are no longer than BOUNDARY_SPACING times the local size.
    """
    steps = [theta0]
    theta = theta0
    direction = 1.0 if theta1 >= theta0 else -1.0
    while (theta1 - theta) * direction > 0:
        p = center + radius * np.array([[math.cos(theta), math.sin(theta)]])
        theta += direction * BOUNDARY_SPACING * float(size(p)[0]) / radius
        steps.append(theta)
    # fractional step count at theta1, then equal redistribution
    k = len(steps) - 1
    last = (theta1 - steps[-2]) / (steps[-1] - steps[-2])
    total = (k - 1) + last
    n = max(1, math.ceil(total - 1e-9))
    targets = np.linspace(0.0, total, n + 1)
    angles = np.interp(targets, np.arange(k + 1, dtype=np.float64), np.asarray(steps))
    angles[0], angles[-1] = theta0, theta1
    return angles


def _circle_points(center: NDArray[np.float64], radius: float, angles: NDArray[np.float64]) -> NDArray[np.float64]:
    return center + radius * np.stack([np.cos(angles), np.sin(angles)], axis=1)


def _segment_points(a: NDArray[np.float64], b: NDArray[np.float64], spacing: float, minimum: int) -> NDArray[np.float64]:
    """Interior points of the straight segment a-b (endpoints excluded)."""
    n = max(minimum, math.ceil(float(np.linalg.norm(b - a)) / spacing))
    t = np.linspace(0.0, 1.0, n + 1)[1:-1, None]
    return a + t * (b - a)


def _disk_pslg(domain: Domain, h: float) -> _Pslg:
    pslg = _Pslg()
    uniform: SizeFunction = lambda p: np.full(len(p), h)  # noqa: E731

    outer_c = np.asarray(domain.outer.center)
    core_c = np.asarray(domain.core.center)
    for center, radius, tag in (
        (outer_c, domain.outer.radius, BoundaryTag.GAMMA1),
        (core_c, domain.core.radius, BoundaryTag.GAMMA0),
    ):
        angles = _march_angles(center, radius, 0.0, 2 * math.pi, uniform)[:-1]
        pslg.add_chain(pslg.add_points(_circle_points(center, radius, angles)), tag, closed=True)

    pslg.add_region(float(core_c[0]), float(core_c[1]), RegionTag.CORE)
    offset = core_c - outer_c
    distance = float(np.hypot(*offset))
    u = offset / distance if distance > 0 else np.array([1.0, 0.0])
    t = 0.5 * (domain.core.radius + domain.outer.radius + distance)
    seed = core_c - t * u
    pslg.add_region(float(seed[0]), float(seed[1]), RegionTag.ANNULUS)
    return pslg


def cusp_size_function(geom: CuspGeometry, h: float, grading: GradingSpec) -> SizeFunction:
    """
    Element size in the cusp chart: h away from the cusp, h·ratio^k in the k-th
    dyadic band |x1| ∈ (R0/2^{k+2}, R0/2^{k+1}], and at most H(x1)/n_across
    inside the thin gap below the core center.
    """
    band_origin = geom.R0 / 2

    def size(points: NDArray[np.float64]) -> NDArray[np.float64]:
        x1 = np.maximum(np.abs(points[:, 0]), geom.delta_trunc)
        x2 = points[:, 1]
        s = np.full(points.shape[0], h)
        gap = (x1 < 0.95 * geom.R0) & (x2 < geom.R0)
        if np.any(gap):
            _, _, thickness, _ = thickness_profiles(geom, x1[gap])
            band = np.floor(np.log2(band_origin / x1[gap]))
            graded = np.where(band >= 0, h * grading.ratio ** np.maximum(band, 0), h)
            s[gap] = np.minimum.reduce([s[gap], graded, thickness / grading.n_across])
        return s

    return size


def _kissing_pslg(geom: CuspGeometry, h: float, grading: GradingSpec, include_core: bool) -> _Pslg:
    """
    Truncated kissing configuration in the cusp chart. The outer circle is
    centered at (0, R1), the core circle at (0, R0); the cut edges sit at
    x1 = ±delta_trunc.
    """
    pslg = _Pslg()
    size = cusp_size_function(geom, h, grading)
    delta = geom.delta_trunc
    outer_c = np.array([0.0, geom.R1])
    core_c = np.array([0.0, geom.R0])

    # angles measured from the downward direction, counterclockwise
    def arc(center: NDArray[np.float64], radius: float, a0: float, a1: float) -> NDArray[np.float64]:
        shifted = _march_angles(center, radius, a0 - math.pi / 2, a1 - math.pi / 2, size)
        return _circle_points(center, radius, shifted)

    phi = math.asin(delta / geom.R1)
    psi = math.asin(delta / geom.R0)
    outer = pslg.add_points(arc(outer_c, geom.R1, phi, 2 * math.pi - phi))
    core = pslg.add_points(arc(core_c, geom.R0, psi, 2 * math.pi - psi))
    pslg.add_chain(outer, BoundaryTag.GAMMA1)
    pslg.add_chain(core, BoundaryTag.GAMMA0)

    vertices = np.concatenate(pslg.points)
    for start, end in ((outer[0], core[0]), (outer[-1], core[-1])):
        a, b = vertices[start], vertices[end]
        spacing = float(size(0.5 * (a + b)[None, :])[0]) * BOUNDARY_SPACING
        inner = pslg.add_points(_segment_points(a, b, spacing, grading.n_across))
        pslg.add_chain([start, *inner, end], BoundaryTag.TRUNCATION)

    pslg.add_region(0.0, geom.R0 + geom.R1, RegionTag.ANNULUS)
    if include_core:
        bottom = arc(core_c, geom.R0, -psi, psi)[1:-1]
        inner = pslg.add_points(bottom) if bottom.size else []
        pslg.add_chain([core[-1], *inner, core[0]], BoundaryTag.GAMMA0)
        pslg.add_region(0.0, geom.R0, RegionTag.CORE)
    else:
        pslg.holes.append((0.0, geom.R0))
    return pslg


def _triangulate(pslg: _Pslg, max_area: float) -> Mesh:
    data: dict[str, NDArray[np.float64] | NDArray[np.int32]] = {
        "vertices": pslg.vertices(),
        "segments": np.asarray(pslg.segments, dtype=np.int32),
        "segment_markers": np.asarray(pslg.markers, dtype=np.int32)[:, None],
        "regions": np.array([[x, y, attr, max_area] for x, y, attr in pslg.regions], dtype=np.float64),
    }
    if pslg.holes:
        data["holes"] = np.asarray(pslg.holes, dtype=np.float64)
    # YY: no Steiner points on segments, so boundary vertices stay on the circles
    options = f"pq{TRIANGLE_MIN_ANGLE}YYAa{max_area:.12f}"
    result = triangle.triangulate(data, options)

    attributes = np.asarray(result.get("triangle_attributes", np.zeros((0, 1))))[:, 0]
    tags = np.full(attributes.shape, -1, dtype=np.int8)
    for region, value in _REGION_ATTRIBUTE.items():
        tags[attributes == value] = int(region)
    if np.any(tags < 0):
        raise MeshFailureError("triangles outside every tagged region")

    return Mesh(
        vertices=result["vertices"],
        triangles=result["triangles"],
        triangle_tags=tags,
        boundary_edges=np.asarray(pslg.segments, dtype=np.int64),
        edge_tags=np.asarray(pslg.markers, dtype=np.int8),
    )


def _min_angle_at(vertices: NDArray[np.float64], triangles: NDArray[np.int64]) -> float:
    return float(np.min(triangle_angles(vertices, triangles)))


def smooth_mesh(mesh: Mesh, sweeps: int, seed: int, h_limit: float) -> Mesh:
    """
    Laplacian smoothing of interior vertices in a seeded random order. A move
    is kept only when it raises the smallest incident angle, keeps every
    incident triangle positively oriented and no incident edge exceeds h_limit.
    """
    if sweeps <= 0:
        return mesh
    vertices = mesh.vertices.copy()
    t = mesh.triangles
    n = mesh.n_vertices
    incidence = sparse.csr_matrix(
        (np.ones(t.size), (t.ravel(), np.repeat(np.arange(mesh.n_triangles), 3))),
        shape=(n, mesh.n_triangles),
    )
    neighbours = (incidence @ incidence.T).tocsr()
    fixed = np.zeros(n, dtype=bool)
    fixed[mesh.boundary_edges.ravel()] = True
    movable = np.nonzero(~fixed)[0]

    rng = np.random.default_rng(seed)
    moved = 0
    for _ in range(sweeps):
        for v in rng.permutation(movable):
            tris = t[incidence.indices[incidence.indptr[v] : incidence.indptr[v + 1]]]
            ring = neighbours.indices[neighbours.indptr[v] : neighbours.indptr[v + 1]]
            ring = ring[ring != v]
            before = _min_angle_at(vertices, tris)
            old = vertices[v].copy()
            old_edge = float(np.max(np.linalg.norm(vertices[ring] - old, axis=1)))
            vertices[v] = vertices[ring].mean(axis=0)
            p = vertices[tris]
            d1, d2 = p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]
            positive = bool(np.all(d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0] > 0))
            new_edge = float(np.max(np.linalg.norm(vertices[ring] - vertices[v], axis=1)))
            if positive and _min_angle_at(vertices, tris) > before and new_edge <= max(h_limit, old_edge):
                moved += 1
            else:
                vertices[v] = old
    logger.debug("Smoothing moved %d vertex positions in %d sweep(s)", moved, sweeps)
    return Mesh(
        vertices=vertices,
        triangles=mesh.triangles,
        triangle_tags=mesh.triangle_tags,
        boundary_edges=mesh.boundary_edges,
        edge_tags=mesh.edge_tags,
        parent_vertices=mesh.parent_vertices,
    )


def _mesh_pslg(pslg: _Pslg, h: float, *, seed: int, smoothing_sweeps: int) -> Mesh:
    # triangles with min angle 30° and area h²/(2(cot30°+cot30°)) have edges ≤ h
    max_area = h**2 / (4 * math.sqrt(3.0))
    mesh = _triangulate(pslg, max_area)
    for _ in range(4):
        if mesh.h_max <= h:
            break
        max_area *= 0.7
        mesh = _triangulate(pslg, max_area)
    mesh = smooth_mesh(mesh, smoothing_sweeps, seed, h)

    diagnostics = validate_mesh(mesh)
    if diagnostics.min_angle < MIN_QUALITY_ANGLE:
        raise MeshFailureError("quality below threshold after smoothing", diagnostics.min_angle)
    if not diagnostics.ok:
        raise MeshFailureError("; ".join(diagnostics.issues), diagnostics.min_angle)
    logger.info(
        "Generated mesh: %d vertices, %d triangles, h_max=%.4f, min angle=%.2f",
        mesh.n_vertices,
        mesh.n_triangles,
        mesh.h_max,
        diagnostics.min_angle,
    )
    return mesh


def generate_mesh(
    domain: Domain,
    h: float,
    grading: GradingSpec | None = None,
    *,
    seed: int = 0,
    smoothing_sweeps: int = 2,
) -> Mesh:
    """
    Boundary-fitted P1 mesh of core + annulus.

    Args:
        domain: validated domain
        h: maximal edge length (away from the cusp)
        grading: required for kissing domains (delta_trunc > 0)
        seed: seed of the smoothing order
        smoothing_sweeps: number of Laplacian smoothing sweeps

    Raises:
        MeshFailureError: invalid input or quality below 15° after smoothing
    """
    if not h > 0:
        raise MeshFailureError(f"mesh size must be positive, got h={h}")

    if domain.kind is not DomainKind.KISSING:
        return _mesh_pslg(_disk_pslg(domain, h), h, seed=seed, smoothing_sweeps=smoothing_sweeps)

    if grading is None or grading.delta_trunc <= 0:
        raise MeshFailureError("kissing domains need a grading with delta_trunc > 0")
    geom = domain.cusp_geometry(grading.delta_trunc)
    chart = _mesh_pslg(
        _kissing_pslg(geom, h, grading, include_core=True),
        h,
        seed=seed,
        smoothing_sweeps=smoothing_sweeps,
    )
    return Mesh(
        vertices=domain.chart_to_world(chart.vertices),
        triangles=chart.triangles,
        triangle_tags=chart.triangle_tags,
        boundary_edges=chart.boundary_edges,
        edge_tags=chart.edge_tags,
    )


def generate_kissing_annulus(
    geom: CuspGeometry,
    h: float,
    grading: GradingSpec,
    *,
    seed: int = 0,
    smoothing_sweeps: int = 2,
) -> Mesh:
    """Annulus-only truncated kissing mesh in the cusp chart (core as a hole)."""
    if not h > 0:
        raise MeshFailureError(f"mesh size must be positive, got h={h}")
    return _mesh_pslg(
        _kissing_pslg(geom, h, grading, include_core=False),
        h,
        seed=seed,
        smoothing_sweeps=smoothing_sweeps,
    )
