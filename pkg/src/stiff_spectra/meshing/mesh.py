from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np
from numpy.typing import NDArray

from stiff_spectra.geometry.enum import BoundaryTag, RegionTag
from stiff_spectra.meshing.error import GradingSpecError

logger = logging.getLogger(__name__)


def _frozen(array: NDArray[Any]) -> NDArray[Any]:
    array.setflags(write=False)
    return array


def edge_keys(edges: NDArray[np.int64], n_vertices: int) -> NDArray[np.int64]:
    """Orientation-free integer key of each vertex pair."""
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    return lo * n_vertices + hi


@dataclass(frozen=True, eq=False)
class Mesh:
    """
    Mesh (P1 triangulation with region / boundary tags <Value Object>)

    責務:
    - 頂点・三角形・境界辺と、そのタグ（RegionTag / BoundaryTag）を保持する
    - 面積や辺長などの幾何量の提供
    - 領域ごとの部分メッシュ（submesh）の切り出しと、親メッシュとの頂点対応の保持

    GAMMA0 のタグが付いた辺は、core と annulus の両方を含むメッシュでは内部辺（界面）になる。
    配列はすべて書き込み不可。
    """

    vertices: NDArray[np.float64]
    triangles: NDArray[np.int64]
    triangle_tags: NDArray[np.int8]
    boundary_edges: NDArray[np.int64]
    edge_tags: NDArray[np.int8]
    parent_vertices: NDArray[np.int64] | None = field(default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", _frozen(np.array(self.vertices, dtype=np.float64).reshape(-1, 2)))
        object.__setattr__(self, "triangles", _frozen(np.array(self.triangles, dtype=np.int64).reshape(-1, 3)))
        object.__setattr__(self, "triangle_tags", _frozen(np.array(self.triangle_tags, dtype=np.int8).reshape(-1)))
        object.__setattr__(self, "boundary_edges", _frozen(np.array(self.boundary_edges, dtype=np.int64).reshape(-1, 2)))
        object.__setattr__(self, "edge_tags", _frozen(np.array(self.edge_tags, dtype=np.int8).reshape(-1)))
        if self.parent_vertices is not None:
            object.__setattr__(self, "parent_vertices", _frozen(np.array(self.parent_vertices, dtype=np.int64)))

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_triangles(self) -> int:
        return int(self.triangles.shape[0])

    @cached_property
    def signed_areas(self) -> NDArray[np.float64]:
        p = self.vertices[self.triangles]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    @cached_property
    def edges(self) -> NDArray[np.int64]:
        """Unique undirected edges of all triangles."""
        t = self.triangles
        all_edges = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        all_edges.sort(axis=1)
        return np.unique(all_edges, axis=0)

    @cached_property
    def h_max(self) -> float:
        e = self.edges
        if e.size == 0:
            return 0.0
        return float(np.max(np.linalg.norm(self.vertices[e[:, 1]] - self.vertices[e[:, 0]], axis=1)))

    def region_mask(self, region: RegionTag | None) -> NDArray[np.bool_]:
        if region is None:
            return np.ones(self.n_triangles, dtype=bool)
        return self.triangle_tags == int(region)

    def region_area(self, region: RegionTag | None = None) -> float:
        return float(np.sum(self.signed_areas[self.region_mask(region)]))

    def boundary_vertices(self, tag: BoundaryTag) -> NDArray[np.int64]:
        return np.unique(self.boundary_edges[self.edge_tags == int(tag)])

    @property
    def root_vertices(self) -> NDArray[np.int64]:
        """Vertex indices in the outermost parent mesh."""
        if self.parent_vertices is None:
            return np.arange(self.n_vertices, dtype=np.int64)
        return self.parent_vertices

    def shared_vertices(self, other: Mesh) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
        """
        Local indices (in self, in other) of vertices common to both meshes,
        matched through the parent mesh they were cut from.
        """
        common, idx_self, idx_other = np.intersect1d(
            self.root_vertices, other.root_vertices, assume_unique=True, return_indices=True
        )
        return idx_self.astype(np.int64), idx_other.astype(np.int64)

    def submesh(self, region: RegionTag) -> Mesh:
        """
        Triangles of one region with renumbered vertices. Boundary edges are
        kept when they are edges of a kept triangle.
        """
        keep = self.region_mask(region)
        triangles = self.triangles[keep]
        used = np.unique(triangles)
        local = np.full(self.n_vertices, -1, dtype=np.int64)
        local[used] = np.arange(used.size, dtype=np.int64)

        kept_edges = np.concatenate([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]])
        kept_keys = edge_keys(kept_edges, self.n_vertices)
        on_kept = np.isin(edge_keys(self.boundary_edges, self.n_vertices), kept_keys)

        sub = Mesh(
            vertices=self.vertices[used],
            triangles=local[triangles],
            triangle_tags=self.triangle_tags[keep],
            boundary_edges=local[self.boundary_edges[on_kept]],
            edge_tags=self.edge_tags[on_kept],
            parent_vertices=self.root_vertices[used],
        )
        logger.debug(
            "Submesh %s: %d vertices, %d triangles", region.name, sub.n_vertices, sub.n_triangles
        )
        return sub


@dataclass(kw_only=True)
class GradingSpec:
    """
    Geometric grading toward the cusp of a kissing domain.

    Properties:
    - delta_trunc: cusp truncation half-width (cut edges at |x1| = delta_trunc)
    - ratio: element size decay per dyadic band toward the cusp
    - n_across: minimum number of elements across the thickness H(x1)
    """

    delta_trunc: float = 0.0
    ratio: float = 0.5
    n_across: int = 6

    def __post_init__(self) -> None:
        if not self.delta_trunc >= 0:
            raise GradingSpecError("delta_trunc", self.delta_trunc, "must be nonnegative")
        if not 0 < self.ratio < 1:
            raise GradingSpecError("ratio", self.ratio, "must lie in (0, 1)")
        if self.n_across < 1:
            raise GradingSpecError("n_across", self.n_across, "must be at least 1")

    @classmethod
    def from_dict(cls, dict: dict[str, Any] | None = None) -> GradingSpec:
        if dict is None:
            dict = {}

        return cls(
            delta_trunc=dict.get("delta_trunc", 0.0),
            ratio=dict.get("ratio", 0.5),
            n_across=dict.get("n_across", 6),
        )


@dataclass(frozen=True)
class MeshDiagnostics:
    """Result of validate_mesh. `issues` is empty when every check passes."""

    min_angle: float
    h_max: float
    negative_area: tuple[int, ...]
    nonconforming_edges: int
    hanging_nodes: int
    untagged_boundary_edges: int
    tag_conflicts: int
    cross_interface_vertices: int
    issues: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.issues


def triangle_angles(vertices: NDArray[np.float64], triangles: NDArray[np.int64]) -> NDArray[np.float64]:
    """Interior angles in degrees, shape (T, 3)."""
    p = vertices[triangles]
    a = np.linalg.norm(p[:, 1] - p[:, 2], axis=1)
    b = np.linalg.norm(p[:, 2] - p[:, 0], axis=1)
    c = np.linalg.norm(p[:, 0] - p[:, 1], axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos_a = (b**2 + c**2 - a**2) / (2 * b * c)
        cos_b = (a**2 + c**2 - b**2) / (2 * a * c)
    alpha = np.degrees(np.arccos(np.clip(cos_a, -1.0, 1.0)))
    beta = np.degrees(np.arccos(np.clip(cos_b, -1.0, 1.0)))
    return np.stack([alpha, beta, 180.0 - alpha - beta], axis=1)


def _count_hanging_nodes(mesh: Mesh, candidate_edges: NDArray[np.int64]) -> int:
    """Vertices lying strictly inside a once-used edge (T-junctions)."""
    if candidate_edges.size == 0:
        return 0
    count = 0
    v = mesh.vertices
    for start in range(0, candidate_edges.shape[0], 128):
        chunk = candidate_edges[start : start + 128]
        a = v[chunk[:, 0]][:, None, :]
        d = (v[chunk[:, 1]] - v[chunk[:, 0]])[:, None, :]
        w = v[None, :, :] - a
        length2 = np.sum(d**2, axis=2)
        t = np.sum(w * d, axis=2) / length2
        cross = np.abs(d[..., 0] * w[..., 1] - d[..., 1] * w[..., 0])
        on_segment = (cross <= 1e-10 * length2) & (t > 1e-9) & (t < 1 - 1e-9)
        count += int(np.count_nonzero(on_segment))
    return count


def validate_mesh(mesh: Mesh) -> MeshDiagnostics:
    """
    Check orientation, conformity, quality and tag consistency.

    Never raises; every violated invariant is reported in `issues`.
    """
    issues: list[str] = []
    n = mesh.n_vertices

    negative = tuple(int(i) for i in np.nonzero(mesh.signed_areas <= 0)[0])
    if negative:
        issues.append(f"{len(negative)} triangle(s) with nonpositive signed area")

    angles = triangle_angles(mesh.vertices, mesh.triangles)
    min_angle = float(np.nanmin(angles)) if angles.size else 0.0

    t = mesh.triangles
    all_edges = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
    keys = edge_keys(all_edges, n)
    owners = np.tile(np.arange(mesh.n_triangles), 3)
    unique_keys, inverse, counts = np.unique(keys, return_inverse=True, return_counts=True)

    nonconforming = int(np.count_nonzero(counts > 2))
    if nonconforming:
        issues.append(f"{nonconforming} edge(s) shared by more than two triangles")

    once = unique_keys[counts == 1]
    boundary_keys = edge_keys(mesh.boundary_edges, n)
    untagged = int(np.count_nonzero(~np.isin(once, boundary_keys)))
    if untagged:
        issues.append(f"{untagged} boundary edge(s) without a boundary tag")

    once_edges = np.stack([once // n, once % n], axis=1)
    hanging = _count_hanging_nodes(mesh, once_edges)
    if hanging:
        issues.append(f"{hanging} hanging node(s)")

    conflicts = int(np.count_nonzero(~np.isin(mesh.triangle_tags, [int(RegionTag.CORE), int(RegionTag.ANNULUS)])))
    edge_count = dict(zip(unique_keys.tolist(), counts.tolist()))
    # tags of the (at most two) triangles that own each edge
    first_owner = np.full(unique_keys.size, -1, dtype=np.int64)
    last_owner = np.full(unique_keys.size, -1, dtype=np.int64)
    first_owner[inverse[::-1]] = owners[::-1]
    last_owner[inverse] = owners
    position = dict(zip(unique_keys.tolist(), range(unique_keys.size)))
    for key, tag in zip(boundary_keys.tolist(), mesh.edge_tags.tolist()):
        used = edge_count.get(key, 0)
        if used == 0:
            conflicts += 1
        elif tag == int(BoundaryTag.GAMMA0):
            if used == 2:
                k = position[key]
                if mesh.triangle_tags[first_owner[k]] == mesh.triangle_tags[last_owner[k]]:
                    conflicts += 1
        elif used != 1:
            conflicts += 1
    if conflicts:
        issues.append(f"{conflicts} region/boundary tag conflict(s)")

    interface = np.zeros(n, dtype=bool)
    interface[mesh.boundary_vertices(BoundaryTag.GAMMA0)] = True
    in_core = np.zeros(n, dtype=bool)
    in_annulus = np.zeros(n, dtype=bool)
    in_core[t[mesh.triangle_tags == int(RegionTag.CORE)].ravel()] = True
    in_annulus[t[mesh.triangle_tags == int(RegionTag.ANNULUS)].ravel()] = True
    crossing = int(np.count_nonzero(in_core & in_annulus & ~interface))
    if crossing:
        issues.append(f"{crossing} vertex/vertices shared by core and annulus off Γ₀")

    return MeshDiagnostics(
        min_angle=min_angle,
        h_max=mesh.h_max,
        negative_area=negative,
        nonconforming_edges=nonconforming,
        hanging_nodes=hanging,
        untagged_boundary_edges=untagged,
        tag_conflicts=conflicts,
        cross_interface_vertices=crossing,
        issues=tuple(issues),
    )
