"""Hand-built meshes with known integrals for fem / eigensolver tests."""

from __future__ import annotations

import numpy as np

from stiff_spectra.geometry.enum import BoundaryTag, RegionTag
from stiff_spectra.meshing.mesh import Mesh


def structured_square(n: int, *, left_gamma0: bool = False, core_left_half: bool = False) -> Mesh:
    """
    Unit square split into n×n cells of two triangles each.

    The left edge (x = 0) is tagged GAMMA0 when left_gamma0, every other
    boundary edge GAMMA1. With core_left_half the triangles with centroid
    x < 1/2 are CORE, the rest ANNULUS (n must be even).
    """
    xs = np.linspace(0.0, 1.0, n + 1)
    xx, yy = np.meshgrid(xs, xs, indexing="xy")
    vertices = np.column_stack([xx.ravel(), yy.ravel()])

    def v(i: int, j: int) -> int:
        return j * (n + 1) + i

    triangles = []
    for j in range(n):
        for i in range(n):
            triangles.append([v(i, j), v(i + 1, j), v(i + 1, j + 1)])
            triangles.append([v(i, j), v(i + 1, j + 1), v(i, j + 1)])
    triangles = np.asarray(triangles, dtype=np.int64)

    edges, tags = [], []
    for k in range(n):
        edges += [[v(k, 0), v(k + 1, 0)], [v(n, k), v(n, k + 1)], [v(k + 1, n), v(k, n)]]
        tags += [BoundaryTag.GAMMA1] * 3
        edges.append([v(0, k + 1), v(0, k)])
        tags.append(BoundaryTag.GAMMA0 if left_gamma0 else BoundaryTag.GAMMA1)

    centroids = vertices[triangles].mean(axis=1)
    if core_left_half:
        triangle_tags = np.where(centroids[:, 0] < 0.5, RegionTag.CORE, RegionTag.ANNULUS)
    else:
        triangle_tags = np.full(triangles.shape[0], RegionTag.ANNULUS)

    return Mesh(
        vertices=vertices,
        triangles=triangles,
        triangle_tags=np.asarray(triangle_tags, dtype=np.int8),
        boundary_edges=np.asarray(edges, dtype=np.int64),
        edge_tags=np.asarray([int(t) for t in tags], dtype=np.int8),
    )
