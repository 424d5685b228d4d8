from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import spatial

from stiff_spectra.cusp.error import CuspProfileError, SamplePointError
from stiff_spectra.fem.assembly import local_mass
from stiff_spectra.geometry.cusp_chart import CuspGeometry, thickness_profiles
from stiff_spectra.meshing.mesh import Mesh

logger = logging.getLogger(__name__)

MIDLINE_ETA = 0.5
_INSIDE_TOLERANCE = 1e-10
_CANDIDATES = 8


@dataclass(frozen=True, eq=False)
class CuspProfile:
    """
    CuspProfile (samples of a field along a ladder of stations x1 <Value Object>)

    x1 は厳密に減少、values はすべて有限。
    """

    x1: NDArray[np.float64]
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        x1 = np.asarray(self.x1, dtype=np.float64).reshape(-1)
        values = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if x1.shape != values.shape:
            raise CuspProfileError(f"{x1.size} stations but {values.size} values")
        if np.any(np.diff(x1) >= 0):
            raise CuspProfileError("x1 must be strictly decreasing")
        if not np.all(np.isfinite(values)):
            raise CuspProfileError("values must be finite")
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.x1.size)

    def shifted(self, offset: float) -> CuspProfile:
        return CuspProfile(x1=self.x1, values=self.values - offset)


def ladder(upper: float, lower: float, count: int) -> NDArray[np.float64]:
    """count stations from upper down to lower, geometrically spaced."""
    if not 0 < lower < upper:
        raise CuspProfileError(f"ladder bounds must satisfy 0 < lower < upper, got ({lower}, {upper})")
    return np.geomspace(upper, lower, count)


def _barycentric(
    corners: NDArray[np.float64], det: NDArray[np.float64], x: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Barycentric weights of points x (..., 2) in triangles corners (..., 3, 2)."""
    a, b, c = corners[..., 0, :], corners[..., 1, :], corners[..., 2, :]
    l1 = ((x[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (c[..., 0] - a[..., 0]) * (x[..., 1] - a[..., 1])) / det
    l2 = ((b[..., 0] - a[..., 0]) * (x[..., 1] - a[..., 1]) - (x[..., 0] - a[..., 0]) * (b[..., 1] - a[..., 1])) / det
    return np.stack([1.0 - l1 - l2, l1, l2], axis=-1)


def interpolate(mesh: Mesh, u: ArrayLike, points: ArrayLike) -> NDArray[np.float64]:
    """
    P1 interpolation of vertex values u at arbitrary points.

    候補三角形は重心の KD 木で絞り込む。近傍で見つからない点（細長い要素の近く）だけ全三角形を走査する。

    Raises:
        SamplePointError: a point outside every triangle
    """
    u = np.asarray(u, dtype=np.float64)
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    corners = mesh.vertices[mesh.triangles]
    a, b, c = corners[:, 0], corners[:, 1], corners[:, 2]
    det = (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (c[:, 0] - a[:, 0]) * (b[:, 1] - a[:, 1])

    k = min(_CANDIDATES, mesh.n_triangles)
    _, nearest = spatial.cKDTree(corners.mean(axis=1)).query(pts, k=k)
    nearest = np.asarray(nearest, dtype=np.int64).reshape(pts.shape[0], k)
    weights = _barycentric(corners[nearest], det[nearest], pts[:, None, :])
    worst = weights.min(axis=2)
    pick = np.argmax(worst, axis=1)
    rows = np.arange(pts.shape[0])
    triangle = nearest[rows, pick]
    best_weights = weights[rows, pick]

    for i in np.nonzero(worst[rows, pick] < -_INSIDE_TOLERANCE)[0]:
        full = _barycentric(corners, det, pts[i])
        full_worst = full.min(axis=1)
        t = int(np.argmax(full_worst))
        if full_worst[t] < -_INSIDE_TOLERANCE:
            raise SamplePointError((float(pts[i, 0]), float(pts[i, 1])))
        logger.debug("Point (%g, %g) located by full scan", pts[i, 0], pts[i, 1])
        triangle[i], best_weights[i] = t, full[t]

    return np.einsum("pk,pk->p", best_weights, u[mesh.triangles[triangle]])


def midline_profile(mesh: Mesh, geom: CuspGeometry, u: ArrayLike, stations: ArrayLike) -> CuspProfile:
    """Samples of u at η = 1/2 on the exact circle graphs, one per station x1."""
    x1 = np.asarray(stations, dtype=np.float64)
    _, h1, h, _ = thickness_profiles(geom, x1)
    points = np.column_stack([x1, h1 + MIDLINE_ETA * h])
    return CuspProfile(x1=x1, values=interpolate(mesh, u, points))


def band_mass_profile(mesh: Mesh, geom: CuspGeometry, u: ArrayLike, stations: ArrayLike) -> CuspProfile:
    """
    ‖u‖_{L²} over the part of the gap with |x1| < t (triangle centroids below
    the core center), one value per station t.
    """
    u = np.asarray(u, dtype=np.float64)
    t = np.asarray(stations, dtype=np.float64)
    centroids = mesh.vertices[mesh.triangles].mean(axis=1)
    in_gap = centroids[:, 1] < geom.R0
    local = local_mass(mesh, mesh.triangles)
    nodal = u[mesh.triangles]
    per_triangle = np.einsum("ti,tij,tj->t", nodal, local, nodal)
    masses = [
        float(np.sqrt(max(per_triangle[in_gap & (np.abs(centroids[:, 0]) < station)].sum(), 0.0)))
        for station in t
    ]
    logger.debug("Band masses: %s", masses)
    return CuspProfile(x1=t, values=np.asarray(masses))
