from __future__ import annotations

import logging
from typing import Callable, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from stiff_spectra.fem.assembly import assemble_mass, assemble_stiffness
from stiff_spectra.fem.coefficient import CoefficientField
from stiff_spectra.fem.dofmap import DofMap
from stiff_spectra.fem.enum import DofMode
from stiff_spectra.fem.error import DimensionMismatchError, NotConvergedError
from stiff_spectra.fem.matrix import SparseSymmetricMatrix
from stiff_spectra.geometry.enum import BoundaryTag, RegionTag
from stiff_spectra.meshing.mesh import Mesh

logger = logging.getLogger(__name__)

FLUX_RESIDUAL_TOLERANCE = 1e-6
_GAUSS_2 = (0.5 - 0.5 / np.sqrt(3.0), 0.5 + 0.5 / np.sqrt(3.0))


def vertex_matrices(mesh: Mesh, region: RegionTag | None) -> tuple[SparseSymmetricMatrix, SparseSymmetricMatrix]:
    """Unit-coefficient stiffness and mass over all vertices, restricted to a region."""
    free = DofMap.build(mesh, DofMode.FREE)
    unit = CoefficientField.uniform()
    return assemble_stiffness(mesh, free, unit, region), assemble_mass(mesh, free, unit, region)


def eigen_residual(
    mesh: Mesh,
    dofmap: DofMap,
    u: ArrayLike,
    lam: float,
    region: RegionTag | None = RegionTag.ANNULUS,
) -> float:
    """‖K u − λ M u‖ / ‖u‖_M of the constrained system (unit coefficients)."""
    u = np.asarray(u, dtype=np.float64)
    unit = CoefficientField.uniform()
    k = assemble_stiffness(mesh, dofmap, unit, region)
    m = assemble_mass(mesh, dofmap, unit, region)
    norm = np.sqrt(max(m.quadratic(u), 0.0))
    if norm == 0.0:
        return 0.0
    return float(np.linalg.norm(k @ u - lam * (m @ u)) / norm)


def nodal_flux(
    mesh: Mesh,
    dofmap: DofMap,
    u: ArrayLike,
    lam: float,
    tag: BoundaryTag = BoundaryTag.GAMMA0,
    *,
    region: RegionTag | None = RegionTag.ANNULUS,
    tol: float | None = FLUX_RESIDUAL_TOLERANCE,
) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
    """
    Consistent nodal flux (K U − λ M U)_i at the vertices of `tag`, with K, M
    assembled over `region` on all vertices and U the vertex values of u.

    Summed over Γ₀ this is ∫_{Γ₀} ∂_{ν₀}u ds with ν₀ pointing from Ω₁ into Ω₀.

    Raises:
        NotConvergedError: eigen-residual of (u, lam) above tol·max(1, |lam|)
    """
    u = np.asarray(u, dtype=np.float64)
    if u.shape[0] != dofmap.n_dofs:
        raise DimensionMismatchError("coefficient vector", dofmap.n_dofs, u.shape[0])
    if tol is not None:
        residual = eigen_residual(mesh, dofmap, u, lam, region)
        if residual > tol * max(1.0, abs(lam)):
            raise NotConvergedError(residual, tol)

    k, m = vertex_matrices(mesh, region)
    values = dofmap.expand(u)
    r = k @ values - lam * (m @ values)
    vertices = mesh.boundary_vertices(tag)
    return vertices, r[vertices]


def boundary_flux_integral(
    mesh: Mesh,
    dofmap: DofMap,
    u: ArrayLike,
    lam: float,
    tag: BoundaryTag = BoundaryTag.GAMMA0,
    *,
    region: RegionTag | None = RegionTag.ANNULUS,
    tol: float | None = FLUX_RESIDUAL_TOLERANCE,
) -> float:
    """F = aᵀ(K u − λ M u) with a ≡ 1 on the vertices of `tag`."""
    _, values = nodal_flux(mesh, dofmap, u, lam, tag, region=region, tol=tol)
    return float(np.sum(values))


def _vertex_vector(mesh: Mesh, u: ArrayLike) -> NDArray[np.float64]:
    u = np.asarray(u, dtype=np.float64)
    if u.shape[0] != mesh.n_vertices:
        raise DimensionMismatchError("vertex vector", mesh.n_vertices, u.shape[0])
    return u


def region_norms(mesh: Mesh, u: ArrayLike, region: RegionTag | None) -> tuple[float, float]:
    """(‖u‖_{L²}, |u|_{H¹}) over one region, exact for P1 fields given per vertex."""
    u = _vertex_vector(mesh, u)
    k, m = vertex_matrices(mesh, region)
    return float(np.sqrt(max(m.quadratic(u), 0.0))), float(np.sqrt(max(k.quadratic(u), 0.0)))


def region_integral(mesh: Mesh, u: ArrayLike, region: RegionTag | None) -> float:
    u = _vertex_vector(mesh, u)
    _, m = vertex_matrices(mesh, region)
    return float(np.sum(m @ u))


def gradient_gram(mesh: Mesh, fields: Sequence[ArrayLike], region: RegionTag | None) -> NDArray[np.float64]:
    """Gram matrix (∇u_i, ∇u_j) over a region; symmetric by construction."""
    k, _ = vertex_matrices(mesh, region)
    columns = np.column_stack([_vertex_vector(mesh, f) for f in fields])
    gram = columns.T @ (k @ columns)
    return 0.5 * (gram + gram.T)


def nodal_boundary_load(
    mesh: Mesh,
    g: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    tag: BoundaryTag = BoundaryTag.GAMMA0,
) -> NDArray[np.float64]:
    """∫ g φ_i ds over the edges of `tag`, two-point Gauss rule per edge."""
    load = np.zeros(mesh.n_vertices, dtype=np.float64)
    edges = mesh.boundary_edges[mesh.edge_tags == int(tag)]
    if edges.size == 0:
        return load
    a = mesh.vertices[edges[:, 0]]
    b = mesh.vertices[edges[:, 1]]
    length = np.linalg.norm(b - a, axis=1)
    for t in _GAUSS_2:
        values = np.asarray(g(a + t * (b - a)), dtype=np.float64) * 0.5 * length
        np.add.at(load, edges[:, 0], values * (1.0 - t))
        np.add.at(load, edges[:, 1], values * t)
    return load
