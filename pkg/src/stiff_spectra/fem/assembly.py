from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from stiff_spectra.fem.coefficient import CoefficientField
from stiff_spectra.fem.dofmap import DofMap
from stiff_spectra.fem.error import DimensionMismatchError
from stiff_spectra.fem.matrix import SparseSymmetricMatrix
from stiff_spectra.geometry.enum import RegionTag
from stiff_spectra.meshing.mesh import Mesh

_MASS_PATTERN = (np.ones((3, 3)) + np.eye(3)) / 12.0


def p1_gradients(mesh: Mesh, triangles: NDArray[np.int64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Gradients of the barycentric basis functions, shape (T, 3, 2), and the
    unsigned triangle areas, shape (T,).
    """
    p = mesh.vertices[triangles]
    x, y = p[..., 0], p[..., 1]
    b = np.stack([y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1)
    c = np.stack([x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1)
    signed = 0.5 * (b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0])
    grads = np.stack([b, c], axis=2) / (2.0 * signed)[:, None, None]
    return grads, np.abs(signed)


def local_stiffness(mesh: Mesh, triangles: NDArray[np.int64]) -> NDArray[np.float64]:
    grads, areas = p1_gradients(mesh, triangles)
    return areas[:, None, None] * np.einsum("tik,tjk->tij", grads, grads)


def local_mass(mesh: Mesh, triangles: NDArray[np.int64]) -> NDArray[np.float64]:
    _, areas = p1_gradients(mesh, triangles)
    return areas[:, None, None] * _MASS_PATTERN[None, :, :]


def _check(mesh: Mesh, dofmap: DofMap) -> None:
    if dofmap.n_vertices != mesh.n_vertices:
        raise DimensionMismatchError("dofmap vertices", mesh.n_vertices, dofmap.n_vertices)


def _assemble(
    mesh: Mesh,
    dofmap: DofMap,
    coeff: CoefficientField,
    local: NDArray[np.float64],
    triangles: NDArray[np.int64],
    tags: NDArray[np.int8],
) -> SparseSymmetricMatrix:
    dofs = dofmap.index[triangles]
    rows = np.broadcast_to(dofs[:, :, None], local.shape)
    cols = np.broadcast_to(dofs[:, None, :], local.shape)
    values = coeff.per_triangle(tags)[:, None, None] * local
    # one triangle of the symmetric matrix; grouped dofs keep both (i, j) and (j, i)
    keep = (rows >= 0) & (cols >= 0) & (rows <= cols)
    return SparseSymmetricMatrix.from_entries(rows[keep], cols[keep], values[keep], dofmap.n_dofs)


def assemble_stiffness(
    mesh: Mesh,
    dofmap: DofMap,
    coeff: CoefficientField,
    region: RegionTag | None = None,
) -> SparseSymmetricMatrix:
    """
    Stiffness matrix Σ_T a_T ∫_T ∇φ_i·∇φ_j over all triangles, or over the
    triangles of one region.

    Raises:
        DimensionMismatchError: dofmap built on another mesh
    """
    _check(mesh, dofmap)
    mask = mesh.region_mask(region)
    triangles = mesh.triangles[mask]
    return _assemble(mesh, dofmap, coeff, local_stiffness(mesh, triangles), triangles, mesh.triangle_tags[mask])


def assemble_mass(
    mesh: Mesh,
    dofmap: DofMap,
    weight: CoefficientField,
    region: RegionTag | None = None,
) -> SparseSymmetricMatrix:
    """Mass matrix Σ_T b_T ∫_T φ_i φ_j with the exact P1 pattern (area/12)(1 + δ_ij)."""
    _check(mesh, dofmap)
    mask = mesh.region_mask(region)
    triangles = mesh.triangles[mask]
    return _assemble(mesh, dofmap, weight, local_mass(mesh, triangles), triangles, mesh.triangle_tags[mask])
