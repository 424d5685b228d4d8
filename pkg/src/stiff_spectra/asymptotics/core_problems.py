from __future__ import annotations

import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from stiff_spectra.asymptotics.error import CompatibilityViolationError, ZeroEigenvalueError
from stiff_spectra.asymptotics.limit import LimitEntry, LimitMeshes, LimitSource
from stiff_spectra.fem.dofmap import DofMap
from stiff_spectra.fem.enum import DofMode
from stiff_spectra.fem.functionals import nodal_flux, vertex_matrices
from stiff_spectra.fem.linear import solve_lifted, solve_neumann_mean_zero
from stiff_spectra.geometry.enum import BoundaryTag
from stiff_spectra.meshing.mesh import Mesh

logger = logging.getLogger(__name__)

COMPATIBILITY_TOLERANCE = 1e-6
ZERO_EIGENVALUE_TOLERANCE = 1e-10


def annulus_flux(entry: LimitEntry, meshes: LimitMeshes) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
    """
    Consistent nodal flux of an annulus limit eigenfunction on the Γ₀
    vertices of the annulus submesh (ν₀ from Ω₁ into Ω₀).
    """
    # the modified problem carries |Ω₀| in its mass, so the unit-mass residual check does not apply
    tol = None if entry.source is LimitSource.MODIFIED_CONSTANT_TRACE else 1e-6
    return nodal_flux(meshes.annulus, entry.dofmap, entry.vector, entry.lambda0, BoundaryTag.GAMMA0, tol=tol)


def flux_integral(entry: LimitEntry, meshes: LimitMeshes) -> float:
    """F = ∫_{Γ₀} ∂_{ν₀}u⁰₁ ds"""
    _, values = annulus_flux(entry, meshes)
    return float(np.sum(values))


def trace_constant(entry: LimitEntry) -> float:
    """Value of the grouped Γ₀ dof of a constant-trace eigenfunction."""
    return float(entry.vector[entry.dofmap.trace_dof])


def compute_c0(entry: LimitEntry, meshes: LimitMeshes) -> float:
    """
    c₀ of a limit eigenfunction.

    - MixedAnnulus: c₀ = (λ⁰|Ω₀|)⁻¹ ∫_{Γ₀} ∂_{ν₀}u⁰₁ ds (consistent flux)
    - constant-trace sources: the trace constant itself; for the modified
      problem it equals the flux formula through the grouped equation

    Raises:
        ZeroEigenvalueError: λ⁰ = 0 for the flux formula
    """
    if entry.source in (LimitSource.CONSTANT_TRACE_ANNULUS, LimitSource.MODIFIED_CONSTANT_TRACE):
        return trace_constant(entry)
    if abs(entry.lambda0) <= ZERO_EIGENVALUE_TOLERANCE:
        raise ZeroEigenvalueError(entry.lambda0)
    return flux_integral(entry, meshes) / (entry.lambda0 * meshes.core_area)


def core_neumann_data(meshes: LimitMeshes, vertices: NDArray[np.int64], flux: NDArray[np.float64]) -> NDArray[np.float64]:
    """
    Annulus nodal flux -> core nodal Neumann data gᵢ = ∫ φᵢ ∂ₙu ds with n
    outward from Ω₀ (opposite to ν₀, hence the sign flip).
    """
    values = np.zeros(meshes.annulus.n_vertices, dtype=np.float64)
    values[vertices] = flux
    return -meshes.annulus_to_core(values)


def solve_correction_core(
    core_mesh: Mesh,
    flux_data: ArrayLike,
    lambda0: float,
    rhs_const: float,
    *,
    tol: float = COMPATIBILITY_TOLERANCE,
) -> NDArray[np.float64]:
    """
    Neumann problem −Δu′₀ = λ⁰·rhs_const in Ω₀, ∂ₙu′₀ = g on Γ₀, with g given
    as nodal data. The solution is fixed by a zero mean over Ω₀.

    Args:
        core_mesh: core submesh
        flux_data: nodal Neumann data per core vertex
        lambda0: limit eigenvalue
        rhs_const: constant of the volume load

    Raises:
        CompatibilityViolationError: |∫ load + ∫ g| above tol relative to the data size
    """
    g = np.asarray(flux_data, dtype=np.float64)
    stiffness, mass = vertex_matrices(core_mesh, None)
    weights = mass @ np.ones(core_mesh.n_vertices)
    load = lambda0 * rhs_const * weights + g

    scale = abs(lambda0 * rhs_const) * float(weights.sum()) + float(np.abs(g).sum())
    if scale == 0.0:
        return np.zeros(core_mesh.n_vertices, dtype=np.float64)
    residual = abs(float(load.sum())) / scale
    if residual > tol:
        raise CompatibilityViolationError(residual, tol)
    logger.debug("Core Neumann problem: compatibility residual %.3e", residual)
    return solve_neumann_mean_zero(stiffness.full(), weights, load)


def harmonic_extension(annulus_mesh: Mesh, trace: float | ArrayLike) -> NDArray[np.float64]:
    """
    Discrete harmonic u⁰₁ in Ω₁ with u⁰₁ = trace on Γ₀ and natural conditions
    elsewhere (Γ₁ and cut edges).

    Args:
        annulus_mesh: annulus submesh
        trace: scalar or per-vertex array (values off Γ₀ are ignored)
    """
    dofmap = DofMap.build(annulus_mesh, DofMode.DIRICHLET_ON_GAMMA0, trace)
    stiffness, _ = vertex_matrices(annulus_mesh, None)
    return solve_lifted(stiffness.full(), np.zeros(annulus_mesh.n_vertices), dofmap)
