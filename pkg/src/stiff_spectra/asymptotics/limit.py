from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property

import numpy as np
from numpy.typing import NDArray

from stiff_spectra.asymptotics.regime import Regime
from stiff_spectra.eigensolver.options import SolverOptions
from stiff_spectra.eigensolver.solver import solve_gevp
from stiff_spectra.fem.assembly import assemble_mass, assemble_stiffness
from stiff_spectra.fem.coefficient import CoefficientField
from stiff_spectra.fem.dofmap import DofMap
from stiff_spectra.fem.enum import DofMode
from stiff_spectra.geometry.enum import RegionTag
from stiff_spectra.meshing.mesh import Mesh
from stiff_spectra.util.cluster import cluster_eigenvalues

logger = logging.getLogger(__name__)

DEFAULT_RTOL_CLUSTER = 5e-3


class LimitSource(Enum):
    MIXED_ANNULUS = "MixedAnnulus"
    CONSTANT_TRACE_ANNULUS = "ConstantTraceAnnulus"
    MODIFIED_CONSTANT_TRACE = "ModifiedConstantTrace"
    NEUMANN_CORE = "NeumannCore"


@dataclass(frozen=True, eq=False)
class LimitMeshes:
    """
    LimitMeshes (full mesh + region submeshes <Value Object>)

    core / annulus は full から切り出した submesh で、Γ₀ 上の頂点を共有する。
    Ω₀ と Ω₁ の間の trace 受け渡しは補間なしで頂点対応のみで行う。
    """

    full: Mesh
    core: Mesh
    annulus: Mesh

    @classmethod
    def from_mesh(cls, mesh: Mesh) -> LimitMeshes:
        return cls(full=mesh, core=mesh.submesh(RegionTag.CORE), annulus=mesh.submesh(RegionTag.ANNULUS))

    @cached_property
    def core_area(self) -> float:
        """|Ω₀| by mesh quadrature"""
        return self.core.region_area()

    @cached_property
    def interface(self) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
        """(annulus indices, core indices) of the shared Γ₀ vertices."""
        idx_annulus, idx_core = self.annulus.shared_vertices(self.core)
        return idx_annulus, idx_core

    def core_to_annulus(self, core_values: NDArray[np.float64], fill: float = 0.0) -> NDArray[np.float64]:
        """Annulus vertex vector carrying core values on Γ₀ (others = fill)."""
        idx_annulus, idx_core = self.interface
        values = np.full(self.annulus.n_vertices, fill, dtype=np.float64)
        values[idx_annulus] = np.asarray(core_values, dtype=np.float64)[idx_core]
        return values

    def annulus_to_core(self, annulus_values: NDArray[np.float64]) -> NDArray[np.float64]:
        """Core vertex vector carrying annulus values on Γ₀ (others = 0)."""
        idx_annulus, idx_core = self.interface
        values = np.zeros(self.core.n_vertices, dtype=np.float64)
        values[idx_core] = np.asarray(annulus_values, dtype=np.float64)[idx_annulus]
        return values


@dataclass(frozen=True, eq=False)
class LimitEntry:
    """
    One limit eigenpair.

    Properties:
    - index: 1-based position in the merged, sorted limit spectrum
    - vector: system vector of the source problem (M-orthonormal)
    - values: vertex values on the source submesh (core or annulus)
    - cluster: 0-based cluster id, multiplicity: cluster size τ
    """

    index: int
    lambda0: float
    source: LimitSource
    dofmap: DofMap
    vector: NDArray[np.float64]
    residual: float
    cluster: int = -1
    multiplicity: int = 1

    @property
    def values(self) -> NDArray[np.float64]:
        return self.dofmap.expand(self.vector)

    @property
    def on_core(self) -> bool:
        return self.source is LimitSource.NEUMANN_CORE


@dataclass(frozen=True, eq=False)
class LimitEigenSet:
    regime: Regime
    meshes: LimitMeshes
    entries: tuple[LimitEntry, ...]
    rtol_cluster: float

    @property
    def values(self) -> NDArray[np.float64]:
        return np.array([e.lambda0 for e in self.entries], dtype=np.float64)

    def clusters(self) -> list[list[LimitEntry]]:
        groups: dict[int, list[LimitEntry]] = {}
        for entry in self.entries:
            groups.setdefault(entry.cluster, []).append(entry)
        return [groups[k] for k in sorted(groups)]

    def cluster_of(self, entry: LimitEntry) -> list[LimitEntry]:
        return [e for e in self.entries if e.cluster == entry.cluster]

    def mesh_of(self, entry: LimitEntry) -> Mesh:
        return self.meshes.core if entry.on_core else self.meshes.annulus


def _solve(
    mesh: Mesh,
    mode: DofMode,
    source: LimitSource,
    options: SolverOptions,
    trace_mass: float = 0.0,
) -> list[LimitEntry]:
    dofmap = DofMap.build(mesh, mode)
    unit = CoefficientField.uniform()
    stiffness = assemble_stiffness(mesh, dofmap, unit)
    mass = assemble_mass(mesh, dofmap, unit)
    if trace_mass:
        # ModifiedConstantTrace: the core contributes |Ω₀|·ū·φ̄ to the mass form
        mass = mass.with_diagonal_added(dofmap.trace_dof, trace_mass)
    nev = min(options.nev, stiffness.n)
    pairs = solve_gevp(stiffness, mass, options.with_nev(nev))
    logger.debug(
        "%s limit problem: %d dofs, λ⁰ = %s", source.value, stiffness.n, [round(p.lam, 8) for p in pairs]
    )
    return [
        LimitEntry(index=0, lambda0=p.lam, source=source, dofmap=dofmap, vector=p.vector, residual=p.residual)
        for p in pairs
    ]


def solve_limit_spectrum(
    regime: Regime,
    meshes: LimitMeshes,
    nev: int,
    *,
    options: SolverOptions | None = None,
    rtol_cluster: float = DEFAULT_RTOL_CLUSTER,
) -> LimitEigenSet:
    """
    Limit spectrum of the regime, sorted and clustered.

    - MSmall: mixed annulus problem (Dirichlet on Γ₀, Neumann on Γ₁)
    - MNeg: constant trace on Γ₀ in the annulus
    - MZero: constant trace with the extra mass |Ω₀| on the trace
    - MHalf: union of Neumann core and mixed annulus spectra (nev each)
    - MLarge: Neumann core problem
    """
    options = (options or SolverOptions()).with_nev(nev)
    match regime:
        case Regime.MSMALL:
            entries = _solve(meshes.annulus, DofMode.DIRICHLET_ON_GAMMA0, LimitSource.MIXED_ANNULUS, options)
        case Regime.MNEG:
            entries = _solve(
                meshes.annulus, DofMode.CONSTANT_TRACE_ON_GAMMA0, LimitSource.CONSTANT_TRACE_ANNULUS, options
            )
        case Regime.MZERO:
            entries = _solve(
                meshes.annulus,
                DofMode.CONSTANT_TRACE_ON_GAMMA0,
                LimitSource.MODIFIED_CONSTANT_TRACE,
                options,
                trace_mass=meshes.core_area,
            )
        case Regime.MHALF:
            entries = _solve(meshes.core, DofMode.FREE, LimitSource.NEUMANN_CORE, options) + _solve(
                meshes.annulus, DofMode.DIRICHLET_ON_GAMMA0, LimitSource.MIXED_ANNULUS, options
            )
        case Regime.MLARGE:
            entries = _solve(meshes.core, DofMode.FREE, LimitSource.NEUMANN_CORE, options)

    entries.sort(key=lambda e: e.lambda0)
    clusters = cluster_eigenvalues([e.lambda0 for e in entries], rtol_cluster)
    labelled: list[LimitEntry] = []
    for cluster_id, members in enumerate(clusters):
        for i in members:
            labelled.append(
                replace(entries[i], index=len(labelled) + 1, cluster=cluster_id, multiplicity=len(members))
            )
    logger.info(
        "Limit spectrum (%s): %d values in %d clusters", regime.value, len(labelled), len(clusters)
    )
    return LimitEigenSet(regime=regime, meshes=meshes, entries=tuple(labelled), rtol_cluster=rtol_cluster)
