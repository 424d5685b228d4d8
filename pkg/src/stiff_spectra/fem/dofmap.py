from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from stiff_spectra.fem.enum import DofMode
from stiff_spectra.fem.error import DimensionMismatchError, DofMapError
from stiff_spectra.geometry.enum import BoundaryTag
from stiff_spectra.meshing.mesh import Mesh


@dataclass(frozen=True, eq=False)
class DofMap:
    """
    DofMap (mesh vertices -> system indices)

    - FREE: every vertex is a degree of freedom
    - DIRICHLET_ON_GAMMA0 / DIRICHLET_ON_GAMMA1: vertices of the tagged circle
      are eliminated (index -1) and carry a stored boundary value
    - CONSTANT_TRACE_ON_GAMMA0: all Γ₀ vertices share the last system index
    """

    mode: DofMode
    index: NDArray[np.int64]
    n_dofs: int
    fixed_values: NDArray[np.float64]

    @classmethod
    def build(cls, mesh: Mesh, mode: DofMode, boundary_values: float | ArrayLike = 0.0) -> DofMap:
        """
        Args:
            mesh: mesh the map is built on
            mode: constraint mode
            boundary_values: Dirichlet data, scalar or per-vertex array (only
                the values of eliminated vertices are used)
        """
        n = mesh.n_vertices
        index = np.arange(n, dtype=np.int64)
        fixed_values = np.zeros(n, dtype=np.float64)
        if mode is DofMode.FREE:
            return cls(mode=mode, index=index, n_dofs=n, fixed_values=fixed_values)

        tag = BoundaryTag.GAMMA1 if mode is DofMode.DIRICHLET_ON_GAMMA1 else BoundaryTag.GAMMA0
        constrained = mesh.boundary_vertices(tag)
        if constrained.size == 0:
            raise DofMapError(mode.value, f"mesh has no {tag.name} vertices")

        free = np.ones(n, dtype=bool)
        free[constrained] = False
        index = np.full(n, -1, dtype=np.int64)
        index[free] = np.arange(int(free.sum()), dtype=np.int64)
        n_free = int(free.sum())

        if mode is DofMode.CONSTANT_TRACE_ON_GAMMA0:
            index[constrained] = n_free
            return cls(mode=mode, index=index, n_dofs=n_free + 1, fixed_values=fixed_values)

        values = np.broadcast_to(np.asarray(boundary_values, dtype=np.float64), (n,))
        fixed_values[constrained] = values[constrained]
        return cls(mode=mode, index=index, n_dofs=n_free, fixed_values=fixed_values)

    @property
    def n_vertices(self) -> int:
        return int(self.index.shape[0])

    @property
    def free_vertices(self) -> NDArray[np.int64]:
        return np.nonzero(self.index >= 0)[0]

    @property
    def fixed_vertices(self) -> NDArray[np.int64]:
        return np.nonzero(self.index < 0)[0]

    @property
    def trace_dof(self) -> int:
        if self.mode is not DofMode.CONSTANT_TRACE_ON_GAMMA0:
            raise DofMapError(self.mode.value, "only constant-trace maps have a trace dof")
        return self.n_dofs - 1

    def expand(self, x: ArrayLike) -> NDArray[np.float64]:
        """System vector -> per-vertex values (fixed vertices get their stored value)."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape[0] != self.n_dofs:
            raise DimensionMismatchError("system vector", self.n_dofs, x.shape[0])
        values = self.fixed_values.copy()
        active = self.index >= 0
        values[active] = x[self.index[active]]
        return values

    def restrict(self, values: ArrayLike) -> NDArray[np.float64]:
        """Per-vertex values -> system vector (grouped dofs take any member's value)."""
        values = np.asarray(values, dtype=np.float64)
        if values.shape[0] != self.n_vertices:
            raise DimensionMismatchError("vertex vector", self.n_vertices, values.shape[0])
        x = np.zeros(self.n_dofs, dtype=np.float64)
        active = self.index >= 0
        x[self.index[active]] = values[active]
        return x
