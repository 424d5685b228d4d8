from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from stiff_spectra.fem.dofmap import DofMap
from stiff_spectra.fem.enum import DofMode
from stiff_spectra.fem.error import DimensionMismatchError, DofMapError


def solve_lifted(
    operator: sparse.csr_matrix,
    rhs: ArrayLike,
    dofmap: DofMap,
) -> NDArray[np.float64]:
    """
    Solve A u = f on the free vertices with u fixed to the dofmap's stored
    values on eliminated vertices (row/column removal with right-hand-side lift).

    Args:
        operator: vertex-space matrix (FREE assembly)
        rhs: vertex-space load
        dofmap: Dirichlet map carrying the boundary values

    Returns:
        vertex values of u
    """
    if dofmap.mode is DofMode.CONSTANT_TRACE_ON_GAMMA0:
        raise DofMapError(dofmap.mode.value, "lifted solves need a Dirichlet or free map")
    rhs = np.asarray(rhs, dtype=np.float64)
    if rhs.shape[0] != dofmap.n_vertices:
        raise DimensionMismatchError("load vector", dofmap.n_vertices, rhs.shape[0])
    free = dofmap.free_vertices
    fixed = dofmap.fixed_vertices
    a = operator.tocsr()
    values = dofmap.fixed_values.copy()
    lifted = rhs[free] - a[free][:, fixed] @ values[fixed]
    values[free] = sparse_linalg.spsolve(a[free][:, free].tocsc(), lifted)
    return values


def solve_neumann_mean_zero(
    operator: sparse.csr_matrix,
    mean_weights: ArrayLike,
    rhs: ArrayLike,
) -> NDArray[np.float64]:
    """
    Solve the singular Neumann system K u = f with the side condition
    wᵀu = 0 through a bordered (Lagrange multiplier) system.
    """
    w = np.asarray(mean_weights, dtype=np.float64)
    f = np.asarray(rhs, dtype=np.float64)
    bordered = sparse.bmat(
        [[operator, sparse.csr_matrix(w[:, None])], [sparse.csr_matrix(w[None, :]), None]],
        format="csc",
    )
    solution = sparse_linalg.spsolve(bordered, np.append(f, 0.0))
    return np.asarray(solution[:-1], dtype=np.float64)
