from .assembly import assemble_mass, assemble_stiffness
from .coefficient import CoefficientField
from .dofmap import DofMap
from .enum import DofMode
from .functionals import (
    boundary_flux_integral,
    eigen_residual,
    gradient_gram,
    nodal_boundary_load,
    nodal_flux,
    region_integral,
    region_norms,
    vertex_matrices,
)
from .linear import solve_lifted, solve_neumann_mean_zero
from .matrix import SparseSymmetricMatrix

__all__ = [
    "CoefficientField",
    "DofMap",
    "DofMode",
    "SparseSymmetricMatrix",
    "assemble_mass",
    "assemble_stiffness",
    "boundary_flux_integral",
    "eigen_residual",
    "gradient_gram",
    "nodal_boundary_load",
    "nodal_flux",
    "region_integral",
    "region_norms",
    "solve_lifted",
    "solve_neumann_mean_zero",
    "vertex_matrices",
]
