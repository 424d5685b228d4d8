from .corrector import CorrectorCheck, check_corrector, compute_U1, corrector_values, pde_residual
from .decay import DecayFit, DecayModel, DivergenceCheck, ThicknessKind, dirichlet_exterior_divergence_check, fit_decay
from .mesh import across_thickness_counts, build_kissing_mesh
from .problem import BoundaryConditionKind, CuspBoundaryCondition, CuspSolution, solve_cusp_problem
from .profile import CuspProfile, band_mass_profile, interpolate, ladder, midline_profile
from .report import render_cusp_summary, write_cusp_report
from .study import CuspCheck, CuspStudyConfig, CuspStudyReport, run_cusp_study

__all__ = [
    "BoundaryConditionKind",
    "CorrectorCheck",
    "CuspBoundaryCondition",
    "CuspCheck",
    "CuspProfile",
    "CuspSolution",
    "CuspStudyConfig",
    "CuspStudyReport",
    "DecayFit",
    "DecayModel",
    "DivergenceCheck",
    "ThicknessKind",
    "across_thickness_counts",
    "band_mass_profile",
    "build_kissing_mesh",
    "check_corrector",
    "compute_U1",
    "corrector_values",
    "dirichlet_exterior_divergence_check",
    "fit_decay",
    "interpolate",
    "ladder",
    "midline_profile",
    "pde_residual",
    "render_cusp_summary",
    "run_cusp_study",
    "write_cusp_report",
]
