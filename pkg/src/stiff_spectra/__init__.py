from .asymptotics import (
    LimitMeshes,
    MZeroFormula,
    Prediction,
    Predictor,
    Regime,
    classify_regime,
    compute_c0,
    exponents,
    harmonic_extension,
    lambda_prime,
    predict,
    solve_correction_core,
    solve_limit_spectrum,
)
from .cli import RunConfig, parse_config, run
from .core.error import StiffSpectraException
from .cusp import (
    CuspBoundaryCondition,
    CuspProfile,
    CuspStudyConfig,
    DecayModel,
    build_kissing_mesh,
    compute_U1,
    dirichlet_exterior_divergence_check,
    fit_decay,
    midline_profile,
    run_cusp_study,
    solve_cusp_problem,
)
from .eigensolver import SolverOptions, count_below, solve_gevp
from .fem import (
    CoefficientField,
    DofMap,
    DofMode,
    SparseSymmetricMatrix,
    assemble_mass,
    assemble_stiffness,
    boundary_flux_integral,
)
from .geometry import (
    BoundaryTag,
    CuspGeometry,
    DomainKind,
    DomainSpec,
    RegionTag,
    build_domain,
    classify_point,
    thickness_profiles,
)
from .meshing import GradingSpec, Mesh, generate_mesh, validate_mesh
from .util.json_dumps import json_dumps
from .verification import (
    ConvergenceReport,
    ReportFormat,
    SweepCatalog,
    SweepConfig,
    cluster_eigenvalues,
    emit_report,
    fit_rate,
    run_sweep,
)

__all__ = [
    "BoundaryTag",
    "CoefficientField",
    "ConvergenceReport",
    "CuspBoundaryCondition",
    "CuspGeometry",
    "CuspProfile",
    "CuspStudyConfig",
    "DecayModel",
    "DofMap",
    "DofMode",
    "DomainKind",
    "DomainSpec",
    "GradingSpec",
    "LimitMeshes",
    "MZeroFormula",
    "Mesh",
    "Prediction",
    "Predictor",
    "Regime",
    "ReportFormat",
    "RunConfig",
    "SolverOptions",
    "SparseSymmetricMatrix",
    "StiffSpectraException",
    "SweepCatalog",
    "SweepConfig",
    "assemble_mass",
    "assemble_stiffness",
    "boundary_flux_integral",
    "build_domain",
    "build_kissing_mesh",
    "classify_point",
    "classify_regime",
    "cluster_eigenvalues",
    "compute_U1",
    "compute_c0",
    "count_below",
    "dirichlet_exterior_divergence_check",
    "emit_report",
    "exponents",
    "fit_decay",
    "fit_rate",
    "generate_mesh",
    "harmonic_extension",
    "json_dumps",
    "lambda_prime",
    "midline_profile",
    "parse_config",
    "predict",
    "run",
    "run_cusp_study",
    "run_sweep",
    "solve_correction_core",
    "solve_gevp",
    "solve_limit_spectrum",
    "thickness_profiles",
    "validate_mesh",
]
