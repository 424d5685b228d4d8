from .core_problems import (
    compute_c0,
    flux_integral,
    harmonic_extension,
    solve_correction_core,
    trace_constant,
)
from .correction import (
    ClusterMatrix,
    ClusterMatrixKind,
    CorrectionFields,
    CorrectionLabel,
    CorrectionResult,
    MZeroFormula,
    compute_correction_fields,
    lambda_prime,
)
from .limit import LimitEigenSet, LimitEntry, LimitMeshes, LimitSource, solve_limit_spectrum
from .predict import Prediction, Predictor, predict
from .regime import Exponents, Regime, classify_regime, exponents

__all__ = [
    "ClusterMatrix",
    "ClusterMatrixKind",
    "CorrectionFields",
    "CorrectionLabel",
    "CorrectionResult",
    "Exponents",
    "LimitEigenSet",
    "LimitEntry",
    "LimitMeshes",
    "LimitSource",
    "MZeroFormula",
    "Prediction",
    "Predictor",
    "Regime",
    "classify_regime",
    "compute_c0",
    "compute_correction_fields",
    "exponents",
    "flux_integral",
    "harmonic_extension",
    "lambda_prime",
    "predict",
    "solve_correction_core",
    "solve_limit_spectrum",
    "trace_constant",
]
