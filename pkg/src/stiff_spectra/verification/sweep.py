from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from stiff_spectra.asymptotics.correction import CorrectionLabel
from stiff_spectra.asymptotics.limit import LimitMeshes
from stiff_spectra.asymptotics.predict import Prediction, Predictor
from stiff_spectra.asymptotics.regime import Exponents, Regime, classify_regime, exponents
from stiff_spectra.eigensolver.solver import solve_gevp
from stiff_spectra.fem.assembly import assemble_mass, assemble_stiffness
from stiff_spectra.fem.coefficient import CoefficientField
from stiff_spectra.fem.dofmap import DofMap
from stiff_spectra.fem.enum import DofMode
from stiff_spectra.geometry.domain import build_domain
from stiff_spectra.meshing.generator import generate_mesh
from stiff_spectra.meshing.mesh import Mesh
from stiff_spectra.verification.config import SweepConfig
from stiff_spectra.verification.error import DegenerateFitError, MatchingAmbiguityError
from stiff_spectra.verification.rates import (
    RateFit,
    discretization_error,
    fit_correction,
    fit_rate,
    richardson,
)

logger = logging.getLogger(__name__)

FLOOR_FACTOR = 10.0


class Status(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIP = "SKIP"


@dataclass(frozen=True, eq=False)
class IndexSeries:
    """
    IndexSeries (one eigenvalue index across the ε ladder)

    Properties:
    - lambda_eps: discrete λᵋ_n (Richardson-extrapolated when two meshes are used)
    - lambda_hat: matched prediction λ̂ᵋ_n
    - residuals: |λᵋ_n − λ̂ᵋ_n|
    - floor: 10·(tol·max(1, |λᵋ|) + discretization error); points at or below are not fitted
    - fit: rate of the residuals (None when fewer than 3 points clear the floor)
    - leading_fit: slope of λᵋ_n itself, checked against α when α ≠ 0
    """

    n: int
    prediction: Prediction
    eps: NDArray[np.float64]
    lambda_eps: NDArray[np.float64]
    lambda_hat: NDArray[np.float64]
    residuals: NDArray[np.float64]
    floor: NDArray[np.float64]
    used: NDArray[np.bool_]
    fit: RateFit | None
    leading_fit: RateFit | None
    status: Status
    gated: bool

    @property
    def gamma(self) -> float:
        return self.prediction.gamma

    @property
    def rate_only(self) -> bool:
        return self.prediction.label is CorrectionLabel.FIT_ONLY


@dataclass(frozen=True, eq=False)
class ConvergenceReport:
    config: SweepConfig
    regime: Regime
    exponents: Exponents
    series: tuple[IndexSeries, ...]
    sweep_id: str | None = None
    meta: dict[str, str] = field(default_factory=dict)

    @property
    def status(self) -> Status:
        gated = [s for s in self.series if s.gated]
        if any(s.status is Status.FAIL for s in gated):
            return Status.FAIL
        if gated and all(s.status is Status.SKIP for s in gated):
            return Status.SKIP
        return Status.PASS

    @property
    def passed(self) -> bool:
        return self.status is not Status.FAIL


def full_problem_spectrum(mesh: Mesh, m: float, eps: float, config: SweepConfig) -> NDArray[np.float64]:
    """nev smallest eigenvalues of the stiff problem: a = (ε⁻¹, 1), b = (ε^{−2m}, 1), Neumann on Γ₁."""
    dofmap = DofMap.build(mesh, DofMode.FREE)
    stiffness = assemble_stiffness(mesh, dofmap, CoefficientField.stiffness(eps))
    mass = assemble_mass(mesh, dofmap, CoefficientField.mass(eps, m))
    pairs = solve_gevp(stiffness, mass, config.solver.with_nev(config.nev))
    logger.info("Solved eps=%g on %d vertices: λ = %s", eps, mesh.n_vertices, [f"{p.lam:.8g}" for p in pairs])
    return np.array([p.lam for p in pairs], dtype=np.float64)


def _solve_ladder(mesh: Mesh, config: SweepConfig) -> NDArray[np.float64]:
    """(n_eps, nev) eigenvalues, rows in eps_list order whatever the scheduling."""
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(lambda e: full_problem_spectrum(mesh, config.m, e, config), config.eps_list))
    else:
        rows = [full_problem_spectrum(mesh, config.m, e, config) for e in config.eps_list]
    return np.vstack(rows)


def _extrapolate_prediction(fine: Prediction, coarse: Prediction, h_fine: float, h_coarse: float) -> Prediction:
    if len(fine.terms) != len(coarse.terms) or any(a[0] != b[0] for a, b in zip(fine.terms, coarse.terms)):
        return fine
    terms = tuple((e, richardson(c_f, c_c, h_fine, h_coarse)) for (e, c_f), (_, c_c) in zip(fine.terms, coarse.terms))
    lambda_prime = fine.lambda_prime
    if math.isfinite(fine.lambda_prime) and math.isfinite(coarse.lambda_prime):
        lambda_prime = richardson(fine.lambda_prime, coarse.lambda_prime, h_fine, h_coarse)
    return fine.with_coefficients(richardson(fine.lambda0, coarse.lambda0, h_fine, h_coarse), lambda_prime, terms)


def match_predictions(
    eps: float,
    values: NDArray[np.float64],
    predictions: Sequence[Prediction],
    rtol: float,
) -> list[int]:
    """
    Pair the sorted discrete values with the predictions sorted by λ̂ᵋ.
    Returns, for each prediction (input order), the index into `values`.

    Raises:
        MatchingAmbiguityError: a value lies within rtol of λ̂ of two different clusters
    """
    hats = np.array([p.value(eps) for p in predictions])
    for lam in values:
        near = {
            p.cluster
            for p, hat in zip(predictions, hats)
            if abs(lam - hat) <= rtol * max(abs(hat), abs(lam)) and hat != 0.0
        }
        if len(near) > 1:
            raise MatchingAmbiguityError(eps, float(lam), sorted(near))
    value_order = np.argsort(values, kind="stable")
    prediction_order = np.argsort(hats, kind="stable")
    assignment = [0] * len(predictions)
    for p_index, v_index in zip(prediction_order, value_order):
        assignment[int(p_index)] = int(v_index)
    return assignment


def _fit_only_correction(prediction: Prediction, eps: NDArray[np.float64], lam: NDArray[np.float64]) -> Prediction:
    coefficients = fit_correction(eps, lam - prediction.lambda0, (prediction.beta, 1.0))
    logger.info("Index %d: fit-only λ′ estimated as %.6g", prediction.n, coefficients[0])
    return prediction.with_fitted_correction(float(coefficients[0]))


def _status(series_fit: RateFit | None, leading_fit: RateFit | None, prediction: Prediction, config: SweepConfig) -> Status:
    if series_fit is None:
        return Status.SKIP
    if series_fit.slope < prediction.gamma - config.slope_slack or series_fit.r_squared < config.min_r_squared:
        return Status.FAIL
    if leading_fit is not None and abs(leading_fit.slope - prediction.alpha) > config.leading_slack:
        return Status.FAIL
    return Status.PASS


def build_series(
    config: SweepConfig,
    predictions: Sequence[Prediction],
    values: NDArray[np.float64],
    errors: NDArray[np.float64],
) -> tuple[IndexSeries, ...]:
    """
    Match, compute residuals and fit rates.

    Args:
        values: (n_eps, nev) discrete eigenvalues
        errors: (n_eps, nev) discretization error estimates (zeros without Richardson)
    """
    eps = np.asarray(config.eps_list, dtype=np.float64)
    assignments = [match_predictions(e, values[i], predictions, config.rtol_cluster) for i, e in enumerate(eps)]
    tol = config.solver.tol

    series = []
    for k, prediction in enumerate(predictions):
        columns = [assignments[i][k] for i in range(eps.size)]
        lam = values[np.arange(eps.size), columns]
        err = errors[np.arange(eps.size), columns]
        if prediction.label is CorrectionLabel.FIT_ONLY:
            prediction = _fit_only_correction(prediction, eps, lam)
        hat = np.array([prediction.value(e) for e in eps])
        residuals = np.abs(lam - hat)
        floor = FLOOR_FACTOR * (tol * np.maximum(1.0, np.abs(lam)) + err)
        used = residuals > floor
        try:
            fit = fit_rate(list(zip(eps[used], residuals[used])))
        except DegenerateFitError:
            logger.info("Index %d: %d of %d residuals above the floor, no rate fit", prediction.n, used.sum(), eps.size)
            fit = None

        leading = None
        if prediction.alpha != 0 and prediction.lambda0 != 0 and np.all(lam > floor):
            leading = fit_rate(list(zip(eps, lam)))

        status = _status(fit, leading, prediction, config)
        series.append(
            IndexSeries(
                n=prediction.n,
                prediction=prediction,
                eps=eps,
                lambda_eps=lam,
                lambda_hat=hat,
                residuals=residuals,
                floor=floor,
                used=used,
                fit=fit,
                leading_fit=leading,
                status=status,
                gated=config.gates(prediction.n),
            )
        )
        logger.info(
            "Index %d: slope=%s (γ=%.3g) %s",
            prediction.n,
            "n/a" if fit is None else f"{fit.slope:.4f}",
            prediction.gamma,
            status.value,
        )
    return tuple(series)


def run_sweep(config: SweepConfig) -> ConvergenceReport:
    """
    ε-sweep of the stiff problem against the two-term asymptotics.

    Raises:
        SweepConfigError: invalid configuration
        MatchingAmbiguityError: ambiguous assignment of a discrete eigenvalue
    """
    config.validate()
    domain = build_domain(config.geometry)
    h_fine, h_coarse = config.mesh_sizes

    def spectra(h: float) -> tuple[list[Prediction], NDArray[np.float64]]:
        mesh = generate_mesh(domain, h, config.grading, seed=config.seed)
        predictor = Predictor(
            config.m,
            LimitMeshes.from_mesh(mesh),
            config.nev,
            options=config.solver,
            rtol_cluster=config.rtol_cluster,
            formula=config.formula,
        )
        return predictor.predictions(config.nev), _solve_ladder(mesh, config)

    predictions, values = spectra(h_fine)
    errors = np.zeros_like(values)
    if h_coarse is not None:
        coarse_predictions, coarse_values = spectra(h_coarse)
        extrapolated = richardson(values, coarse_values, h_fine, h_coarse)
        errors = np.vectorize(discretization_error)(values, coarse_values, h_fine, h_coarse)
        values = extrapolated
        predictions = [
            _extrapolate_prediction(f, c, h_fine, h_coarse) for f, c in zip(predictions, coarse_predictions)
        ]

    report = ConvergenceReport(
        config=config,
        regime=classify_regime(config.m),
        exponents=exponents(config.m),
        series=build_series(config, predictions, values, errors),
    )
    logger.info("Sweep m=%g (%s): %s", config.m, report.regime.value, report.status.value)
    return report
