from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from stiff_spectra.cusp.corrector import check_corrector, pde_residual
from stiff_spectra.cusp.decay import (
    DecayFit,
    DecayModel,
    DivergenceCheck,
    ThicknessKind,
    dirichlet_exterior_divergence_check,
    fit_decay,
)
from stiff_spectra.cusp.error import CuspStudyConfigError
from stiff_spectra.cusp.mesh import build_kissing_mesh
from stiff_spectra.cusp.problem import CuspBoundaryCondition, CuspSolution, solve_cusp_problem
from stiff_spectra.cusp.profile import CuspProfile, band_mass_profile, ladder, midline_profile
from stiff_spectra.eigensolver.options import SolverOptions
from stiff_spectra.geometry.cusp_chart import CuspGeometry
from stiff_spectra.meshing.mesh import GradingSpec, Mesh
from stiff_spectra.verification.sweep import Status

logger = logging.getLogger(__name__)

POWER_EXPONENT_RANGE = (3.5, 4.5)
PDE_RESIDUAL_ORDER = 2.0
DIVERGENCE_EXPONENT = 3.0


def _default_divergence_deltas() -> list[float]:
    return [0.05, 0.025, 0.0125, 0.00625, 0.003125]


@dataclass(kw_only=True)
class CuspStudyConfig:
    """
    Kissing-disk study.

    Properties:
    - r0 / r1: core and outer radii
    - h / delta_trunc / ratio / n_across: mesh size, truncation and grading
    - c0 / lam: data of the constant-trace problem
    - neumann_points: ladder points in [2·delta_trunc, r0/4]
    - dirichlet_upper / dirichlet_lower / dirichlet_points: ladder of the
      Dirichlet eigenfunction profile
    - divergence_deltas: strictly decreasing δ of the divergence check
    - workers: the δ and δ/2 problems are solved in parallel threads when > 1
    """

    r0: float = 0.5
    r1: float = 1.0
    h: float = 0.05
    delta_trunc: float = 0.02
    ratio: float = 0.5
    n_across: int = 6
    c0: float = 1.0
    lam: float = 1.0
    neumann_points: int = 6
    dirichlet_upper: float = 0.35
    dirichlet_lower: float = 0.15
    dirichlet_points: int = 6
    divergence_deltas: list[float] = field(default_factory=_default_divergence_deltas)
    seed: int = 0
    workers: int = 1
    solver: SolverOptions = field(default_factory=SolverOptions)
    min_r_squared_power: float = 0.98
    min_r_squared_exponential: float = 0.99
    max_eigenvalue_change: float = 0.01
    exponent_slack: float = 0.05
    insensitivity_factor: float = 100.0

    def validate(self) -> None:
        """
        Raises:
            CuspStudyConfigError: naming the first invalid field
        """
        if not 0 < self.r0 < self.r1:
            raise CuspStudyConfigError("r0", self.r0, "must satisfy 0 < r0 < r1")
        if not 0 < self.delta_trunc < self.r0 / 8:
            # the Neumann ladder needs 2·delta_trunc < r0/4
            raise CuspStudyConfigError("delta_trunc", self.delta_trunc, "must lie in (0, r0/8)")
        if not self.h > 0:
            raise CuspStudyConfigError("h", self.h, "must be positive")
        if not self.lam >= 0:
            raise CuspStudyConfigError("lam", self.lam, "must be nonnegative")
        if self.neumann_points < 5:
            raise CuspStudyConfigError("neumann_points", self.neumann_points, "needs at least 5 ladder points")
        if self.dirichlet_points < 5:
            raise CuspStudyConfigError("dirichlet_points", self.dirichlet_points, "needs at least 5 ladder points")
        if not 2 * self.delta_trunc <= self.dirichlet_lower < self.dirichlet_upper < self.r0:
            raise CuspStudyConfigError(
                "dirichlet_lower",
                self.dirichlet_lower,
                "needs 2·delta_trunc <= dirichlet_lower < dirichlet_upper < r0",
            )
        deltas = self.divergence_deltas
        if len(deltas) < 3 or any(b >= a for a, b in zip(deltas, deltas[1:])) or deltas[-1] <= 0:
            raise CuspStudyConfigError("divergence_deltas", deltas, "needs 3 or more strictly decreasing positive values")
        if self.workers < 1:
            raise CuspStudyConfigError("workers", self.workers, "must be at least 1")

    def geometry(self, delta_trunc: float | None = None) -> CuspGeometry:
        return CuspGeometry(R0=self.r0, R1=self.r1, delta_trunc=self.delta_trunc if delta_trunc is None else delta_trunc)

    @property
    def grading(self) -> GradingSpec:
        return GradingSpec(delta_trunc=self.delta_trunc, ratio=self.ratio, n_across=self.n_across)

    @property
    def neumann_ladder(self) -> np.ndarray:
        return ladder(self.r0 / 4, 2 * self.delta_trunc, self.neumann_points)

    @property
    def dirichlet_ladder(self) -> np.ndarray:
        return ladder(self.dirichlet_upper, self.dirichlet_lower, self.dirichlet_points)

    @classmethod
    def from_dict(cls, dict: dict[str, Any] | None = None) -> CuspStudyConfig:
        if dict is None:
            dict = {}

        return cls(
            r0=float(dict.get("r0", 0.5)),
            r1=float(dict.get("r1", 1.0)),
            h=float(dict.get("h", 0.05)),
            delta_trunc=float(dict.get("delta_trunc", 0.02)),
            ratio=float(dict.get("ratio", 0.5)),
            n_across=int(dict.get("n_across", 6)),
            c0=float(dict.get("c0", 1.0)),
            lam=float(dict.get("lam", 1.0)),
            neumann_points=int(dict.get("neumann_points", 6)),
            dirichlet_upper=float(dict.get("dirichlet_upper", 0.35)),
            dirichlet_lower=float(dict.get("dirichlet_lower", 0.15)),
            dirichlet_points=int(dict.get("dirichlet_points", 6)),
            divergence_deltas=[float(d) for d in dict.get("divergence_deltas", _default_divergence_deltas())],
            seed=int(dict.get("seed", 0)),
            workers=int(dict.get("workers", 1)),
            solver=SolverOptions.from_dict(dict.get("solver")),
            min_r_squared_power=float(dict.get("min_r_squared_power", 0.98)),
            min_r_squared_exponential=float(dict.get("min_r_squared_exponential", 0.99)),
            max_eigenvalue_change=float(dict.get("max_eigenvalue_change", 0.01)),
            exponent_slack=float(dict.get("exponent_slack", 0.05)),
            insensitivity_factor=float(dict.get("insensitivity_factor", 100.0)),
        )


@dataclass(frozen=True)
class CuspCheck:
    name: str
    status: Status
    value: float
    target: str


@dataclass(frozen=True, eq=False)
class CuspStudyReport:
    """
    CuspStudyReport (result of run_cusp_study <Value Object>)

    profiles: name -> CuspProfile, fits: name -> DecayFit
    """

    config: CuspStudyConfig
    checks: list[CuspCheck]
    profiles: dict[str, CuspProfile]
    fits: dict[str, DecayFit]
    divergence: DivergenceCheck
    eigenvalues: tuple[float, float]

    @property
    def status(self) -> Status:
        return Status.FAIL if any(c.status is Status.FAIL for c in self.checks) else Status.PASS

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS


@dataclass(frozen=True, eq=False)
class _TruncationRun:
    delta: float
    mesh: Mesh
    constant: CuspSolution
    dirichlet: CuspSolution


def _status(ok: bool) -> Status:
    return Status.PASS if ok else Status.FAIL


def _solve_truncation(config: CuspStudyConfig, delta: float) -> _TruncationRun:
    geom = config.geometry(delta)
    mesh = build_kissing_mesh(geom, config.h, config.grading, seed=config.seed)
    constant = solve_cusp_problem(mesh, CuspBoundaryCondition.constant(config.c0), config.lam, options=config.solver)
    dirichlet = solve_cusp_problem(mesh, CuspBoundaryCondition.zero(), nev=1, options=config.solver)
    return _TruncationRun(delta=delta, mesh=mesh, constant=constant, dirichlet=dirichlet)


def run_cusp_study(config: CuspStudyConfig) -> CuspStudyReport:
    """
    Kissing-disk experiments at delta_trunc and delta_trunc/2: power decay of
    u − c0, the corrector conditions and PDE residual, truncation
    insensitivity, exponential decay of the Dirichlet eigenfunction with
    eigenvalue stability, and the divergence of the extension energy.

    Raises:
        CuspStudyConfigError: invalid configuration
    """
    config.validate()
    deltas = (config.delta_trunc, config.delta_trunc / 2)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=min(config.workers, 2)) as pool:
            run, halved = pool.map(lambda d: _solve_truncation(config, d), deltas)
    else:
        run, halved = (_solve_truncation(config, d) for d in deltas)
    geom = config.geometry()
    checks: list[CuspCheck] = []
    profiles: dict[str, CuspProfile] = {}
    fits: dict[str, DecayFit] = {}

    # constant trace: u − c0 ~ 𝒰₁ = O(|x1|⁴)
    stations = config.neumann_ladder
    excess = midline_profile(run.mesh, geom, run.constant.u, stations).shifted(config.c0)
    profiles["neumann_midline"] = excess
    power = fit_decay(excess, DecayModel.POWER)
    fits["neumann_midline"] = power
    low, high = POWER_EXPONENT_RANGE
    checks.append(
        CuspCheck(
            "neumann_power_decay",
            _status(low <= power.exponent <= high and power.r_squared >= config.min_r_squared_power),
            power.exponent,
            f"[{low:g}, {high:g}], r2 >= {config.min_r_squared_power:g}",
        )
    )

    corrector = [check_corrector(geom, config.lam, config.c0, float(x)) for x in stations]
    worst = max(max(abs(c.value_at_top), abs(c.slope_at_bottom), c.ode_deviation) / max(c.scale, 1e-300) for c in corrector)
    checks.append(CuspCheck("corrector_conditions", _status(all(c.passed() for c in corrector)), worst, "<= 1e-8"))

    if config.lam * config.c0 != 0.0:
        ratio = np.abs(pde_residual(geom, config.lam, config.c0, stations, 0.5)) / abs(config.lam * config.c0)
        residual_profile = CuspProfile(x1=stations, values=ratio)
        profiles["corrector_pde_residual"] = residual_profile
        order = fit_decay(residual_profile, DecayModel.POWER)
        fits["corrector_pde_residual"] = order
        checks.append(
            CuspCheck(
                "corrector_pde_residual",
                _status(order.exponent >= PDE_RESIDUAL_ORDER - 0.15),
                order.exponent,
                f">= {PDE_RESIDUAL_ORDER - 0.15:g}",
            )
        )

    halved_values = midline_profile(halved.mesh, geom, halved.constant.u, stations).values
    change = float(np.max(np.abs(halved_values - (excess.values + config.c0))))
    bound = config.insensitivity_factor * max(config.lam, 1.0) * abs(config.c0) * config.delta_trunc**4
    checks.append(CuspCheck("truncation_insensitivity", _status(change <= bound), change, f"<= {bound:.3e}"))

    # Dirichlet on Γ₀: exponential decay toward the cusp
    d_stations = config.dirichlet_ladder
    eigenfunction = run.dirichlet.u
    midline = midline_profile(run.mesh, geom, eigenfunction, d_stations)
    band = band_mass_profile(run.mesh, geom, eigenfunction, d_stations)
    profiles["dirichlet_midline"] = midline
    profiles["dirichlet_band_mass"] = band
    for name, profile in (("dirichlet_midline", midline), ("dirichlet_band_mass", band)):
        fit = fit_decay(profile, DecayModel.EXPONENTIAL)
        fits[name] = fit
        checks.append(
            CuspCheck(
                f"{name}_exponential_decay",
                _status(fit.exponent < 0 and fit.r_squared >= config.min_r_squared_exponential),
                fit.exponent,
                f"< 0, r2 >= {config.min_r_squared_exponential:g}",
            )
        )

    lam_1, lam_half = run.dirichlet.eigenvalues[0], halved.dirichlet.eigenvalues[0]
    relative = abs(lam_half - lam_1) / abs(lam_1)
    checks.append(
        CuspCheck(
            "dirichlet_eigenvalue_stability",
            _status(relative < config.max_eigenvalue_change),
            relative,
            f"< {config.max_eigenvalue_change:g}",
        )
    )

    divergence = dirichlet_exterior_divergence_check(geom, config.divergence_deltas, config.c0)
    exact = dirichlet_exterior_divergence_check(geom, config.divergence_deltas, config.c0, thickness=ThicknessKind.EXACT)
    checks.append(
        CuspCheck(
            "divergence_exponent",
            _status(abs(divergence.exponent - DIVERGENCE_EXPONENT) <= config.exponent_slack),
            divergence.exponent,
            f"{DIVERGENCE_EXPONENT:g} +/- {config.exponent_slack:g}",
        )
    )
    checks.append(
        CuspCheck(
            "divergence_exponent_exact_thickness",
            Status.SKIP if math.isnan(exact.exponent) else _status(abs(exact.exponent - DIVERGENCE_EXPONENT) <= 0.5),
            exact.exponent,
            f"{DIVERGENCE_EXPONENT:g} +/- 0.5",
        )
    )

    report = CuspStudyReport(
        config=config,
        checks=checks,
        profiles=profiles,
        fits=fits,
        divergence=divergence,
        eigenvalues=(lam_1, lam_half),
    )
    for c in checks:
        logger.info("Cusp check %s: %s (%.6g, target %s)", c.name, c.status.value, c.value, c.target)
    return report
