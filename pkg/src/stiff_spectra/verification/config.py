from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from stiff_spectra.asymptotics.correction import MZeroFormula
from stiff_spectra.asymptotics.limit import DEFAULT_RTOL_CLUSTER
from stiff_spectra.eigensolver.options import SolverOptions
from stiff_spectra.geometry.domain import DomainSpec
from stiff_spectra.geometry.enum import DomainKind
from stiff_spectra.meshing.mesh import GradingSpec
from stiff_spectra.verification.error import SweepConfigError

MIN_EPS_POINTS = 4


def _default_eps() -> list[float]:
    return [0.1, 0.05, 0.025, 0.0125]


def _default_geometry() -> DomainSpec:
    return DomainSpec.concentric(0.5, 1.0)


@dataclass(kw_only=True)
class SweepConfig:
    """
    ε-sweep of the full stiff problem.

    Properties:
    - m: density exponent
    - eps_list: strictly decreasing ε values (at least 4)
    - mesh_h / mesh_h2: mesh sizes; with mesh_h2 eigenvalues and predictions are
      Richardson-extrapolated from the coarse to the fine mesh
    - nev: number of eigenvalues per ε
    - rtol_cluster: relative tolerance of limit clusters and of matching
    - workers: ε-points solved in parallel threads when > 1
    - check_indices: indices deciding pass/fail (None = all)
    """

    m: float = 0.25
    eps_list: list[float] = field(default_factory=_default_eps)
    mesh_h: float = 0.1
    mesh_h2: float | None = None
    nev: int = 4
    geometry: DomainSpec = field(default_factory=_default_geometry)
    rtol_cluster: float = DEFAULT_RTOL_CLUSTER
    solver: SolverOptions = field(default_factory=SolverOptions)
    grading: GradingSpec | None = None
    formula: MZeroFormula = MZeroFormula.DERIVED
    seed: int = 0
    workers: int = 1
    check_indices: list[int] | None = None
    slope_slack: float = 0.15
    min_r_squared: float = 0.98
    leading_slack: float = 0.1

    def validate(self) -> None:
        """
        Raises:
            SweepConfigError: naming the first invalid field
        """
        if not math.isfinite(self.m):
            raise SweepConfigError("m", self.m, "must be finite")
        if len(self.eps_list) < MIN_EPS_POINTS:
            raise SweepConfigError("eps_list", self.eps_list, f"needs at least {MIN_EPS_POINTS} values")
        if any(not (0 < e < math.inf) for e in self.eps_list):
            raise SweepConfigError("eps_list", self.eps_list, "values must be positive")
        if any(b >= a for a, b in zip(self.eps_list, self.eps_list[1:])):
            raise SweepConfigError("eps_list", self.eps_list, "must be strictly decreasing")
        if not self.mesh_h > 0:
            raise SweepConfigError("mesh_h", self.mesh_h, "must be positive")
        if self.mesh_h2 is not None and not (self.mesh_h2 > 0 and self.mesh_h2 != self.mesh_h):
            raise SweepConfigError("mesh_h2", self.mesh_h2, "must be positive and differ from mesh_h")
        if self.nev < 1:
            raise SweepConfigError("nev", self.nev, "must be at least 1")
        if not self.rtol_cluster > 0:
            raise SweepConfigError("rtol_cluster", self.rtol_cluster, "must be positive")
        if self.workers < 1:
            raise SweepConfigError("workers", self.workers, "must be at least 1")
        if self.geometry.kind is DomainKind.KISSING and (self.grading is None or self.grading.delta_trunc <= 0):
            raise SweepConfigError("grading", self.grading, "kissing geometry needs delta_trunc > 0")
        if self.check_indices is not None and any(not 1 <= n <= self.nev for n in self.check_indices):
            raise SweepConfigError("check_indices", self.check_indices, f"indices must lie in 1..{self.nev}")

    @property
    def mesh_sizes(self) -> tuple[float, float | None]:
        """(fine, coarse); coarse is None without Richardson."""
        if self.mesh_h2 is None:
            return self.mesh_h, None
        return min(self.mesh_h, self.mesh_h2), max(self.mesh_h, self.mesh_h2)

    def gates(self, n: int) -> bool:
        return self.check_indices is None or n in self.check_indices

    @classmethod
    def from_dict(cls, dict: dict[str, Any] | None = None) -> SweepConfig:
        if dict is None:
            dict = {}

        grading = dict.get("grading")
        check_indices = dict.get("check_indices")
        return cls(
            m=float(dict.get("m", 0.25)),
            eps_list=[float(e) for e in dict.get("eps_list", _default_eps())],
            mesh_h=float(dict.get("mesh_h", 0.1)),
            mesh_h2=None if dict.get("mesh_h2") is None else float(dict["mesh_h2"]),
            nev=int(dict.get("nev", 4)),
            geometry=DomainSpec.from_dict(dict.get("geometry", {})),
            rtol_cluster=float(dict.get("rtol_cluster", DEFAULT_RTOL_CLUSTER)),
            solver=SolverOptions.from_dict(dict.get("solver")),
            grading=None if grading is None else GradingSpec.from_dict(grading),
            formula=MZeroFormula(dict.get("formula", MZeroFormula.DERIVED.value)),
            seed=int(dict.get("seed", 0)),
            workers=int(dict.get("workers", 1)),
            check_indices=None if check_indices is None else [int(n) for n in check_indices],
            slope_slack=float(dict.get("slope_slack", 0.15)),
            min_r_squared=float(dict.get("min_r_squared", 0.98)),
            leading_slack=float(dict.get("leading_slack", 0.1)),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "eps_list": list(self.eps_list),
            "mesh_h": self.mesh_h,
            "mesh_h2": self.mesh_h2,
            "nev": self.nev,
            "geometry": self.geometry.to_dict(),
            "rtol_cluster": self.rtol_cluster,
            "solver": {
                "nev": self.solver.nev,
                "shift": self.solver.shift,
                "tol": self.solver.tol,
                "max_iter": self.solver.max_iter,
                "dense_fallback_threshold": self.solver.dense_fallback_threshold,
                "seed": self.solver.seed,
            },
            "grading": None
            if self.grading is None
            else {
                "delta_trunc": self.grading.delta_trunc,
                "ratio": self.grading.ratio,
                "n_across": self.grading.n_across,
            },
            "formula": self.formula.value,
            "seed": self.seed,
            "workers": self.workers,
            "check_indices": self.check_indices,
            "slope_slack": self.slope_slack,
            "min_r_squared": self.min_r_squared,
            "leading_slack": self.leading_slack,
        }
