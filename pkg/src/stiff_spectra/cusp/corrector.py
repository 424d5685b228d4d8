"""
First cusp corrector 𝒰₁ of the constant-trace mixed problem.

In the stretched coordinate η = (x₂ − H₁ᵖ)/Hᵖ the corrector solves

    −U″(η)/Hᵖ(x₁)² = λc₀,  U′(0) = 0,  U(1) = 0,

whose solution is (λc₀Hᵖ²/2)(1 − η²), or in the chart coordinates
−(λc₀/2)[(x₂ − H₁ᵖ(x₁))² − Hᵖ(x₁)²].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from stiff_spectra.asymptotics.oracle import cusp_corrector_ode
from stiff_spectra.geometry.cusp_chart import CuspGeometry, principal_heights


def compute_U1(geom: CuspGeometry, lam: float, c0: float, x: tuple[float, float]) -> float:
    """
    𝒰₁(x) for a point x = (x1, x2) of the cusp chart.

    Raises:
        OutOfChartError: |x1| >= R0
    """
    return float(corrector_values(geom, lam, c0, np.array([x], dtype=np.float64))[0])


def corrector_values(geom: CuspGeometry, lam: float, c0: float, points: ArrayLike) -> NDArray[np.float64]:
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    x1, x2 = pts[:, 0], pts[:, 1]
    geom.check_chart(x1)
    _, h1p = principal_heights(geom, x1)
    hp = geom.curvature_gap * x1**2
    return -0.5 * lam * c0 * ((x2 - h1p) ** 2 - hp**2)


def corrector_eta(geom: CuspGeometry, lam: float, c0: float, x1: ArrayLike, eta: ArrayLike) -> NDArray[np.float64]:
    x1 = np.asarray(x1, dtype=np.float64)
    geom.check_chart(x1)
    hp = geom.curvature_gap * x1**2
    return 0.5 * lam * c0 * hp**2 * (1.0 - np.asarray(eta, dtype=np.float64) ** 2)


def corrector_eta_derivative(
    geom: CuspGeometry, lam: float, c0: float, x1: ArrayLike, eta: ArrayLike
) -> NDArray[np.float64]:
    """∂𝒰₁/∂η"""
    x1 = np.asarray(x1, dtype=np.float64)
    geom.check_chart(x1)
    hp = geom.curvature_gap * x1**2
    return -lam * c0 * hp**2 * np.asarray(eta, dtype=np.float64)


def corrector_x2_second_derivative(lam: float, c0: float) -> float:
    """∂²𝒰₁/∂x₂², constant in the whole chart."""
    return -lam * c0


def pde_residual(geom: CuspGeometry, lam: float, c0: float, x1: ArrayLike, eta: ArrayLike) -> NDArray[np.float64]:
    """
    −Δ(c₀ + 𝒰₁) − λ(c₀ + 𝒰₁) at x₂ = H₁ᵖ + ηHᵖ. The x₂-part cancels λc₀
    exactly, leaving −∂²𝒰₁/∂x₁² − λ𝒰₁, which is O(λc₀|x₁|²).
    """
    x1 = np.asarray(x1, dtype=np.float64)
    geom.check_chart(x1)
    a1 = 1.0 / (2.0 * geom.R1)
    a = geom.curvature_gap
    s = np.asarray(eta, dtype=np.float64) * a * x1**2
    d11 = -0.5 * lam * c0 * (8.0 * a1**2 * x1**2 - 4.0 * a1 * s - 12.0 * a**2 * x1**2)
    return -d11 - lam * corrector_eta(geom, lam, c0, x1, eta)


@dataclass(frozen=True)
class CorrectorCheck:
    """
    Conditions of the η-problem at one station x1:
    value at η = 1, derivative at η = 0 and the largest deviation from a
    collocation solve of the ODE.
    """

    x1: float
    value_at_top: float
    slope_at_bottom: float
    ode_deviation: float
    scale: float

    def passed(self, rtol: float = 1e-8) -> bool:
        limit = rtol * max(self.scale, np.finfo(np.float64).tiny)
        return (
            abs(self.value_at_top) <= limit
            and abs(self.slope_at_bottom) <= limit
            and self.ode_deviation <= limit
        )


def check_corrector(geom: CuspGeometry, lam: float, c0: float, x1: float, samples: int = 21) -> CorrectorCheck:
    eta = np.linspace(0.0, 1.0, samples)
    hp = geom.curvature_gap * x1**2
    closed = corrector_eta(geom, lam, c0, x1, eta)
    ode = cusp_corrector_ode(hp, lam, c0, eta)
    return CorrectorCheck(
        x1=float(x1),
        value_at_top=float(corrector_eta(geom, lam, c0, x1, 1.0)),
        slope_at_bottom=float(corrector_eta_derivative(geom, lam, c0, x1, 0.0)),
        ode_deviation=float(np.max(np.abs(closed - ode))),
        scale=float(abs(lam * c0) * hp**2),
    )
