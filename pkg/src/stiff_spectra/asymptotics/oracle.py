"""
Closed-form and root-finding references for disks, concentric annuli and
the cusp corrector. Shared by the test suite and by users checking a mesh.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import integrate, optimize, special

_SCAN_STEP = 0.01


def _scan_roots(f: Callable[[float], float], start: float, count: int, step: float = _SCAN_STEP) -> list[float]:
    """First `count` sign changes of f on [start, ∞), refined by Brent's method."""
    roots: list[float] = []
    a, fa = start, f(start)
    while len(roots) < count:
        b = a + step
        fb = f(b)
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0:
            roots.append(optimize.brentq(f, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps))
        a, fa = b, fb
    return roots


def bessel_derivative_roots(order: int, count: int) -> list[float]:
    """Positive roots j′_{order,k} of J′_order, k = 1..count."""
    return _scan_roots(lambda x: float(special.jvp(order, x)), 1e-3, count)


def neumann_disk_eigenvalue(order: int, k: int, radius: float) -> float:
    """(j′_{order,k}/radius)², the k-th nonzero Neumann eigenvalue with angular order `order`."""
    return (bessel_derivative_roots(order, k)[-1] / radius) ** 2


def _cross_product(order: int, r0: float, r1: float) -> Callable[[float], float]:
    def f(k: float) -> float:
        return float(
            special.jv(order, k * r0) * special.yvp(order, k * r1) - special.yv(order, k * r0) * special.jvp(order, k * r1)
        )

    return f


def annulus_mixed_roots(order: int, r0: float, r1: float, count: int) -> list[float]:
    """
    Roots k of J_n(k r0) Y′_n(k r1) − Y_n(k r0) J′_n(k r1): the mixed problem
    on r0 < r < r1 (Dirichlet at r0, Neumann at r1) has eigenvalues k².
    """
    return _scan_roots(_cross_product(order, r0, r1), _SCAN_STEP, count)


def annulus_mixed_mode(order: int, k: float, r0: float, r1: float) -> tuple[Callable[[ArrayLike], NDArray[np.float64]], Callable[[ArrayLike], NDArray[np.float64]]]:
    """
    Radial factor R and its derivative R′ of the mixed eigenfunction
    R(r)·cos(order·θ), normalized to unit L² norm over the annulus and with
    R′(r0) > 0.
    """
    j0, y0 = special.jv(order, k * r0), special.yv(order, k * r0)

    def raw(r: ArrayLike) -> NDArray[np.float64]:
        r = np.asarray(r, dtype=np.float64)
        return special.jv(order, k * r) * y0 - special.yv(order, k * r) * j0

    def raw_derivative(r: ArrayLike) -> NDArray[np.float64]:
        r = np.asarray(r, dtype=np.float64)
        return k * (special.jvp(order, k * r) * y0 - special.yvp(order, k * r) * j0)

    angular = 2.0 * math.pi if order == 0 else math.pi
    norm2, _ = integrate.quad(lambda r: float(raw(r)) ** 2 * r, r0, r1, epsabs=1e-14, epsrel=1e-13, limit=200)
    scale = math.copysign(1.0 / math.sqrt(angular * norm2), float(raw_derivative(r0)))
    return (lambda r: scale * raw(r)), (lambda r: scale * raw_derivative(r))


def radial_mixed_flux(k: float, r0: float, r1: float) -> float:
    """
    ∫_{Γ₀} ∂_{ν₀}u ds of the normalized radial mixed eigenfunction, ν₀ = −r̂
    (from the annulus into the core).
    """
    _, derivative = annulus_mixed_mode(0, k, r0, r1)
    return float(-2.0 * math.pi * r0 * derivative(r0))


def radial_c0(k: float, r0: float, r1: float) -> float:
    """c₀ = F/(λ⁰|Ω₀|) for the radial mode, λ⁰ = k²."""
    return radial_mixed_flux(k, r0, r1) / (k**2 * math.pi * r0**2)


def radial_core_correction(r0: float, load: float) -> tuple[Callable[[ArrayLike], NDArray[np.float64]], float]:
    """
    Mean-zero radial solution of u″ + u′/r = −load on the disk r < r0.

    Returns:
        (u(r), g) where g = u′(r0) = −load·r0/2 is the only compatible
        Neumann datum
    """

    def u(r: ArrayLike) -> NDArray[np.float64]:
        r = np.asarray(r, dtype=np.float64)
        return -load * r**2 / 4.0 + load * r0**2 / 8.0

    return u, -load * r0 / 2.0


def harmonic_extension_cos(r0: float, r1: float) -> tuple[float, float]:
    """(A, B) of (A r + B/r) cos θ with value cos θ at r0 and zero radial derivative at r1."""
    a, b = np.linalg.solve(np.array([[r0, 1.0 / r0], [1.0, -1.0 / r1**2]]), np.array([1.0, 0.0]))
    return float(a), float(b)


def harmonic_extension_cos_values(points: ArrayLike, r0: float, r1: float) -> NDArray[np.float64]:
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    a, b = harmonic_extension_cos(r0, r1)
    r = np.hypot(pts[:, 0], pts[:, 1])
    return (a * r + b / r) * (pts[:, 0] / r)


def cusp_corrector_ode(hp: float, lam: float, c0: float, eta: ArrayLike) -> NDArray[np.float64]:
    """
    Numerical solution of −U″(η)/Hp² = λc₀ with U′(0) = 0 and U(1) = 0 by a
    collocation boundary-value solve.
    """
    mesh = np.linspace(0.0, 1.0, 11)
    guess = np.zeros((2, mesh.size))

    def rhs(_: NDArray[np.float64], y: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.vstack([y[1], -lam * c0 * hp**2 * np.ones_like(y[0])])

    def bc(ya: NDArray[np.float64], yb: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.array([ya[1], yb[0]])

    solution = integrate.solve_bvp(rhs, bc, mesh, guess, tol=1e-12)
    return np.asarray(solution.sol(np.asarray(eta, dtype=np.float64))[0], dtype=np.float64)


def divergence_integral_principal(c0: float, curvature_gap: float, delta: float, upper: float = 1.0 / 3.0) -> float:
    """
    2c₀²∫_δ^upper Hp⁻² dx₁ with Hp = a·x₁², a = ½(1/R0 − 1/R1):
    2c₀²(δ⁻³ − upper⁻³)/(3a²).
    """
    if delta >= upper:
        return 0.0
    return 2.0 * c0**2 * (delta**-3 - upper**-3) / (3.0 * curvature_gap**2)
