import math

import numpy as np
import pytest
from scipy import integrate, special

from stiff_spectra.asymptotics.oracle import (
    annulus_mixed_mode,
    annulus_mixed_roots,
    bessel_derivative_roots,
    cusp_corrector_ode,
    divergence_integral_principal,
    harmonic_extension_cos,
    harmonic_extension_cos_values,
    neumann_disk_eigenvalue,
    radial_c0,
    radial_core_correction,
    radial_mixed_flux,
)


@pytest.mark.module
@pytest.mark.asymptotics
class TestBesselReferences:
    """bessel_derivative_roots / neumann_disk_eigenvalue. 観点: 既知の値"""

    def test_first_roots(self) -> None:
        assert bessel_derivative_roots(1, 1)[0] == pytest.approx(1.8411837813406593, rel=1e-12)
        assert bessel_derivative_roots(0, 1)[0] == pytest.approx(3.8317059702075125, rel=1e-12)

    def test_neumann_disk(self) -> None:
        assert neumann_disk_eigenvalue(1, 1, 1.0) == pytest.approx(1.8411837813406593**2, rel=1e-12)
        assert neumann_disk_eigenvalue(1, 1, 0.5) == pytest.approx(4 * 1.8411837813406593**2, rel=1e-12)


@pytest.mark.module
@pytest.mark.asymptotics
class TestAnnulusMixed:
    """annulus_mixed_roots / annulus_mixed_mode / radial_mixed_flux. 観点: 正常系"""

    def test_roots_solve_cross_product(self) -> None:
        for order in (0, 1, 2):
            for k in annulus_mixed_roots(order, 0.5, 1.0, 2):
                f = special.jv(order, 0.5 * k) * special.yvp(order, k) - special.yv(order, 0.5 * k) * special.jvp(order, k)
                assert abs(f) < 1e-10

    def test_roots_increasing(self) -> None:
        roots = annulus_mixed_roots(0, 0.5, 1.0, 3)
        assert roots == sorted(roots)
        assert roots[0] > 0

    def test_mode_boundary_conditions(self) -> None:
        """R(r0) = 0, R′(r1) = 0, R′(r0) > 0"""
        k = annulus_mixed_roots(0, 0.5, 1.0, 1)[0]
        radial, derivative = annulus_mixed_mode(0, k, 0.5, 1.0)
        assert abs(float(radial(0.5))) < 1e-12
        assert abs(float(derivative(1.0))) < 1e-9
        assert float(derivative(0.5)) > 0

    def test_mode_normalized(self) -> None:
        k = annulus_mixed_roots(0, 0.5, 1.0, 1)[0]
        radial, _ = annulus_mixed_mode(0, k, 0.5, 1.0)
        norm2, _ = integrate.quad(lambda r: float(radial(r)) ** 2 * r, 0.5, 1.0)
        assert 2 * math.pi * norm2 == pytest.approx(1.0, rel=1e-10)

    def test_flux_and_c0(self) -> None:
        """ν₀ = −r̂ なので F < 0、c₀ = F/(λ⁰|Ω₀|)"""
        k = annulus_mixed_roots(0, 0.5, 1.0, 1)[0]
        flux = radial_mixed_flux(k, 0.5, 1.0)
        assert flux < 0
        assert radial_c0(k, 0.5, 1.0) == pytest.approx(flux / (k**2 * math.pi * 0.25), rel=1e-14)


@pytest.mark.module
@pytest.mark.asymptotics
class TestCoreReferences:
    """radial_core_correction / harmonic_extension_cos. 観点: 正常系"""

    def test_core_correction_mean_zero_and_flux(self) -> None:
        u, g = radial_core_correction(0.5, 3.0)
        mean, _ = integrate.quad(lambda r: float(u(r)) * r, 0.0, 0.5)
        assert abs(mean) < 1e-14
        assert g == pytest.approx(-0.75)

    def test_harmonic_extension_conditions(self) -> None:
        """(A r + B/r): 値 1 at r0、導関数 0 at r1"""
        a, b = harmonic_extension_cos(0.5, 1.0)
        assert a * 0.5 + b / 0.5 == pytest.approx(1.0)
        assert a - b == pytest.approx(0.0, abs=1e-14)

    def test_harmonic_extension_values_on_core(self) -> None:
        theta = np.linspace(0.0, 2 * np.pi, 7)
        points = 0.5 * np.column_stack([np.cos(theta), np.sin(theta)])
        np.testing.assert_allclose(harmonic_extension_cos_values(points, 0.5, 1.0), np.cos(theta), atol=1e-14)


@pytest.mark.module
@pytest.mark.asymptotics
class TestCuspReferences:
    """cusp_corrector_ode / divergence_integral_principal. 観点: 閉形式との一致"""

    def test_corrector_matches_closed_form(self) -> None:
        eta = np.linspace(0.0, 1.0, 9)
        hp, lam, c0 = 0.02, 2.0, 1.5
        expected = 0.5 * lam * c0 * hp**2 * (1.0 - eta**2)
        np.testing.assert_allclose(cusp_corrector_ode(hp, lam, c0, eta), expected, rtol=1e-8, atol=1e-16)

    def test_divergence_integral(self) -> None:
        assert divergence_integral_principal(1.0, 0.5, 0.1) == pytest.approx(2 * (1000 - 27) / 0.75, rel=1e-12)
        assert divergence_integral_principal(1.0, 0.5, 0.5) == 0.0
