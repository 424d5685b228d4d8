import numpy as np
import pytest

from stiff_spectra.cusp.corrector import (
    CorrectorCheck,
    check_corrector,
    compute_U1,
    corrector_eta,
    corrector_values,
    corrector_x2_second_derivative,
    pde_residual,
)
from stiff_spectra.geometry.cusp_chart import CuspGeometry
from stiff_spectra.geometry.error import OutOfChartError

GEOM = CuspGeometry(R0=0.5, R1=1.0, delta_trunc=0.02)


@pytest.mark.module
@pytest.mark.cusp
class TestComputeU1:
    """compute_U1. 観点: 正常系・異常系"""

    def test_value_on_outer_principal_graph(self) -> None:
        """x2 = H1ᵖ(x1) では η = 0 で λc₀Hp²/2"""
        # x1 = 0.1: H1ᵖ = 0.005, Hp = 0.005
        assert compute_U1(GEOM, 1.0, 1.0, (0.1, 0.005)) == pytest.approx(1.25e-5, rel=1e-12)

    def test_vanishes_on_core_principal_graph(self) -> None:
        """η = 1 (x2 = H0ᵖ) で 0"""
        assert compute_U1(GEOM, 1.0, 1.0, (0.1, 0.01)) == pytest.approx(0.0, abs=1e-18)

    def test_linear_in_lam_c0(self) -> None:
        base = compute_U1(GEOM, 1.0, 1.0, (0.2, 0.025))
        assert compute_U1(GEOM, 2.0, 3.0, (0.2, 0.025)) == pytest.approx(6.0 * base, rel=1e-12)

    def test_out_of_chart(self) -> None:
        with pytest.raises(OutOfChartError) as e:
            compute_U1(GEOM, 1.0, 1.0, (0.6, 0.1))
        assert e.value.message == "[Stiff Spectra] |x1| = 0.6 must be smaller than the core radius 0.5 in the cusp chart"


@pytest.mark.module
@pytest.mark.cusp
class TestCorrectorValues:
    """corrector_values / corrector_eta. 観点: 正常系"""

    def test_matches_eta_form(self) -> None:
        """chart 座標と η 座標の式が一致する"""
        x1 = np.array([0.3, 0.2, 0.1, 0.05])
        eta = np.array([0.0, 0.25, 0.5, 1.0])
        hp = GEOM.curvature_gap * x1**2
        x2 = x1**2 / (2 * GEOM.R1) + eta * hp
        np.testing.assert_allclose(
            corrector_values(GEOM, 1.5, 2.0, np.column_stack([x1, x2])),
            corrector_eta(GEOM, 1.5, 2.0, x1, eta),
            rtol=1e-10,
            atol=1e-18,
        )

    def test_x2_second_derivative(self) -> None:
        """x2 方向の 2 階差分は −λc₀（x2 について 2 次式なので差分は厳密）"""
        h = 1e-3
        x1, x2 = 0.2, 0.03
        values = [compute_U1(GEOM, 2.0, 3.0, (x1, x2 + s * h)) for s in (-1, 0, 1)]
        second = (values[0] - 2 * values[1] + values[2]) / h**2
        assert second == pytest.approx(corrector_x2_second_derivative(2.0, 3.0), rel=1e-6)
        assert corrector_x2_second_derivative(2.0, 3.0) == -6.0


@pytest.mark.module
@pytest.mark.cusp
class TestCheckCorrector:
    """check_corrector. 観点: 正常系"""

    @pytest.mark.parametrize("x1", [0.3, 0.1, 0.04])
    def test_passes(self, x1: float) -> None:
        """η = 1 で 0、η = 0 で傾き 0、ODE の数値解と一致"""
        check = check_corrector(GEOM, 1.0, 1.0, x1)
        assert check.x1 == x1
        assert check.scale == pytest.approx((GEOM.curvature_gap * x1**2) ** 2)
        assert check.passed()

    def test_fails_on_large_deviation(self) -> None:
        check = check_corrector(GEOM, 1.0, 1.0, 0.1)
        broken = CorrectorCheck(
            x1=check.x1,
            value_at_top=check.scale,
            slope_at_bottom=0.0,
            ode_deviation=0.0,
            scale=check.scale,
        )
        assert not broken.passed()


@pytest.mark.module
@pytest.mark.cusp
class TestPdeResidual:
    """pde_residual. 観点: 正常系（O(λc₀x1²) の主要項）"""

    def test_leading_coefficient_at_midline(self) -> None:
        """R0 = 0.5, R1 = 1, η = 1/2 では residual / (λc₀x1²) → −3/4"""
        x1 = np.array([0.04, 0.02, 0.01])
        ratio = pde_residual(GEOM, 2.0, 1.5, x1, 0.5) / (3.0 * x1**2)
        np.testing.assert_allclose(ratio, -0.75, rtol=1e-3)

    def test_second_order_decay(self) -> None:
        x1 = np.array([0.2, 0.1, 0.05])
        r = np.abs(pde_residual(GEOM, 1.0, 1.0, x1, 0.5))
        np.testing.assert_allclose(r[:-1] / r[1:], 4.0, rtol=0.05)

    def test_zero_without_source(self) -> None:
        assert np.all(pde_residual(GEOM, 0.0, 1.0, [0.1, 0.2], 0.5) == 0.0)
