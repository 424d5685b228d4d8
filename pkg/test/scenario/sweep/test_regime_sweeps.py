import pytest

from stiff_spectra.asymptotics.regime import Regime
from stiff_spectra.verification.config import SweepConfig
from stiff_spectra.verification.sweep import ConvergenceReport, Status, run_sweep

EPS = [0.1, 0.05, 0.025, 0.0125]


def _sweep(m: float, nev: int, check: list[int]) -> ConvergenceReport:
    """h = 0.1 と 0.2 の Richardson 外挿つき"""
    return run_sweep(SweepConfig(m=m, eps_list=EPS, mesh_h=0.1, mesh_h2=0.2, nev=nev, check_indices=check))


@pytest.mark.scenario
@pytest.mark.verification
@pytest.mark.slow
class TestScenarioMSmallRate:
    """シナリオ: m = 0.25 で |λᵋ₂ − λ⁰₁ − ε^{1/2}λ′₁| の傾きが γ = 0.75 − 0.15 以上"""

    def test_rate(self) -> None:
        report = _sweep(0.25, 2, [2])
        assert report.regime is Regime.MSMALL
        second = report.series[1]
        assert second.fit is not None
        assert second.fit.slope >= 0.75 - 0.15
        assert second.fit.r_squared >= 0.98
        assert second.status is Status.PASS
        assert report.passed


@pytest.mark.scenario
@pytest.mark.verification
@pytest.mark.slow
class TestScenarioMNegRate:
    """シナリオ: m = −1 で λ′₂ = −‖∇u′₀‖² < 0、残差の傾きは min{1 − m, 2} − 0.15 以上"""

    def test_sign_and_rate(self) -> None:
        report = _sweep(-1.0, 2, [2])
        second = report.series[1]
        assert second.prediction.lambda_prime < 0
        assert second.gamma == 2.0
        assert second.fit is not None
        assert second.fit.slope >= 1.85
        assert second.status is Status.PASS


@pytest.mark.scenario
@pytest.mark.verification
@pytest.mark.slow
class TestScenarioMLargeScaling:
    """シナリオ: m = 1 で λᵋ₂ 自体の傾きは 2m − 1 = 1、残差は floor まで傾き 2.85 以上"""

    def test_scaling(self) -> None:
        report = _sweep(1.0, 2, [2])
        second = report.series[1]
        assert second.leading_fit is not None
        assert second.leading_fit.slope == pytest.approx(1.0, abs=0.1)
        assert second.prediction.lambda_prime > 0
        if second.fit is not None:
            assert second.fit.slope >= 3.0 - 0.15
        assert second.status is not Status.FAIL


@pytest.mark.scenario
@pytest.mark.verification
@pytest.mark.slow
class TestScenarioMHalfMerged:
    """シナリオ: m = 0.5 で最初の 6 個は Neumann core と混合 annulus の極限スペクトルの和集合に収束"""

    def test_merged_spectrum(self) -> None:
        report = _sweep(0.5, 6, [1, 2, 3, 4, 5, 6])
        limits = [s.prediction.lambda0 for s in report.series]
        assert all(b >= a - 1e-3 * max(1.0, a) for a, b in zip(limits, limits[1:]))
        sources = {s.prediction.source for s in report.series if s.prediction.lambda0 > 0}
        assert len(sources) == 2
        for s in report.series:
            # floor = 10·(tol·max(1, |λ|) + Richardson の離散化誤差)
            assert s.residuals[-1] <= s.floor[-1]
        for s in report.series:
            if s.fit is not None and not s.rate_only:
                assert s.fit.slope >= 0.85
        assert report.passed
