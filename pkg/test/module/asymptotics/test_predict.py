import numpy as np
import pytest

from stiff_spectra.asymptotics.correction import CorrectionLabel
from stiff_spectra.asymptotics.error import IndexOutOfRangeError
from stiff_spectra.asymptotics.limit import LimitMeshes
from stiff_spectra.asymptotics.predict import Prediction, Predictor, prediction_values
from stiff_spectra.asymptotics.regime import Regime


@pytest.fixture(scope="module")
def msmall_predictor(concentric_limit_meshes: LimitMeshes) -> Predictor:
    return Predictor(0.25, concentric_limit_meshes, 3)


@pytest.mark.module
@pytest.mark.asymptotics
class TestPredictor_Predict:
    """Predictor.predict. 観点: 正常系・異常系"""

    def test_rigid_mode_first(self, msmall_predictor: Predictor) -> None:
        """MSmall では n = 1 が λ = 0 の剛体モード"""
        first = msmall_predictor.predict(1)
        assert first.lambda0 == 0.0
        assert first.value(0.01) == 0.0

    def test_second_matches_limit(self, msmall_predictor: Predictor) -> None:
        second = msmall_predictor.predict(2)
        assert second.regime is Regime.MSMALL
        assert second.lambda0 == pytest.approx(msmall_predictor.limit.values[0])
        assert (second.alpha, second.beta, second.gamma) == (0.0, 0.5, 0.75)
        assert second.label is CorrectionLabel.DERIVED

    def test_cross_check_agrees(self, msmall_predictor: Predictor) -> None:
        """c₀²λ⁰|Ω₀| と F²/(λ⁰|Ω₀|) は離散レベルで一致"""
        second = msmall_predictor.predict(2)
        assert second.cross_check == pytest.approx(second.lambda_prime, rel=1e-10)
        assert second.lambda_prime > 0

    def test_value_two_terms(self, msmall_predictor: Predictor) -> None:
        second = msmall_predictor.predict(2)
        assert second.value(0.04) == pytest.approx(second.lambda0 + 0.2 * second.lambda_prime)

    def test_out_of_range(self, msmall_predictor: Predictor) -> None:
        with pytest.raises(IndexOutOfRangeError) as e:
            msmall_predictor.predict(0)
        assert e.value.n == 0
        assert e.value.available == msmall_predictor.available

    def test_available_covers_requested(self, msmall_predictor: Predictor) -> None:
        assert msmall_predictor.available >= 3
        assert len(msmall_predictor.predictions(3)) == 3


@pytest.mark.module
@pytest.mark.asymptotics
class TestPrediction:
    """Prediction. 観点: 正常系"""

    def _fit_only(self) -> Prediction:
        return Prediction(
            n=2,
            m=0.5,
            regime=Regime.MHALF,
            lambda0=5.0,
            lambda_prime=float("nan"),
            alpha=0.0,
            beta=0.5,
            gamma=1.0,
            multiplicity=2,
            label=CorrectionLabel.FIT_ONLY,
            terms=((0.0, 5.0),),
        )

    def test_fit_only_value_is_leading_term(self) -> None:
        prediction = self._fit_only()
        assert not prediction.has_formula
        assert prediction.value(0.01) == pytest.approx(5.0)

    def test_with_fitted_correction(self) -> None:
        fitted = self._fit_only().with_fitted_correction(2.0)
        assert fitted.value(0.01) == pytest.approx(5.0 + 0.1 * 2.0)

    def test_prediction_values(self) -> None:
        values = prediction_values([self._fit_only(), self._fit_only()], 0.01)
        np.testing.assert_allclose(values, [5.0, 5.0])
