import numpy as np
import pytest

from stiff_spectra.asymptotics.predict import Prediction
from stiff_spectra.asymptotics.regime import Regime, exponents
from stiff_spectra.verification.config import SweepConfig
from stiff_spectra.verification.sweep import ConvergenceReport, build_series
from support.sweeps import make_prediction, synthetic_values


@pytest.fixture
def synthetic_predictions() -> list[Prediction]:
    return [
        make_prediction(1, 0.0, 0.0, -1),
        make_prediction(2, 2.0, 1.0, 0),
        make_prediction(3, 5.0, 1.0, 1),
    ]


@pytest.fixture
def synthetic_config() -> SweepConfig:
    return SweepConfig(m=0.25, nev=3)


@pytest.fixture
def synthetic_report(synthetic_config: SweepConfig, synthetic_predictions: list[Prediction]) -> ConvergenceReport:
    values = synthetic_values(synthetic_config, 0.75)
    series = build_series(synthetic_config, synthetic_predictions, values, np.zeros_like(values))
    return ConvergenceReport(
        config=synthetic_config,
        regime=Regime.MSMALL,
        exponents=exponents(0.25),
        series=series,
    )
