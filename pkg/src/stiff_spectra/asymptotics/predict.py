from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from stiff_spectra.asymptotics.correction import (
    CorrectionFields,
    CorrectionLabel,
    CorrectionResult,
    MZeroFormula,
    compute_correction_fields,
    lambda_prime,
)
from stiff_spectra.asymptotics.error import IndexOutOfRangeError
from stiff_spectra.asymptotics.limit import (
    DEFAULT_RTOL_CLUSTER,
    LimitEigenSet,
    LimitMeshes,
    LimitSource,
    solve_limit_spectrum,
)
from stiff_spectra.asymptotics.regime import Exponents, Regime, classify_regime, exponents
from stiff_spectra.eigensolver.options import SolverOptions

logger = logging.getLogger(__name__)

# extra limit eigenpairs so that the clusters of the requested indices are complete
LIMIT_PADDING = 3

Term = tuple[float, float]


@dataclass(frozen=True, eq=False)
class Prediction:
    """
    Prediction (two-term eigenvalue asymptotics of index n <Value Object>)

    λ̂ᵋ = Σ ε^e·c over terms; by default ((α, λ⁰), (β, λ′)).
    For m ∈ (−1/2, 0) the correction is carried as two terms of orders
    ε^{−2m} and ε. A fit-only λ′ is NaN until fitted from a sweep.
    """

    n: int
    m: float
    regime: Regime
    lambda0: float
    lambda_prime: float
    alpha: float
    beta: float
    gamma: float
    multiplicity: int
    label: CorrectionLabel
    terms: tuple[Term, ...]
    c0: float | None = None
    source: LimitSource | None = None
    cluster: int = -1
    cross_check: float | None = None
    correction_fields: CorrectionFields | None = None

    def value(self, eps: float) -> float:
        return float(sum(eps**e * c for e, c in self.terms if math.isfinite(c)))

    @property
    def exponents(self) -> Exponents:
        return Exponents(alpha=self.alpha, beta=self.beta, gamma=self.gamma)

    @property
    def has_formula(self) -> bool:
        return self.label is not CorrectionLabel.FIT_ONLY

    def with_fitted_correction(self, coefficient: float) -> Prediction:
        """Fit-only prediction completed with a λ′ estimated from a sweep."""
        return replace(
            self, lambda_prime=coefficient, terms=((self.alpha, self.lambda0), (self.beta, coefficient))
        )

    def with_coefficients(self, lambda0: float, lambda_prime: float, terms: tuple[Term, ...]) -> Prediction:
        return replace(self, lambda0=lambda0, lambda_prime=lambda_prime, terms=terms)


class Predictor:
    """
    Predictor (limit spectrum + per-cluster corrections <Service>)

    責務:
    - regime の極限スペクトルを 1 回だけ解く
    - cluster ごとに補正問題を解き λ′ をキャッシュする
    - 全体問題の添字 n と極限スペクトルの添字を対応付ける
      （MSmall のみ n = 1 が剛体モード λ = 0 で、n ≥ 2 が極限の n − 1 番目）
    """

    def __init__(
        self,
        m: float,
        meshes: LimitMeshes,
        nev: int,
        *,
        options: SolverOptions | None = None,
        rtol_cluster: float = DEFAULT_RTOL_CLUSTER,
        formula: MZeroFormula = MZeroFormula.DERIVED,
    ) -> None:
        self.m = m
        self.regime = classify_regime(m)
        self.exponents = exponents(m)
        self.meshes = meshes
        self.formula = formula
        self.limit: LimitEigenSet = solve_limit_spectrum(
            self.regime, meshes, nev + LIMIT_PADDING, options=options, rtol_cluster=rtol_cluster
        )
        self._corrections: dict[int, tuple[CorrectionFields, CorrectionResult]] = {}

    @property
    def offset(self) -> int:
        return 1 if self.regime is Regime.MSMALL else 0

    @property
    def available(self) -> int:
        """Largest index n whose limit cluster is known to be complete."""
        entries = self.limit.entries
        cutoff = min(
            max(e.lambda0 for e in entries if e.source is source) for source in {e.source for e in entries}
        )
        margin = cutoff - self.limit.rtol_cluster * abs(cutoff)
        return self.offset + sum(1 for e in entries if e.lambda0 < margin)

    def correction(self, cluster_id: int) -> tuple[CorrectionFields, CorrectionResult]:
        if cluster_id not in self._corrections:
            cluster = self.limit.clusters()[cluster_id]
            fields = compute_correction_fields(self.regime, cluster, self.meshes)
            result = lambda_prime(self.regime, cluster, fields, m=self.m, formula=self.formula)
            logger.debug(
                "Cluster %d (λ⁰=%.8g, τ=%d): λ′ = %s (%s)",
                cluster_id,
                fields.lambda0,
                len(cluster),
                result.lambda_prime.tolist(),
                result.label.value,
            )
            self._corrections[cluster_id] = (fields, result)
        return self._corrections[cluster_id]

    def _rigid(self, n: int) -> Prediction:
        e = self.exponents
        return Prediction(
            n=n,
            m=self.m,
            regime=self.regime,
            lambda0=0.0,
            lambda_prime=0.0,
            alpha=e.alpha,
            beta=e.beta,
            gamma=e.gamma,
            multiplicity=1,
            label=CorrectionLabel.DERIVED,
            terms=((e.alpha, 0.0), (e.beta, 0.0)),
        )

    def predict(self, n: int) -> Prediction:
        """
        Raises:
            IndexOutOfRangeError: n < 1 or beyond the complete part of the limit spectrum
        """
        if n < 1 or n > self.available:
            raise IndexOutOfRangeError(n, self.available)
        if n <= self.offset:
            return self._rigid(n)

        entry = self.limit.entries[n - self.offset - 1]
        cluster = self.limit.cluster_of(entry)
        position = next(i for i, e in enumerate(cluster) if e is entry)
        fields, result = self.correction(entry.cluster)
        value = float(result.lambda_prime[position])
        e = self.exponents

        terms: tuple[Term, ...]
        if result.split is not None and -0.5 < self.m < 0:
            mass_term, gradient_term = result.split[position]
            terms = ((0.0, entry.lambda0), (-2.0 * self.m, float(mass_term)), (1.0, float(gradient_term)))
        elif result.label is CorrectionLabel.FIT_ONLY:
            terms = ((e.alpha, entry.lambda0),)
        else:
            terms = ((e.alpha, entry.lambda0), (e.beta, value))

        return Prediction(
            n=n,
            m=self.m,
            regime=self.regime,
            lambda0=entry.lambda0,
            lambda_prime=value,
            alpha=e.alpha,
            beta=e.beta,
            gamma=e.gamma,
            multiplicity=entry.multiplicity,
            label=result.label,
            terms=terms,
            c0=None if fields.c0 is None else float(fields.c0[position]),
            source=entry.source,
            cluster=entry.cluster,
            cross_check=None if result.cross_check is None else float(result.cross_check[position]),
            correction_fields=fields,
        )

    def predictions(self, count: int) -> list[Prediction]:
        return [self.predict(n) for n in range(1, count + 1)]


def predict(
    m: float,
    n: int,
    meshes: LimitMeshes,
    *,
    options: SolverOptions | None = None,
    rtol_cluster: float = DEFAULT_RTOL_CLUSTER,
    formula: MZeroFormula = MZeroFormula.DERIVED,
) -> Prediction:
    return Predictor(m, meshes, n, options=options, rtol_cluster=rtol_cluster, formula=formula).predict(n)


def prediction_values(predictions: Sequence[Prediction], eps: float) -> np.ndarray:
    return np.array([p.value(eps) for p in predictions], dtype=np.float64)
