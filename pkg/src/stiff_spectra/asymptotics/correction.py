from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from stiff_spectra.asymptotics.core_problems import (
    ZERO_EIGENVALUE_TOLERANCE,
    annulus_flux,
    compute_c0,
    core_neumann_data,
    harmonic_extension,
    solve_correction_core,
)
from stiff_spectra.asymptotics.error import MissingFieldError
from stiff_spectra.asymptotics.limit import LimitEntry, LimitMeshes, LimitSource
from stiff_spectra.asymptotics.regime import Regime
from stiff_spectra.fem.functionals import gradient_gram

logger = logging.getLogger(__name__)


class MZeroFormula(Enum):
    DERIVED = "derived"
    EXTRAPOLATED = "extrapolated"


class CorrectionLabel(Enum):
    DERIVED = "derived"
    EXTRAPOLATED = "extrapolated"
    FIT_ONLY = "fit-only"


class ClusterMatrixKind(Enum):
    RANK_ONE_M = "RankOneM"
    GRAM_G = "GramG"
    GRAM_ADJUSTED = "GramAdjusted"
    GRAM_EXTENSION = "GramExtension"


@dataclass(frozen=True, eq=False)
class ClusterMatrix:
    """Dense symmetric τ×τ matrix whose eigenvalues give the cluster's λ′."""

    kind: ClusterMatrixKind
    entries: NDArray[np.float64]

    def __post_init__(self) -> None:
        a = np.atleast_2d(np.asarray(self.entries, dtype=np.float64))
        object.__setattr__(self, "entries", 0.5 * (a + a.T))

    @property
    def size(self) -> int:
        return int(self.entries.shape[0])

    def eigenvalues(self) -> NDArray[np.float64]:
        return np.linalg.eigvalsh(self.entries)

    def eigh(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        return np.linalg.eigh(self.entries)


@dataclass(frozen=True, eq=False)
class CorrectionFields:
    """
    CorrectionFields (per-cluster inputs of λ′)

    配列は cluster メンバー順。regime が必要としないものは None。

    Properties:
    - flux: ∫_{Γ₀} ∂_{ν₀}u⁰₁ ds per member
    - c0: c₀ per member
    - core_corrections: u′₀ on the core submesh (mean zero)
    - core_gram: (∇u′₀ⱼ, ∇u′₀ₖ)_{Ω₀}
    - extensions: harmonic extensions u⁰₁ on the annulus submesh
    - extension_gram: (∇u⁰₁ⱼ, ∇u⁰₁ₖ)_{Ω₁}
    """

    lambda0: float
    core_area: float
    sources: tuple[LimitSource, ...]
    flux: NDArray[np.float64] | None = None
    c0: NDArray[np.float64] | None = None
    core_corrections: tuple[NDArray[np.float64], ...] | None = None
    core_gram: NDArray[np.float64] | None = None
    extensions: tuple[NDArray[np.float64], ...] | None = None
    extension_gram: NDArray[np.float64] | None = None

    @property
    def mixed_sources(self) -> bool:
        return len(set(self.sources)) > 1


@dataclass(frozen=True, eq=False)
class CorrectionResult:
    """
    λ′ of one cluster in ascending order.

    split holds (mass term, gradient term) per member for the m<0 regime,
    where the two enter at orders ε^{−2m} and ε.
    cross_check is the second expression F²/(λ⁰|Ω₀|) of a simple MSmall value.
    """

    lambda_prime: NDArray[np.float64]
    label: CorrectionLabel
    matrix: ClusterMatrix | None = None
    cross_check: NDArray[np.float64] | None = None
    split: NDArray[np.float64] | None = None


def _cluster_lambda0(cluster: Sequence[LimitEntry]) -> float:
    return float(np.mean([e.lambda0 for e in cluster]))


def compute_correction_fields(
    regime: Regime,
    cluster: Sequence[LimitEntry],
    meshes: LimitMeshes,
) -> CorrectionFields:
    """Solve the correction problems the regime needs for one cluster."""
    lambda0 = _cluster_lambda0(cluster)
    base = dict(lambda0=lambda0, core_area=meshes.core_area, sources=tuple(e.source for e in cluster))
    sources = set(base["sources"])

    if sources == {LimitSource.MIXED_ANNULUS}:
        flux = np.array([float(np.sum(annulus_flux(e, meshes)[1])) for e in cluster])
        c0 = np.array([compute_c0(e, meshes) for e in cluster])
        return CorrectionFields(**base, flux=flux, c0=c0)

    if sources <= {LimitSource.CONSTANT_TRACE_ANNULUS, LimitSource.MODIFIED_CONSTANT_TRACE}:
        # MNeg: ∫ ∂ν u⁰₁ = 0, load 0.  MZero: flux balances λ⁰c₀|Ω₀|, load λ⁰c₀.
        rhs_from_trace = regime is Regime.MZERO
        flux, c0, corrections = [], [], []
        for e in cluster:
            vertices, values = annulus_flux(e, meshes)
            c = compute_c0(e, meshes)
            if abs(e.lambda0) <= ZERO_EIGENVALUE_TOLERANCE:
                # constant eigenfunction: flux and load vanish up to round-off
                corrections.append(np.zeros(meshes.core.n_vertices))
            else:
                data = core_neumann_data(meshes, vertices, values)
                corrections.append(
                    solve_correction_core(meshes.core, data, e.lambda0, c if rhs_from_trace else 0.0)
                )
            flux.append(float(np.sum(values)))
            c0.append(c)
        gram = gradient_gram(meshes.core, corrections, None)
        logger.debug("Core correction Gram at λ⁰=%.8g: %s", lambda0, gram.tolist())
        return CorrectionFields(
            **base,
            flux=np.array(flux),
            c0=np.array(c0),
            core_corrections=tuple(corrections),
            core_gram=gram,
        )

    if sources == {LimitSource.NEUMANN_CORE}:
        extensions = tuple(harmonic_extension(meshes.annulus, meshes.core_to_annulus(e.values)) for e in cluster)
        return CorrectionFields(
            **base,
            extensions=extensions,
            extension_gram=gradient_gram(meshes.annulus, extensions, None),
        )

    # core and annulus families coincide: no closed form
    return CorrectionFields(**base)


def _require(value: ArrayLike | None, field: str, regime: Regime) -> NDArray[np.float64]:
    if value is None:
        raise MissingFieldError(field, regime.value)
    return np.asarray(value, dtype=np.float64)


def lambda_prime(
    regime: Regime,
    cluster: Sequence[LimitEntry],
    fields: CorrectionFields,
    *,
    m: float | None = None,
    formula: MZeroFormula = MZeroFormula.DERIVED,
) -> CorrectionResult:
    """
    First-order correction λ′ of a cluster of multiplicity τ = len(cluster).

    - MSmall: 𝓜 = F Fᵀ/(λ⁰|Ω₀|); τ = 1 gives c₀²λ⁰|Ω₀| with F²/(λ⁰|Ω₀|) as cross-check
    - MNeg: −eig(G) for −2m > 1, −eig(λ⁰|Ω₀| c cᵀ + G) otherwise
    - MZero: −eig(G) (derived) or −eig(λ⁰|Ω₀| c cᵀ + G) (extrapolated)
    - MHalf: 0 at order ε^{1/2}; clusters mixing both families are fit-only
    - MLarge: +eig of the Gram matrix of the harmonic extensions

    Raises:
        MissingFieldError: a field required by the regime is absent
    """
    tau = len(cluster)
    match regime:
        case Regime.MSMALL:
            flux = _require(fields.flux, "flux", regime)
            c0 = _require(fields.c0, "c0", regime)
            scale = fields.lambda0 * fields.core_area
            matrix = ClusterMatrix(ClusterMatrixKind.RANK_ONE_M, np.outer(flux, flux) / scale)
            if tau == 1:
                return CorrectionResult(
                    lambda_prime=np.array([c0[0] ** 2 * scale]),
                    label=CorrectionLabel.DERIVED,
                    matrix=matrix,
                    cross_check=np.array([flux[0] ** 2 / scale]),
                )
            return CorrectionResult(lambda_prime=matrix.eigenvalues(), label=CorrectionLabel.DERIVED, matrix=matrix)

        case Regime.MNEG | Regime.MZERO:
            gram = _require(fields.core_gram, "core_gram", regime)
            c0 = _require(fields.c0, "c0", regime)
            mass_term = fields.lambda0 * fields.core_area * np.outer(c0, c0)
            if regime is Regime.MNEG:
                if m is None:
                    raise MissingFieldError("m", regime.value)
                adjusted = -2.0 * m <= 1.0
                label = CorrectionLabel.DERIVED
            else:
                adjusted = formula is MZeroFormula.EXTRAPOLATED
                label = CorrectionLabel.EXTRAPOLATED if adjusted else CorrectionLabel.DERIVED
            if adjusted:
                matrix = ClusterMatrix(ClusterMatrixKind.GRAM_ADJUSTED, mass_term + gram)
            else:
                matrix = ClusterMatrix(ClusterMatrixKind.GRAM_G, gram)
            values, vectors = matrix.eigh()
            # ascending λ′ = −(descending eigenvalues)
            values, vectors = values[::-1], vectors[:, ::-1]
            split = np.column_stack(
                [
                    -np.einsum("ij,ik,kj->j", vectors, mass_term, vectors) if adjusted else np.zeros(tau),
                    -np.einsum("ij,ik,kj->j", vectors, gram, vectors),
                ]
            )
            return CorrectionResult(lambda_prime=-values, label=label, matrix=matrix, split=split)

        case Regime.MHALF:
            if fields.mixed_sources:
                return CorrectionResult(lambda_prime=np.full(tau, np.nan), label=CorrectionLabel.FIT_ONLY)
            return CorrectionResult(lambda_prime=np.zeros(tau), label=CorrectionLabel.DERIVED)

        case Regime.MLARGE:
            gram = _require(fields.extension_gram, "extension_gram", regime)
            matrix = ClusterMatrix(ClusterMatrixKind.GRAM_EXTENSION, gram)
            return CorrectionResult(lambda_prime=matrix.eigenvalues(), label=CorrectionLabel.DERIVED, matrix=matrix)
