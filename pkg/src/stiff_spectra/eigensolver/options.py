from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from stiff_spectra.eigensolver.error import SolverOptionsError


@dataclass(kw_only=True)
class SolverOptions:
    """
    Options of the generalized eigen-solve.

    Properties:
    - nev: number of smallest eigenpairs
    - shift: shift-invert center; None means -1e-3·‖K‖∞
    - tol: residual tolerance, relative to max(1, |λ|)
    - max_iter: Lanczos restarts
    - dense_fallback_threshold: systems of at most this dimension are solved densely
    - seed: seed of the Lanczos start vector
    """

    nev: int = 6
    shift: float | None = None
    tol: float = 1e-9
    max_iter: int = 2000
    dense_fallback_threshold: int = 400
    seed: int = 0

    def __post_init__(self) -> None:
        if self.nev < 1:
            raise SolverOptionsError("nev", self.nev, "must be at least 1")
        if not self.tol > 0:
            raise SolverOptionsError("tol", self.tol, "must be positive")
        if self.max_iter < 1:
            raise SolverOptionsError("max_iter", self.max_iter, "must be at least 1")
        if self.dense_fallback_threshold < 0:
            raise SolverOptionsError("dense_fallback_threshold", self.dense_fallback_threshold, "must be nonnegative")

    @classmethod
    def from_dict(cls, dict: dict[str, Any] | None = None) -> SolverOptions:
        if dict is None:
            dict = {}

        return cls(
            nev=dict.get("nev", 6),
            shift=dict.get("shift"),
            tol=dict.get("tol", 1e-9),
            max_iter=dict.get("max_iter", 2000),
            dense_fallback_threshold=dict.get("dense_fallback_threshold", 400),
            seed=dict.get("seed", 0),
        )

    def with_nev(self, nev: int) -> SolverOptions:
        return SolverOptions(
            nev=nev,
            shift=self.shift,
            tol=self.tol,
            max_iter=self.max_iter,
            dense_fallback_threshold=self.dense_fallback_threshold,
            seed=self.seed,
        )
