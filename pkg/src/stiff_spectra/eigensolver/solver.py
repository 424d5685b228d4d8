from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import NDArray
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from stiff_spectra.eigensolver.error import (
    FactorizationSingularError,
    NoConvergenceError,
    SolverOptionsError,
)
from stiff_spectra.eigensolver.options import SolverOptions
from stiff_spectra.fem.error import DimensionMismatchError, NotConvergedError
from stiff_spectra.fem.matrix import SparseSymmetricMatrix

logger = logging.getLogger(__name__)

SHIFT_SCALE = 1e-3
SHIFT_RETRIES = 3
_SINGULAR_PIVOT = 1e-13


@dataclass(frozen=True, eq=False)
class EigenPair:
    """(λ, x) with ‖x‖_M = 1 and residual ‖Kx − λMx‖₂ / ‖x‖_M."""

    lam: float
    vector: NDArray[np.float64]
    residual: float


def default_shift(stiffness: SparseSymmetricMatrix) -> float:
    """-σ₀ with σ₀ = 1e-3·‖K‖∞; keeps K − shift·M definite for a PSD K."""
    return -SHIFT_SCALE * max(stiffness.norm_inf(), np.finfo(np.float64).tiny)


def _factorize(operator: sparse.csc_matrix) -> sparse_linalg.SuperLU:
    lu = sparse_linalg.splu(operator)
    pivots = np.abs(lu.U.diagonal())
    if pivots.size and pivots.min() <= _SINGULAR_PIVOT * pivots.max():
        raise RuntimeError("Factor is numerically singular")
    return lu


def _shift_invert(
    stiffness: SparseSymmetricMatrix,
    mass: SparseSymmetricMatrix,
    shift: float,
) -> tuple[float, sparse_linalg.LinearOperator]:
    """
    LU of K − shift·M as a LinearOperator. A singular factorization is retried
    with the shift moved further away from the spectrum.
    """
    k, m = stiffness.full(), mass.full()
    current = shift
    step = 0.1 * max(abs(shift), 1e-8)
    for attempt in range(1, SHIFT_RETRIES + 1):
        try:
            lu = _factorize((k - current * m).tocsc())
        except RuntimeError:
            logger.debug("Singular factorization at shift %.6e (attempt %d)", current, attempt)
            current -= step * attempt
            continue
        operator = sparse_linalg.LinearOperator(k.shape, matvec=lu.solve, dtype=np.float64)
        return current, operator
    raise FactorizationSingularError(current, SHIFT_RETRIES)


def _rayleigh_ritz(
    stiffness: SparseSymmetricMatrix,
    mass: SparseSymmetricMatrix,
    basis: NDArray[np.float64],
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Projected dense solve on span(basis); returns M-orthonormal Ritz pairs."""
    kb = stiffness.full() @ basis
    mb = mass.full() @ basis
    reduced_k = basis.T @ kb
    reduced_m = basis.T @ mb
    values, coefficients = scipy.linalg.eigh(
        0.5 * (reduced_k + reduced_k.T), 0.5 * (reduced_m + reduced_m.T)
    )
    return values, basis @ coefficients


def _dense(
    stiffness: SparseSymmetricMatrix,
    mass: SparseSymmetricMatrix,
    nev: int,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    return scipy.linalg.eigh(stiffness.toarray(), mass.toarray(), subset_by_index=[0, nev - 1])


def _lanczos(
    stiffness: SparseSymmetricMatrix,
    mass: SparseSymmetricMatrix,
    options: SolverOptions,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    n = stiffness.n
    shift = options.shift if options.shift is not None else default_shift(stiffness)
    shift, inverse = _shift_invert(stiffness, mass, shift)
    v0 = np.random.default_rng(options.seed).standard_normal(n)
    ncv = min(n, max(2 * options.nev + 1, 20))
    try:
        values, vectors = sparse_linalg.eigsh(
            stiffness.full(),
            k=options.nev,
            M=mass.full(),
            sigma=shift,
            which="LM",
            OPinv=inverse,
            v0=v0,
            ncv=ncv,
            tol=0,
            maxiter=options.max_iter,
        )
    except sparse_linalg.ArpackNoConvergence as e:
        raise NoConvergenceError(options.nev, len(e.eigenvalues), options.max_iter) from e
    logger.debug("Lanczos at shift %.6e returned %d pairs (n=%d, ncv=%d)", shift, values.size, n, ncv)
    return _rayleigh_ritz(stiffness, mass, vectors)


def residual_norms(
    stiffness: SparseSymmetricMatrix,
    mass: SparseSymmetricMatrix,
    values: NDArray[np.float64],
    vectors: NDArray[np.float64],
) -> NDArray[np.float64]:
    kx = stiffness.full() @ vectors
    mx = mass.full() @ vectors
    mass_norms = np.sqrt(np.maximum(np.einsum("ij,ij->j", vectors, mx), 0.0))
    return np.linalg.norm(kx - mx * values[None, :], axis=0) / mass_norms


def solve_gevp(
    stiffness: SparseSymmetricMatrix,
    mass: SparseSymmetricMatrix,
    options: SolverOptions | None = None,
) -> list[EigenPair]:
    """
    nev smallest eigenpairs of K x = λ M x in nondecreasing order.

    Shift-invert Lanczos on K − shift·M (sparse LU) followed by a Rayleigh-Ritz
    pass; systems up to dense_fallback_threshold are solved densely.

    Raises:
        FactorizationSingularError: K − shift·M singular after retries
        NoConvergenceError: Lanczos did not converge within max_iter
        NotConvergedError: a returned pair misses tol·max(1, |λ|)
    """
    if options is None:
        options = SolverOptions()
    n = stiffness.n
    if mass.n != n:
        raise DimensionMismatchError("mass matrix", n, mass.n)
    if options.nev > n:
        raise SolverOptionsError("nev", options.nev, f"exceeds the system dimension {n}")

    if n <= options.dense_fallback_threshold or options.nev >= n - 1:
        values, vectors = _dense(stiffness, mass, options.nev)
    else:
        values, vectors = _lanczos(stiffness, mass, options)

    order = np.argsort(values, kind="stable")
    values, vectors = values[order], vectors[:, order]
    # deterministic sign: largest-magnitude entry positive
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    vectors = vectors * np.where(signs == 0, 1.0, signs)[None, :]

    residuals = residual_norms(stiffness, mass, values, vectors)
    pairs = []
    for lam, x, r in zip(values.tolist(), vectors.T, residuals.tolist()):
        limit = options.tol * max(1.0, abs(lam))
        if r > limit:
            raise NotConvergedError(r, limit)
        pairs.append(EigenPair(lam=float(lam), vector=np.ascontiguousarray(x), residual=float(r)))
    logger.debug("Solved %d eigenpairs of a %d-dimensional pencil", len(pairs), n)
    return pairs


def count_below(
    stiffness: SparseSymmetricMatrix,
    mass: SparseSymmetricMatrix,
    sigma: float,
    *,
    dense: bool | None = None,
) -> int:
    """
    Number of eigenvalues of K x = λ M x below sigma, read from the inertia
    of K − σM (Sylvester's law).

    Dense: LDLᵀ (Bunch-Kaufman) with eigenvalues of the block-diagonal D.
    Sparse: LU without row pivoting in symmetric mode, negative pivots of U.
    """
    if mass.n != stiffness.n:
        raise DimensionMismatchError("mass matrix", stiffness.n, mass.n)
    if dense is None:
        dense = stiffness.n <= SolverOptions().dense_fallback_threshold
    if dense:
        shifted = stiffness.toarray() - sigma * mass.toarray()
        _, d, _ = scipy.linalg.ldl(shifted)
        return int(np.sum(np.linalg.eigvalsh(d) < 0))
    shifted = (stiffness.full() - sigma * mass.full()).tocsc()
    lu = sparse_linalg.splu(
        shifted,
        permc_spec="MMD_AT_PLUS_A",
        diag_pivot_thresh=0.0,
        options=dict(SymmetricMode=True),
    )
    return int(np.sum(lu.U.diagonal() < 0))


def eigenvalues_near(
    stiffness: SparseSymmetricMatrix,
    mass: SparseSymmetricMatrix,
    sigma: float,
    k: int = 1,
    options: SolverOptions | None = None,
) -> NDArray[np.float64]:
    """The k eigenvalues closest to sigma (shift-invert about sigma), ascending."""
    if options is None:
        options = SolverOptions()
    n = stiffness.n
    if n <= options.dense_fallback_threshold or k >= n - 1:
        values = scipy.linalg.eigh(stiffness.toarray(), mass.toarray(), eigvals_only=True)
        return np.sort(values[np.argsort(np.abs(values - sigma), kind="stable")[:k]])
    shift, inverse = _shift_invert(stiffness, mass, sigma)
    v0 = np.random.default_rng(options.seed).standard_normal(n)
    try:
        values = sparse_linalg.eigsh(
            stiffness.full(),
            k=k,
            M=mass.full(),
            sigma=shift,
            which="LM",
            OPinv=inverse,
            v0=v0,
            tol=0,
            maxiter=options.max_iter,
            return_eigenvectors=False,
        )
    except sparse_linalg.ArpackNoConvergence as e:
        raise NoConvergenceError(k, len(e.eigenvalues), options.max_iter) from e
    return np.sort(values)
