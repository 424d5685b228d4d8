from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import sparse

from stiff_spectra.fem.error import DimensionMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SparseSymmetricMatrix:
    """
    SparseSymmetricMatrix (upper-triangle CSR storage)

    Only the upper triangle (diagonal included) is stored; `full()` mirrors it,
    so the full matrix equals its transpose exactly.
    """

    upper: sparse.csr_matrix

    @classmethod
    def from_entries(
        cls,
        rows: NDArray[np.int64],
        cols: NDArray[np.int64],
        values: NDArray[np.float64],
        n: int,
    ) -> SparseSymmetricMatrix:
        """Sum (row, col, value) entries with row <= col into upper storage."""
        upper = sparse.coo_matrix((values, (rows, cols)), shape=(n, n)).tocsr()
        upper.sum_duplicates()
        upper.eliminate_zeros()
        return cls(upper=upper)

    @classmethod
    def from_dense(cls, matrix: ArrayLike) -> SparseSymmetricMatrix:
        return cls(upper=sparse.csr_matrix(np.triu(np.asarray(matrix, dtype=np.float64))))

    @property
    def n(self) -> int:
        return int(self.upper.shape[0])

    @cached_property
    def _full(self) -> sparse.csr_matrix:
        strict = sparse.triu(self.upper, k=1)
        return (self.upper + strict.T).tocsr()

    def full(self) -> sparse.csr_matrix:
        return self._full

    def toarray(self) -> NDArray[np.float64]:
        return self._full.toarray()

    def __matmul__(self, x: ArrayLike) -> NDArray[np.float64]:
        x = np.asarray(x, dtype=np.float64)
        if x.shape[0] != self.n:
            raise DimensionMismatchError("matrix operand", self.n, x.shape[0])
        return self._full @ x

    def quadratic(self, x: ArrayLike, y: ArrayLike | None = None) -> float:
        """xᵀ A y (y defaults to x)."""
        x = np.asarray(x, dtype=np.float64)
        y = x if y is None else np.asarray(y, dtype=np.float64)
        return float(x @ (self @ y))

    def scaled(self, factor: float) -> SparseSymmetricMatrix:
        return SparseSymmetricMatrix(upper=(self.upper * factor).tocsr())

    def __add__(self, other: SparseSymmetricMatrix) -> SparseSymmetricMatrix:
        if other.n != self.n:
            raise DimensionMismatchError("matrix sum", self.n, other.n)
        return SparseSymmetricMatrix(upper=(self.upper + other.upper).tocsr())

    def with_diagonal_added(self, index: int, value: float) -> SparseSymmetricMatrix:
        bump = sparse.csr_matrix(([value], ([index], [index])), shape=(self.n, self.n))
        return SparseSymmetricMatrix(upper=(self.upper + bump).tocsr())

    def norm_inf(self) -> float:
        """Maximum absolute row sum of the full matrix."""
        if self.n == 0:
            return 0.0
        return float(np.max(np.asarray(abs(self._full).sum(axis=1)).ravel()))

    def coordinates(self) -> tuple[NDArray[np.int64], NDArray[np.int64], NDArray[np.float64]]:
        coo = self.upper.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return coo.row[order].astype(np.int64), coo.col[order].astype(np.int64), coo.data[order]

    def export_coordinates(self, path: str | Path) -> Path:
        """Write 'row col value' lines (upper triangle, 0-based) for debugging."""
        path = Path(path)
        rows, cols, values = self.coordinates()
        with path.open("w", encoding="utf-8") as f:
            f.write(f"% {self.n} {self.n} {rows.size} symmetric-upper\n")
            for r, c, v in zip(rows.tolist(), cols.tolist(), values.tolist()):
                f.write(f"{r} {c} {v!r}\n")
        logger.debug("Exported %dx%d matrix (%d entries) to %s", self.n, self.n, rows.size, path)
        return path
