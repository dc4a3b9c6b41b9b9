"""
    Direct solves through a banded Cholesky factorization.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.

    Structured-grid matrices are banded once nodes are numbered column by column, so the factor is computed
    in LAPACK lower band storage: band[k, j] = L[j + k, j]. Dense matrices are the full-bandwidth case.
"""

import numpy as np
import scipy.sparse as sp
from scipy.linalg import cho_solve_banded
from scipy.linalg.lapack import dpbtrf

from topoptmg.solvers.solve_report import SolveReport
from topoptmg.utils.exceptions import DefinitenessError, DimensionError
from topoptmg.utils.utils import Timer, check_length, relative_residual


class CholeskyFactor:
    def __init__(self, band: np.ndarray):
        self.band = band

    @property
    def n(self) -> int:
        return self.band.shape[1]

    @property
    def bandwidth(self) -> int:
        return self.band.shape[0] - 1

    def to_dense(self) -> np.ndarray:
        L = np.zeros((self.n, self.n))
        for k in range(self.bandwidth + 1):
            idx = np.arange(self.n - k)
            L[idx + k, idx] = self.band[k, :self.n - k]
        return L


def lower_band(A) -> np.ndarray:
    """
    Lower band storage of a symmetric matrix; only the lower triangle of A is read
    """
    lower = sp.tril(sp.csr_matrix(A, dtype=float)).tocoo()
    lower.sum_duplicates()
    offsets = lower.row - lower.col
    bandwidth = int(offsets.max()) if lower.nnz else 0
    band = np.zeros((bandwidth + 1, A.shape[0]))
    band[offsets, lower.col] = lower.data
    return band


def cholesky_factor(A) -> CholeskyFactor:
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"Cholesky needs a square matrix, got {A.shape}")
    band, info = dpbtrf(lower_band(A), lower=1)
    if info > 0:
        raise DefinitenessError(f"Matrix is not positive definite: non-positive pivot at row {info}", row=int(info))
    if info < 0:
        raise DimensionError(f"Banded Cholesky rejected argument {-info}")
    return CholeskyFactor(band)


def cholesky_solve(L: CholeskyFactor, b: np.ndarray) -> np.ndarray:
    # forward substitution with L, back substitution with L^T
    b = np.asarray(b, dtype=float)
    check_length(b, L.n, 'right-hand side')
    return cho_solve_banded((L.band, True), b)


def cholesky_direct_solve(A, b: np.ndarray) -> SolveReport:
    with Timer() as timer:
        x = cholesky_solve(cholesky_factor(A), b)
    return SolveReport(x, 1, relative_residual(A, x, b), True, timer.seconds, method='cholesky')
