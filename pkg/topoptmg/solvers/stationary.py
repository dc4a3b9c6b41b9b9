"""
    Stationary splitting iterations: Jacobi, damped Jacobi and Gauss-Seidel.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import numpy as np
import scipy.sparse as sp
from pyamg.relaxation.relaxation import gauss_seidel

from topoptmg.solvers.solve_report import SolveReport
from topoptmg.solvers.solver_config import stationary_methods
from topoptmg.utils.exceptions import ConfigurationError, SplittingError
from topoptmg.utils.utils import Timer, check_length


def checked_diagonal(A) -> np.ndarray:
    diagonal = A.diagonal()
    bad = np.nonzero(diagonal <= 0)[0]
    if len(bad):
        raise SplittingError(f"Splitting needs a positive diagonal, row {bad[0]} has {diagonal[bad[0]]}")
    return diagonal


def smoother_sweep(A, x: np.ndarray, b: np.ndarray, kind: str, omega: float = 1.0,
                   diagonal: np.ndarray = None) -> np.ndarray:
    """
    One sweep of the named iteration

    Args:
        A: Sparse system matrix
        x: Current iterate. Gauss-Seidel overwrites it in ascending dof order
        b: Right-hand side
        kind: 'jacobi', 'damped_jacobi' or 'gauss_seidel'
        omega: Damping, only read by damped Jacobi
        diagonal: Precomputed positive diagonal of A, computed and checked here when None
    Returns:
        The updated iterate
    """
    if kind not in stationary_methods:
        raise ConfigurationError(f"Unknown smoother '{kind}'", key='smoother')
    if diagonal is None:
        diagonal = checked_diagonal(A)

    if kind == 'gauss_seidel':
        if not sp.isspmatrix_csr(A):
            A = sp.csr_matrix(A)
        gauss_seidel(A, x, b, iterations=1, sweep='forward')
        return x

    weight = omega if kind == 'damped_jacobi' else 1.0
    return x + weight * (b - A @ x) / diagonal


def stationary_solve(A, b: np.ndarray, kind: str, omega: float = 1.0, tol: float = 1e-6,
                     max_iter: int = 1000) -> SolveReport:
    b = np.asarray(b, dtype=float)
    check_length(b, A.shape[0], 'right-hand side')
    if not sp.isspmatrix_csr(A):
        A = sp.csr_matrix(A)

    with Timer() as timer:
        diagonal = checked_diagonal(A)
        x = np.zeros_like(b)
        b_norm = np.linalg.norm(b)
        if b_norm == 0.0:
            return SolveReport(x, 0, 0.0, True, 0.0, [0.0], method=kind)

        history = [1.0]
        iterations = 0
        residual = 1.0
        while residual > tol and iterations < max_iter:
            x = smoother_sweep(A, x, b, kind, omega, diagonal)
            iterations += 1
            residual = float(np.linalg.norm(b - A @ x) / b_norm)
            history.append(residual)

    return SolveReport(x, iterations, residual, residual <= tol, timer.seconds, history, method=kind)
