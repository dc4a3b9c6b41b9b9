"""
    Geometric multigrid gamma-cycle and its use as a conjugate gradient preconditioner.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import typing

import numpy as np

from topoptmg.grid.hierarchy import GridHierarchy
from topoptmg.solvers.cholesky import CholeskyFactor, cholesky_factor, cholesky_solve
from topoptmg.solvers.krylov import pcg_solve
from topoptmg.solvers.solve_report import SolveReport
from topoptmg.solvers.solver_config import SolverConfig
from topoptmg.solvers.stationary import checked_diagonal, smoother_sweep
from topoptmg.utils.exceptions import ConfigurationError, DimensionError
from topoptmg.utils.utils import Timer, check_length


def mg_cycle(hier: GridHierarchy, mats: list, level: int, u: np.ndarray, f: np.ndarray, gamma: int = 1,
             pre_sweeps: int = 2, post_sweeps: int = 2, smoother: str = 'damped_jacobi', omega: float = 0.6,
             coarse_factor: CholeskyFactor = None, diagonals: list = None) -> np.ndarray:
    """
    One multigrid gamma-cycle on K_level u = f

    Args:
        hier: Grid hierarchy supplying the transfer operators
        mats: Operators per level, coarsest first
        level: Level to work on, len(mats) - 1 is the finest
        u: Initial iterate on this level
        f: Right-hand side on this level
        gamma: Coarse visits per cycle below the finest level (1 = V, 2 = W)
        pre_sweeps: Smoothing sweeps before the correction
        post_sweeps: Smoothing sweeps after the correction
        smoother: Smoother kind
        omega: Damping for the damped Jacobi smoother
        coarse_factor: Cholesky factor of mats[0], computed on demand when missing
        diagonals: Cached diagonals of mats
    Returns:
        Updated iterate
    """
    check_length(f, mats[level].shape[0], f'right-hand side on level {level}')
    if level == 0:
        if coarse_factor is None:
            coarse_factor = cholesky_factor(mats[0])
        return cholesky_solve(coarse_factor, f)

    K = mats[level]
    diagonal = diagonals[level] if diagonals is not None else checked_diagonal(K)
    u = np.array(u, dtype=float)

    for _ in range(pre_sweeps):
        u = smoother_sweep(K, u, f, smoother, omega, diagonal)

    P = hier.prolongation(level)
    f_coarse = 0.25 * (P.T @ (f - K @ u))
    u_coarse = np.zeros(P.shape[1])
    visits = 1 if level == len(mats) - 1 else gamma
    for _ in range(visits):
        u_coarse = mg_cycle(hier, mats, level - 1, u_coarse, f_coarse, gamma, pre_sweeps, post_sweeps, smoother,
                            omega, coarse_factor, diagonals)
    u += P @ u_coarse

    for _ in range(post_sweeps):
        u = smoother_sweep(K, u, f, smoother, omega, diagonal)
    return u


class MultigridPreconditioner:
    """
    M^-1 r as one cycle from a zero initial guess. Galerkin operators, diagonals and the coarse factor are
    computed once per assembled matrix and reused by every application.
    """

    def __init__(self, hier: GridHierarchy, mats: list, gamma: int = 1, pre_sweeps: int = 2, post_sweeps: int = 2,
                 smoother: str = 'damped_jacobi', omega: float = 0.6):
        if len(mats) != len(hier.levels):
            raise DimensionError(f"{len(mats)} operators given for a {len(hier.levels)}-level hierarchy")
        self.hier = hier
        self.mats = mats
        self.gamma = gamma
        self.pre_sweeps = pre_sweeps
        self.post_sweeps = post_sweeps
        self.smoother = smoother
        self.omega = omega
        self.diagonals = [None] + [checked_diagonal(K) for K in mats[1:]]
        self.coarse_factor = cholesky_factor(mats[0])
        self.applications = 0

    @classmethod
    def from_config(cls, hier: GridHierarchy, K_fine, cfg: SolverConfig) -> 'MultigridPreconditioner':
        return cls(hier, hier.galerkin_operators(K_fine), cfg.gamma, cfg.pre_sweeps, cfg.post_sweeps, cfg.smoother,
                   cfg.omega)

    def __call__(self, r: np.ndarray) -> np.ndarray:
        self.applications += 1
        finest = len(self.mats) - 1
        return mg_cycle(self.hier, self.mats, finest, np.zeros_like(r), r, self.gamma, self.pre_sweeps,
                        self.post_sweeps, self.smoother, self.omega, self.coarse_factor, self.diagonals)

    def as_matrix(self) -> np.ndarray:
        """
        Dense M^-1 built column by column, for small grids only
        """
        n = self.mats[-1].shape[0]
        return np.column_stack([self(e) for e in np.eye(n)])


def pcgmg_solve(hier: GridHierarchy, mats: list, b: np.ndarray, cfg: SolverConfig,
                x0: np.ndarray = None, callback: typing.Callable = None) -> SolveReport:
    if cfg.method != 'pcgmg':
        raise ConfigurationError(f"pcgmg_solve called with method '{cfg.method}'", key='method')
    with Timer() as timer:
        precond = MultigridPreconditioner(hier, mats, cfg.gamma, cfg.pre_sweeps, cfg.post_sweeps, cfg.smoother,
                                          cfg.omega)
        report = pcg_solve(mats[-1], b, precond, cfg.tol, cfg.max_iter, x0, callback, method='pcgmg')
    report.seconds = timer.seconds
    return report
