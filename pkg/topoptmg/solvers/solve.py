"""
    Dispatch a linear solve to the configured method.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import numpy as np

from topoptmg.grid.hierarchy import GridHierarchy
from topoptmg.solvers.cholesky import cholesky_direct_solve
from topoptmg.solvers.krylov import cg_solve
from topoptmg.solvers.multigrid import pcgmg_solve
from topoptmg.solvers.solve_report import SolveReport
from topoptmg.solvers.solver_config import SolverConfig, stationary_methods
from topoptmg.solvers.stationary import stationary_solve
from topoptmg.utils.exceptions import ConfigurationError
from topoptmg.utils.utils import Timer


def solve(A, b: np.ndarray, cfg: SolverConfig, hierarchy: GridHierarchy = None,
          x0: np.ndarray = None) -> SolveReport:
    """
    Solve A x = b with cfg.method. The reported time covers setup, including the Galerkin products for pcgmg.

    Args:
        A: Assembled system on the finest level
        b: Right-hand side
        cfg: Solver settings
        hierarchy: Required for pcgmg
        x0: Warm start for cg and pcgmg, ignored by the other methods
    """
    with Timer() as timer:
        if cfg.method == 'cholesky':
            report = cholesky_direct_solve(A, b)
        elif cfg.method in stationary_methods:
            report = stationary_solve(A, b, cfg.method, cfg.omega, cfg.tol, cfg.max_iter)
        elif cfg.method == 'cg':
            report = cg_solve(A, b, cfg.tol, cfg.max_iter, x0)
        else:
            if hierarchy is None:
                raise ConfigurationError("pcgmg needs a grid hierarchy", key='mg_levels')
            report = pcgmg_solve(hierarchy, hierarchy.galerkin_operators(A), b, cfg, x0)
    report.seconds = timer.seconds
    return report
