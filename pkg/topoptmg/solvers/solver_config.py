"""
    Linear solver settings.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

from topoptmg.utils.exceptions import ConfigurationError

supported_methods = ['cholesky', 'jacobi', 'damped_jacobi', 'gauss_seidel', 'cg', 'pcgmg']
stationary_methods = ['jacobi', 'damped_jacobi', 'gauss_seidel']
symmetric_smoothers = ['jacobi', 'damped_jacobi']


def normalize_method(name: str) -> str:
    # the CLI spells methods with dashes
    return str(name).strip().lower().replace('-', '_')


class SolverConfig:
    def __init__(self, method: str = 'pcgmg', tol: float = 1e-6, max_iter: int = 1000, omega: float = 0.6,
                 gamma: int = 1, pre_sweeps: int = 2, post_sweeps: int = 2, num_coarsenings: int = 2,
                 smoother: str = 'damped_jacobi'):
        """
        Args:
            method: One of supported_methods
            tol: Relative residual tolerance ||b - Ax|| / ||b||
            max_iter: Iteration cap for every iterative method
            omega: Damping of the damped Jacobi iteration, in (0, 1]
            gamma: Coarse visits per multigrid cycle, 1 = V-cycle, 2 = W-cycle
            pre_sweeps: Smoothing sweeps before the coarse-grid correction
            post_sweeps: Smoothing sweeps after the coarse-grid correction
            num_coarsenings: Number of times the finest grid is halved
            smoother: Smoother used inside the multigrid cycle
        """
        self.method = normalize_method(method)
        self.tol = float(tol)
        self.max_iter = int(max_iter)
        self.omega = float(omega)
        self.gamma = int(gamma)
        self.pre_sweeps = int(pre_sweeps)
        self.post_sweeps = int(post_sweeps)
        self.num_coarsenings = int(num_coarsenings)
        self.smoother = normalize_method(smoother)
        self.validate()

    def validate(self):
        if self.method not in supported_methods:
            raise ConfigurationError(f"Unknown solver method '{self.method}', expected one of {supported_methods}",
                                     key='method')
        if not self.tol > 0:
            raise ConfigurationError(f"tol must be positive, got {self.tol}", key='cgtol')
        if self.max_iter < 1:
            raise ConfigurationError(f"max_iter must be at least 1, got {self.max_iter}", key='cg_max')
        if not 0 < self.omega <= 1:
            raise ConfigurationError(f"omega must lie in (0, 1], got {self.omega}", key='omega')
        if self.gamma not in (1, 2):
            raise ConfigurationError(f"gamma must be 1 (V-cycle) or 2 (W-cycle), got {self.gamma}", key='gamma')
        if self.pre_sweeps < 0 or self.post_sweeps < 0:
            raise ConfigurationError("Sweep counts must be non-negative", key='pre_sweeps')
        if self.num_coarsenings < 0:
            raise ConfigurationError(f"num_coarsenings must be non-negative, got {self.num_coarsenings}",
                                     key='mg_levels')
        if self.smoother not in stationary_methods:
            raise ConfigurationError(f"Unknown smoother '{self.smoother}'", key='smoother')
        if self.method == 'pcgmg':
            # CG needs a symmetric preconditioner
            if self.smoother not in symmetric_smoothers:
                raise ConfigurationError("pcgmg requires a Jacobi-family smoother", key='smoother')
            if self.pre_sweeps != self.post_sweeps:
                raise ConfigurationError("pcgmg requires pre_sweeps == post_sweeps", key='pre_sweeps')

    def copy(self, **changes) -> 'SolverConfig':
        settings = dict(self.__dict__)
        settings.update(changes)
        return SolverConfig(**settings)

    def __eq__(self, other):
        return isinstance(other, SolverConfig) and self.__dict__ == other.__dict__

    def __repr__(self):
        return 'SolverConfig(' + ', '.join(f"{k}={v!r}" for k, v in self.__dict__.items()) + ')'
