"""
    Alternating active-phase optimizer: Gauss-Seidel sweep of binary OC updates around an equilibrium solve.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import itertools
import time
import typing

import numpy as np
import pandas as pd

from topoptmg.fem.assembly import BoundaryConditions, MaterialModel, assemble_elasticity, compliance, \
    element_energies
from topoptmg.grid.hierarchy import GridLevel, build_hierarchy
from topoptmg.mto.density import DEFAULT_DENSITY_FLOOR, DensityField
from topoptmg.mto.filters import SensitivityFilter
from topoptmg.mto.optimality_criteria import oc_update_pair
from topoptmg.mto.sensitivities import sensitivities_from_energies
from topoptmg.solvers.solve import solve
from topoptmg.solvers.solver_config import SolverConfig
from topoptmg.utils.exceptions import ConfigurationError, DimensionError
from topoptmg.utils.utils import AttributeDict

history_columns = ['iteration', 'compliance', 'change', 'solver_iterations', 'seconds']


class OptimConfig:
    def __init__(self, volume_fractions: typing.Sequence[float] = (0.16, 0.08, 0.08, 0.68),
                 filter_radius: float = 8.0, filter_tol: float = 0.05, tol: float = 1e-3, inner_sweeps: int = 1,
                 move: float = 0.2, move_shrink: float = 0.7, oc_damping: float = 0.5,
                 density_floor: float = DEFAULT_DENSITY_FLOOR,
                 max_outer: int = 2000, warm_start: bool = False, solver: SolverConfig = None):
        """
        Args:
            volume_fractions: Target mean fraction per phase, void last, summing to one
            filter_radius: Sensitivity filter radius r_f in elements
            filter_tol: Stop repeating a pair update once its largest change is at most this
            tol: Outer stopping tolerance on the largest density change of a full sweep
            inner_sweeps: Most repeats of each pair update per outer iteration
            move: OC move limit
            move_shrink: Factor applied to an entry's move limit each time its step reverses direction
            oc_damping: OC damping exponent eta
            density_floor: Lower bound epsilon on every fraction
            max_outer: Safety cap on outer iterations
            warm_start: Start each iterative solve from the previous displacement
            solver: Linear solver settings, pcgmg defaults when None
        """
        self.volume_fractions = [float(v) for v in volume_fractions]
        self.filter_radius = float(filter_radius)
        self.filter_tol = float(filter_tol)
        self.tol = float(tol)
        self.inner_sweeps = int(inner_sweeps)
        self.move = float(move)
        self.move_shrink = float(move_shrink)
        self.oc_damping = float(oc_damping)
        self.density_floor = float(density_floor)
        self.max_outer = int(max_outer)
        self.warm_start = bool(warm_start)
        self.solver = solver if solver is not None else SolverConfig()
        self.validate()

    def validate(self):
        fractions = np.asarray(self.volume_fractions)
        if len(fractions) < 2:
            raise ConfigurationError("At least two volume fractions are required", key='volume_fractions')
        if abs(fractions.sum() - 1.0) > 1e-12:
            raise ConfigurationError(f"Volume fractions must sum to 1, got {fractions.sum():.12g}",
                                     key='volume_fractions')
        if np.any(fractions <= 0) or np.any(fractions >= 1):
            raise ConfigurationError("Every volume fraction must lie in (0, 1)", key='volume_fractions')
        if not 0 < self.density_floor < fractions.min():
            raise ConfigurationError(f"density_floor must lie in (0, {fractions.min()})", key='density_floor')
        if self.filter_radius < 0:
            raise ConfigurationError(f"filter_radius must be non-negative, got {self.filter_radius}",
                                     key='filter_radius')
        if self.filter_tol <= 0:
            raise ConfigurationError(f"filter_tol must be positive, got {self.filter_tol}", key='filter_tol')
        if self.tol <= 0:
            raise ConfigurationError(f"tol must be positive, got {self.tol}", key='tol')
        if self.inner_sweeps < 1:
            raise ConfigurationError(f"inner_sweeps must be at least 1, got {self.inner_sweeps}", key='inner_sweeps')
        if not 0 < self.move <= 1:
            raise ConfigurationError(f"move must lie in (0, 1], got {self.move}", key='move')
        if not 0 < self.move_shrink <= 1:
            raise ConfigurationError(f"move_shrink must lie in (0, 1], got {self.move_shrink}", key='move_shrink')
        if not 0 < self.oc_damping <= 1:
            raise ConfigurationError(f"oc_damping must lie in (0, 1], got {self.oc_damping}", key='oc_damping')
        if self.max_outer < 1:
            raise ConfigurationError(f"max_outer must be at least 1, got {self.max_outer}", key='max_outer')
        self.solver.validate()

    @property
    def num_phases(self) -> int:
        return len(self.volume_fractions)

    def copy(self, **changes) -> 'OptimConfig':
        settings = dict(self.__dict__)
        settings.update(changes)
        return OptimConfig(**settings)

    def __eq__(self, other):
        return isinstance(other, OptimConfig) and self.__dict__ == other.__dict__

    def __repr__(self):
        return 'OptimConfig(' + ', '.join(f"{k}={v!r}" for k, v in self.__dict__.items()) + ')'


class OptimReport:
    def __init__(self, density: DensityField, history: pd.DataFrame, converged: bool, seconds: float):
        self.density = density
        self.history = history
        self.converged = converged
        self.seconds = seconds

    @property
    def outer_iterations(self) -> int:
        return len(self.history)

    @property
    def solver_iterations(self) -> int:
        return int(self.history['solver_iterations'].sum())

    @property
    def compliance(self) -> float:
        return float(self.history['compliance'].iloc[-1])

    def phase_means(self) -> np.ndarray:
        return self.density.phase_means()

    def __str__(self):
        return_string = "\n"
        return_string += "Optimization Report: \n"
        rows = {
            'Grid': f"{self.density.nx}x{self.density.ny}",
            'Outer iterations': self.outer_iterations,
            'Converged': self.converged,
            'Final compliance': f"{self.compliance:.6g}",
            'Final change': f"{self.history['change'].iloc[-1]:.3e}",
            'Linear solver iterations': self.solver_iterations,
            'Phase means': ', '.join(f"{v:.4f}" for v in self.phase_means()),
            'Time (s)': f"{self.seconds:.3f}",
        }
        for key, value in rows.items():
            spaces_needed = 33 - len(key)
            return_string += key + ": " + (' ' * spaces_needed) + str(value) + "\n"
        return return_string


def _pair_bounds(density: DensityField, anchor: np.ndarray, moves: np.ndarray, a: int, b: int):
    # alpha_a and s_e - alpha_a both stay within the sweep's per-phase boxes
    pair_sum = density.alpha[a] + density.alpha[b]
    lower = np.maximum(anchor[a] - moves[a], pair_sum - anchor[b] - moves[b])
    upper = np.minimum(anchor[a] + moves[a], pair_sum - anchor[b] + moves[b])
    return lower, upper


def _sweep_pairs(density: DensityField, energies: np.ndarray, mat: MaterialModel, flt: SensitivityFilter,
                 cfg: OptimConfig, moves: np.ndarray):
    anchor = density.alpha.copy()
    for a, b in itertools.combinations(range(density.num_phases), 2):
        for _ in range(cfg.inner_sweeps):
            raw = sensitivities_from_energies(energies, density, mat, (a, b))
            filtered = flt.apply(raw, density.alpha[[a, b]])
            change = oc_update_pair(density, a, b, filtered[0], filtered[1], cfg.volume_fractions[a], cfg.move,
                                    cfg.oc_damping, bounds=_pair_bounds(density, anchor, moves, a, b))
            if change <= cfg.filter_tol:
                break


def _shrink_moves(moves: np.ndarray, directions: np.ndarray, delta: np.ndarray, cfg: OptimConfig):
    """
    Shrink the move limit of every entry whose last two significant steps went opposite ways.
    directions holds the sign of the last step larger than tol and is updated in place.
    """
    significant = np.abs(delta) > cfg.tol
    step = np.sign(delta)
    reversed_ = significant & (directions * step < 0)
    moves[reversed_] *= cfg.move_shrink
    directions[significant] = step[significant]


def optimize(level: GridLevel, bc: BoundaryConditions, mat: MaterialModel, cfg: OptimConfig,
             callback: typing.Callable = None) -> OptimReport:
    """
    Minimize compliance under one volume constraint per phase

    Args:
        level: Finest elasticity grid
        bc: Supports and loads on that grid
        mat: Phase moduli, Poisson ratio and penalty
        cfg: Optimization and solver settings
        callback: Called with an AttributeDict record (iteration, compliance, change, solver_iterations,
            seconds) after every outer iteration
    """
    if cfg.num_phases != mat.num_phases:
        raise DimensionError(f"{cfg.num_phases} volume fractions for {mat.num_phases} material phases")

    hierarchy = None
    if cfg.solver.method == 'pcgmg':
        hierarchy = build_hierarchy(level.nx, level.ny, cfg.solver.num_coarsenings, dofs_per_node=2)

    density = DensityField.uniform(level.nx, level.ny, cfg.volume_fractions, cfg.density_floor)
    flt = SensitivityFilter(level.nx, level.ny, cfg.filter_radius)
    k_hat = mat.unit_stiffness()
    moves = np.full(density.alpha.shape, cfg.move)
    directions = np.zeros(density.alpha.shape)

    records = []
    U = None
    converged = False
    start = time.perf_counter()
    for iteration in range(1, cfg.max_outer + 1):
        iteration_start = time.perf_counter()
        K, F = assemble_elasticity(level, density, mat, bc)
        solved = solve(K, F, cfg.solver, hierarchy, U if cfg.warm_start else None)
        U = solved.solution
        energies = element_energies(level, U, k_hat)

        previous = density.alpha.copy()
        _sweep_pairs(density, energies, mat, flt, cfg, moves)
        delta = density.alpha - previous
        _shrink_moves(moves, directions, delta, cfg)
        change = float(np.abs(delta).max())

        record = AttributeDict({
            'iteration': iteration,
            'compliance': compliance(K, U),
            'change': change,
            'solver_iterations': solved.iterations,
            'seconds': round(time.perf_counter() - iteration_start, 3),
        })
        records.append(record)
        if callback is not None:
            callback(record)
        if change <= cfg.tol:
            converged = True
            break

    history = pd.DataFrame(records, columns=history_columns)
    return OptimReport(density, history, converged, round(time.perf_counter() - start, 3))
