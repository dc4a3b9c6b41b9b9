"""
    Square-wall optimization sweep over meshes and multigrid levels.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import os
import typing
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from topoptmg.bench.bench_matrix import BenchMatrix, mesh_label
from topoptmg.cli.outputs import emit_outputs
from topoptmg.fem.assembly import MaterialModel
from topoptmg.fem.problems import square_wall_problem
from topoptmg.mto.optimizer import OptimConfig, optimize
from topoptmg.utils.exceptions import ConfigurationError, NumericalError
from topoptmg.utils.utils import info_print, update_progress

accurate_label = 'accurate'
default_wall_meshes = [(16, 16), (32, 32)]
full_wall_meshes = [(32, 32), (32, 64), (64, 64), (64, 128), (128, 128), (128, 256)]
default_wall_levels = [accurate_label, 2, 3, 4, 5, 6]
volume_check = 1e-2


def level_label(level) -> str:
    return accurate_label if level == accurate_label else f"l = {level}"


def cell_config(cfg: OptimConfig, level) -> OptimConfig:
    """
    accurate solves every equilibrium with Cholesky, an integer level runs pcgmg with that many coarsenings
    """
    if level == accurate_label:
        return cfg.copy(solver=cfg.solver.copy(method='cholesky'))
    smoother = cfg.solver.smoother if cfg.solver.smoother != 'gauss_seidel' else 'damped_jacobi'
    return cfg.copy(solver=cfg.solver.copy(method='pcgmg', num_coarsenings=int(level), smoother=smoother))


def stream_record(record):
    info_print(f"iteration {record.iteration}: compliance {record.compliance:.6g}, change {record.change:.3e}, "
               f"solver iterations {record.solver_iterations}")


def _wall_cell(mesh: typing.Tuple[int, int], level, cfg: OptimConfig, mat: MaterialModel,
               out_dir: typing.Optional[str], stream: bool = False) -> tuple:
    nx, ny = mesh
    label = level_label(level)
    try:
        report = optimize(*square_wall_problem(nx, ny), mat, cell_config(cfg, level),
                          callback=stream_record if stream else None)
    except (ConfigurationError, NumericalError) as e:
        info_print(f"{label} failed on {mesh_label(nx, ny)}: {e}")
        return mesh_label(nx, ny), label, None, None, False, str(e)

    volumes_met = bool(np.all(np.abs(report.phase_means() - np.asarray(cfg.volume_fractions)) <= volume_check))
    if out_dir is not None:
        emit_outputs(report, os.path.join(out_dir, mesh_label(nx, ny), str(level)))
    note = '' if volumes_met else 'volume constraint missed'
    return mesh_label(nx, ny), label, report.outer_iterations, report.seconds, report.converged and volumes_met, note


def run_wall_sweep(meshes: typing.Sequence[typing.Tuple[int, int]] = tuple(default_wall_meshes),
                   levels: typing.Sequence = tuple(default_wall_levels), cfg: OptimConfig = None,
                   mat: MaterialModel = None, out_dir: str = None, parallel: bool = False,
                   verbose: bool = False, stream: bool = False) -> BenchMatrix:
    """
    One full optimization per (mesh, level) cell

    Args:
        meshes: (nx, ny) element counts
        levels: 'accurate' and/or coarsening counts
        cfg: Optimization settings shared by every cell, OptimConfig() when None
        mat: Phase moduli, [9, 3, 1, 1e-9] with nu = 0.3 and p = 3 when None
        out_dir: When given, each cell writes its history and images under out_dir/<mesh>/<level>/
        parallel: Run cells in a process pool
        verbose: Show a progress bar over the cells
        stream: Print every outer iteration of every cell to stderr
    """
    cfg = cfg if cfg is not None else OptimConfig()
    mat = mat if mat is not None else MaterialModel([9.0, 3.0, 1.0, 1e-9])
    cells = [(tuple(mesh), level) for mesh in meshes for level in levels]

    matrix = BenchMatrix()
    if parallel:
        info_print('Running sweep cells in parallel, wall times are unreliable')
        with ProcessPoolExecutor() as executor:
            futures = [executor.submit(_wall_cell, mesh, level, cfg, mat, out_dir, stream) for mesh, level in cells]
            for count, future in enumerate(futures):
                matrix.add(*future.result())
                if verbose:
                    update_progress((count + 1) / len(cells))
        return matrix

    for count, (mesh, level) in enumerate(cells):
        matrix.add(*_wall_cell(mesh, level, cfg, mat, out_dir, stream))
        if verbose:
            update_progress((count + 1) / len(cells))
    return matrix
