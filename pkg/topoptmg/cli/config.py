"""
    Run settings: defaults, the flat key = value file format and conversion into solver/optimizer configs.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.

    File format, one pair per line:
        # comment
        mesh = 32x32, 32x64
        volume_fractions = 0.16, 0.08, 0.08, 0.68
        warm_start = false
"""

import copy
import typing

from topoptmg.fem.assembly import MaterialModel
from topoptmg.mto.optimizer import OptimConfig
from topoptmg.solvers.solver_config import SolverConfig, normalize_method
from topoptmg.utils.exceptions import ConfigurationError
from topoptmg.utils.utils import AttributeDict

default_run_settings = {
    # grids
    'mesh': ['16x16', '32x32'],
    'grids': [16, 32, 64, 128, 256],
    # linear solver
    'method': 'pcgmg',
    'methods': ['pcgmg', 'cholesky', 'gauss_seidel', 'jacobi'],
    'cgtol': 1e-6,
    'cg_max': 1000,
    'omega': 0.6,
    'gamma': 1,
    'pre_sweeps': 2,
    'post_sweeps': 2,
    'mg_levels': 2,
    'smoother': 'damped_jacobi',
    'levels': ['accurate', 2, 3, 4, 5, 6],
    'cholesky_cap': 128,
    # materials and optimization
    'moduli': [9.0, 3.0, 1.0, 1e-9],
    'volume_fractions': [0.16, 0.08, 0.08, 0.68],
    'poisson_ratio': 0.3,
    'penalty': 3.0,
    'filter_radius': 8.0,
    'filter_tol': 0.05,
    'tol': 1e-3,
    'inner_sweeps': 1,
    'move': 0.2,
    'move_shrink': 0.7,
    'oc_damping': 0.5,
    'density_floor': 1e-3,
    'max_outer': 2000,
    'warm_start': False,
    # outputs, an empty out_dir falls back to $TOPOPT_OUT
    'out_dir': '',
    'images': True,
    'csv': True,
    'parallel': False,
}

# list settings whose entries are not floats
list_item_types = {
    'mesh': str,
    'grids': int,
    'methods': str,
    'levels': None,
}


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ('true', 'yes', '1', 'on'):
        return True
    if lowered in ('false', 'no', '0', 'off'):
        return False
    raise ValueError(f"'{text}' is not a boolean")


def _parse_level(text: str):
    return 'accurate' if text.strip().lower() == 'accurate' else int(text)


def parse_value(key: str, text, line: int = None):
    """
    Convert the text of one setting to the type of its default

    Args:
        key: Setting name, must exist in default_run_settings
        text: Raw text, already-typed values pass through the same checks
        line: Line in the config file, for error messages
    """
    if key not in default_run_settings:
        raise ConfigurationError(f"Unknown setting '{key}'", key=key, line=line)
    default = default_run_settings[key]
    try:
        if isinstance(default, list):
            if isinstance(text, str):
                items = [item.strip() for item in text.split(',') if item.strip()]
            else:
                items = list(text)
            item_type = list_item_types.get(key, float)
            if item_type is None:
                return [_parse_level(str(item)) for item in items]
            return [item_type(item) if item_type is not str else str(item).strip() for item in items]
        if isinstance(default, bool):
            return text if isinstance(text, bool) else _parse_bool(str(text))
        if isinstance(default, int):
            return int(text)
        if isinstance(default, float):
            return float(text)
        return str(text).strip()
    except ValueError as e:
        raise ConfigurationError(f"Could not parse {key} = {text}: {e}", key=key, line=line) from e


def parse_mesh(text: str) -> typing.Tuple[int, int]:
    try:
        nx, ny = (int(part) for part in text.lower().split('x'))
    except ValueError as e:
        raise ConfigurationError(f"Mesh must look like 32x64, got '{text}'", key='mesh') from e
    if nx < 1 or ny < 1:
        raise ConfigurationError(f"Mesh must have at least one element per direction, got '{text}'", key='mesh')
    return nx, ny


def read_config_file(path: str) -> typing.Tuple[dict, dict]:
    """
    Returns:
        (settings found in the file, line number of each setting)
    """
    settings = {}
    lines = {}
    with open(path, 'r') as f:
        for number, raw in enumerate(f, start=1):
            text = raw.split('#', 1)[0].strip()
            if not text:
                continue
            if '=' not in text:
                raise ConfigurationError(f"Expected 'key = value', got '{text}'", line=number)
            key, value = (part.strip() for part in text.split('=', 1))
            settings[key] = parse_value(key, value, number)
            lines[key] = number
    return settings, lines


def validate_settings(settings: AttributeDict):
    for mesh in settings.mesh:
        parse_mesh(mesh)
    for method in settings.methods:
        SolverConfig(method=method, smoother='damped_jacobi')
    for level in settings.levels:
        if level != 'accurate' and level < 0:
            raise ConfigurationError(f"Multigrid level must be non-negative, got {level}", key='levels')
    material_model(settings)
    optim_config(settings)
    if len(settings.moduli) != len(settings.volume_fractions):
        raise ConfigurationError(f"{len(settings.volume_fractions)} volume fractions for {len(settings.moduli)} "
                                 f"moduli", key='volume_fractions')


def parse_config(path: str = None, overrides: dict = None) -> AttributeDict:
    """
    Defaults, then the file, then the overrides. Every value is validated before returning.

    Args:
        path: Optional key = value file
        overrides: Settings from command line flags, None values are ignored
    """
    settings = AttributeDict(copy.deepcopy(default_run_settings))
    lines = {}
    if path is not None:
        try:
            found, lines = read_config_file(path)
        except OSError as e:
            raise OSError(f"Could not read config {path}: {e}") from e
        settings.update(found)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        settings[key] = parse_value(key, value)
        lines.pop(key, None)

    settings.method = normalize_method(settings.method)
    settings.smoother = normalize_method(settings.smoother)
    settings.methods = [normalize_method(m) for m in settings.methods]
    try:
        validate_settings(settings)
    except ConfigurationError as e:
        if e.key in lines and e.line is None:
            raise ConfigurationError(str(e), key=e.key, line=lines[e.key]) from e
        raise
    return settings


def format_value(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, list):
        return ', '.join(format_value(item) for item in value)
    return repr(value) if isinstance(value, float) else str(value)


def write_config(settings: dict, path: str):
    try:
        with open(path, 'w') as f:
            f.write('# topopt-mg run settings\n')
            for key in default_run_settings:
                f.write(f"{key} = {format_value(settings[key])}\n")
    except OSError as e:
        raise OSError(f"Could not write {path}: {e}") from e


def solver_config(settings: AttributeDict, method: str = None) -> SolverConfig:
    return SolverConfig(method=method if method is not None else settings.method, tol=settings.cgtol,
                        max_iter=settings.cg_max, omega=settings.omega, gamma=settings.gamma,
                        pre_sweeps=settings.pre_sweeps, post_sweeps=settings.post_sweeps,
                        num_coarsenings=settings.mg_levels, smoother=settings.smoother)


def material_model(settings: AttributeDict) -> MaterialModel:
    return MaterialModel(settings.moduli, settings.poisson_ratio, settings.penalty)


def optim_config(settings: AttributeDict) -> OptimConfig:
    return OptimConfig(volume_fractions=settings.volume_fractions, filter_radius=settings.filter_radius,
                       filter_tol=settings.filter_tol, tol=settings.tol, inner_sweeps=settings.inner_sweeps,
                       move=settings.move, move_shrink=settings.move_shrink, oc_damping=settings.oc_damping,
                       density_floor=settings.density_floor,
                       max_outer=settings.max_outer, warm_start=settings.warm_start,
                       solver=solver_config(settings))
