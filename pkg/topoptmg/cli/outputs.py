"""
    Artifact writers: convergence history, density images and benchmark tables.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import os
import typing

import numpy as np

from topoptmg.bench.bench_matrix import BenchMatrix
from topoptmg.mto.density import DensityField
from topoptmg.mto.optimizer import OptimReport

# material phases cycle through red, green and blue; the last phase (void) is white
phase_colors = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])


def _write_bytes(path: str, data: bytes):
    try:
        with open(path, 'wb') as f:
            f.write(data)
    except OSError as e:
        raise OSError(f"Could not write {path}: {e}") from e


def _write_text(path: str, text: str):
    _write_bytes(path, text.encode('utf-8'))


def pgm_bytes(image: np.ndarray) -> bytes:
    """
    Binary 8-bit grayscale PGM of a (rows x columns) array of values in [0, 1]
    """
    pixels = np.clip(np.round(255 * image), 0, 255).astype(np.uint8)
    height, width = pixels.shape
    return f"P5\n{width} {height}\n255\n".encode('ascii') + pixels.tobytes()


def composite_image(density: DensityField) -> np.ndarray:
    """
    (ny x nx x 3) RGB array in [0, 1], each element a mix of its phase colors weighted by the fractions
    """
    rgb = np.zeros((density.ny, density.nx, 3))
    for phase in range(density.num_phases - 1):
        rgb += density.phase_image(phase)[:, :, np.newaxis] * phase_colors[phase % len(phase_colors)]
    rgb += density.phase_image(density.num_phases - 1)[:, :, np.newaxis]
    return rgb


def ppm_bytes(rgb: np.ndarray) -> bytes:
    pixels = np.clip(np.round(255 * rgb), 0, 255).astype(np.uint8)
    height, width, _ = pixels.shape
    return f"P6\n{width} {height}\n255\n".encode('ascii') + pixels.tobytes()


def write_history(report: OptimReport, path: str):
    try:
        report.history.to_csv(path, index=False)
    except OSError as e:
        raise OSError(f"Could not write {path}: {e}") from e


def write_density_images(density: DensityField, out_dir: str) -> typing.List[str]:
    paths = []
    for phase in range(density.num_phases):
        path = os.path.join(out_dir, f"phase_{phase}.pgm")
        _write_bytes(path, pgm_bytes(density.phase_image(phase)))
        paths.append(path)
    path = os.path.join(out_dir, 'composite.ppm')
    _write_bytes(path, ppm_bytes(composite_image(density)))
    paths.append(path)
    return paths


def write_table(matrix: BenchMatrix, path: str):
    _write_text(path, matrix.to_markdown())


def emit_outputs(report: typing.Union[OptimReport, BenchMatrix], out_dir: str, images: bool = True,
                 csv: bool = True) -> typing.List[str]:
    """
    Write the artifacts of an optimization run or a benchmark table into out_dir

    Args:
        report: OptimReport gives history.csv and the density images, BenchMatrix gives table.md
        out_dir: Created when missing
        images: Write the PGM and PPM images of an OptimReport
        csv: Write history.csv of an OptimReport
    Returns:
        Paths written
    """
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as e:
        raise OSError(f"Could not create {out_dir}: {e}") from e

    written = []
    if isinstance(report, BenchMatrix):
        path = os.path.join(out_dir, 'table.md')
        write_table(report, path)
        return [path]

    if csv:
        path = os.path.join(out_dir, 'history.csv')
        write_history(report, path)
        written.append(path)
    if images:
        written += write_density_images(report.density, out_dir)
    return written
