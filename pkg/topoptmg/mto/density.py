"""
    Multi-phase element densities and the SIMP modulus interpolation.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import typing

import numpy as np

from topoptmg.utils.exceptions import ConfigurationError, DimensionError

if typing.TYPE_CHECKING:
    from topoptmg.fem.assembly import MaterialModel

DEFAULT_DENSITY_FLOOR = 1e-3


class DensityField:
    def __init__(self, alpha: np.ndarray, nx: int, ny: int, floor: float = DEFAULT_DENSITY_FLOOR):
        """
        Args:
            alpha: (num_phases x num_elements) fractions, elements in the grid's column-major order
            nx: Element count in x
            ny: Element count in y
            floor: Lower bound epsilon shared by every phase
        """
        alpha = np.asarray(alpha, dtype=float)
        if alpha.ndim != 2 or alpha.shape[1] != nx * ny:
            raise DimensionError(f"Density of shape {alpha.shape} does not match a {nx}x{ny} grid")
        self.alpha = alpha
        self.nx = nx
        self.ny = ny
        self.floor = floor

    @classmethod
    def uniform(cls, nx: int, ny: int, volume_fractions: typing.Sequence[float],
                floor: float = DEFAULT_DENSITY_FLOOR) -> 'DensityField':
        fractions = np.asarray(volume_fractions, dtype=float)
        if np.any(fractions < floor) or np.any(fractions > 1):
            raise ConfigurationError(f"Volume fractions {fractions.tolist()} fall outside [{floor}, 1]",
                                     key='volume_fractions')
        return cls(np.repeat(fractions[:, np.newaxis], nx * ny, axis=1), nx, ny, floor)

    @property
    def num_phases(self) -> int:
        return self.alpha.shape[0]

    @property
    def num_elements(self) -> int:
        return self.alpha.shape[1]

    def phase_means(self) -> np.ndarray:
        return self.alpha.mean(axis=1)

    def partition_error(self) -> float:
        return float(np.abs(self.alpha.sum(axis=0) - 1.0).max())

    def bounds_violation(self) -> float:
        below = self.floor - self.alpha.min()
        above = self.alpha.max() - 1.0
        return float(max(below, above, 0.0))

    def phase_image(self, phase: int) -> np.ndarray:
        """
        (ny x nx) array with row 0 at the top of the domain
        """
        return self.alpha[phase].reshape(self.nx, self.ny).T[::-1]

    def copy(self) -> 'DensityField':
        return DensityField(self.alpha.copy(), self.nx, self.ny, self.floor)


def effective_modulus(alpha_e: np.ndarray, mat: 'MaterialModel'):
    """
    E(alpha) = sum_i alpha_i^p E_i. alpha_e is (num_phases,) for one element or (num_phases x n) for many
    """
    return np.tensordot(mat.phase_moduli, np.asarray(alpha_e, dtype=float) ** mat.p_exp, axes=1)
