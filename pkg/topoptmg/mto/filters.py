"""
    Density-weighted sensitivity filter on the element grid.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import math

import numpy as np
import scipy.sparse as sp

from topoptmg.utils.exceptions import ConfigurationError, DimensionError


class SensitivityFilter:
    """
    Weights w_ej = max(0, r_f - dist(e, j)) between element centroids, stored as a sparse matrix H with row sums Hs.
    Elements are numbered e = ex * ny + ey like the grid.
    """

    def __init__(self, nx: int, ny: int, radius: float):
        if radius < 0:
            raise ConfigurationError(f"Filter radius must be non-negative, got {radius}", key='filter_radius')
        self.nx = nx
        self.ny = ny
        self.radius = float(radius)
        self.H = self._weights() if self.is_active else None
        self.Hs = np.asarray(self.H.sum(axis=1)).ravel() if self.is_active else None

    @property
    def is_active(self) -> bool:
        # with r_f <= 1 every neighbour weight is zero and only the element itself remains
        return self.radius > 1

    def _weights(self) -> sp.csr_matrix:
        reach = int(math.ceil(self.radius)) - 1
        ex, ey = np.meshgrid(np.arange(self.nx), np.arange(self.ny), indexing='ij')
        ex = ex.ravel()
        ey = ey.ravel()
        rows, cols, vals = [], [], []
        for dx in range(-reach, reach + 1):
            for dy in range(-reach, reach + 1):
                weight = self.radius - math.sqrt(dx * dx + dy * dy)
                if weight <= 0:
                    continue
                jx = ex + dx
                jy = ey + dy
                inside = (jx >= 0) & (jx < self.nx) & (jy >= 0) & (jy < self.ny)
                rows.append((ex * self.ny + ey)[inside])
                cols.append((jx * self.ny + jy)[inside])
                vals.append(np.full(inside.sum(), weight))
        n = self.nx * self.ny
        return sp.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                             shape=(n, n)).tocsr()

    def apply(self, raw: np.ndarray, alpha: np.ndarray) -> np.ndarray:
        """
        s_hat_e = sum_j w_ej alpha_j s_j / (alpha_e sum_j w_ej), row by row when given a (phases x elements) block

        Args:
            raw: Sensitivities of one phase (num_elements,) or several (k x num_elements)
            alpha: Fractions of the same phases, same shape as raw
        """
        raw = np.asarray(raw, dtype=float)
        alpha = np.asarray(alpha, dtype=float)
        if raw.shape != alpha.shape or raw.shape[-1] != self.nx * self.ny:
            raise DimensionError(f"Sensitivities {raw.shape} and fractions {alpha.shape} do not match a "
                                 f"{self.nx}x{self.ny} grid")
        if not self.is_active:
            return raw.copy()
        if raw.ndim == 1:
            return (self.H @ (alpha * raw)) / (alpha * self.Hs)
        return (self.H @ (alpha * raw).T).T / (alpha * self.Hs[np.newaxis, :])


def filter_sensitivities(raw: np.ndarray, alpha: np.ndarray, radius: float, nx: int, ny: int) -> np.ndarray:
    return SensitivityFilter(nx, ny, radius).apply(raw, alpha)
