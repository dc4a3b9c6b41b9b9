"""
    Nested structured quad grids and the transfer operators between them.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.

    Mesh conventions:
    - Node numbering is column-major, starting at the lower-left corner:
      index = x * (ny + 1) + y
      2---5---8
      |   |   |
      1---4---7
      |   |   |
      0---3---6
    - Element numbering follows the same order: e = ex * ny + ey
    - Element nodes run counter-clockwise from the lower-left node
    - Dof numbering interleaves the components of a node: dof = node * dofs_per_node + component
"""

import typing

import numpy as np
import scipy.sparse as sp

from topoptmg.utils.exceptions import ConfigurationError, DimensionError
from topoptmg.utils.utils import check_length


class GridLevel:
    def __init__(self, nx: int, ny: int, dofs_per_node: int = 1, level_index: int = 0):
        if nx < 1 or ny < 1:
            raise ConfigurationError(f"Grid must have at least one element in each direction, got {nx}x{ny}")
        if dofs_per_node not in (1, 2):
            raise ConfigurationError(f"dofs_per_node must be 1 or 2, got {dofs_per_node}")
        self.nx = nx
        self.ny = ny
        self.dofs_per_node = dofs_per_node
        self.level_index = level_index

    @property
    def num_nodes(self) -> int:
        return (self.nx + 1) * (self.ny + 1)

    @property
    def num_dofs(self) -> int:
        return self.dofs_per_node * self.num_nodes

    @property
    def num_elements(self) -> int:
        return self.nx * self.ny

    def node_index(self, x, y):
        return x * (self.ny + 1) + y

    def node_coordinates(self) -> np.ndarray:
        """
        Returns:
            (num_nodes x 2) integer array of (x, y) positions in element units
        """
        xs, ys = np.meshgrid(np.arange(self.nx + 1), np.arange(self.ny + 1), indexing='ij')
        return np.column_stack((xs.ravel(), ys.ravel()))

    def element_centroids(self) -> np.ndarray:
        ex, ey = np.meshgrid(np.arange(self.nx), np.arange(self.ny), indexing='ij')
        return np.column_stack((ex.ravel() + 0.5, ey.ravel() + 0.5))

    def element_nodes(self) -> np.ndarray:
        """
        Connectivity matrix, one row of four node indices per element
        """
        ex, ey = np.meshgrid(np.arange(self.nx), np.arange(self.ny), indexing='ij')
        ex = ex.ravel()
        ey = ey.ravel()
        return np.column_stack((self.node_index(ex, ey),
                                self.node_index(ex + 1, ey),
                                self.node_index(ex + 1, ey + 1),
                                self.node_index(ex, ey + 1)))

    def element_dofs(self) -> np.ndarray:
        nodes = self.element_nodes()
        if self.dofs_per_node == 1:
            return nodes
        edofs = np.zeros((self.num_elements, 8), dtype=int)
        edofs[:, 0::2] = 2 * nodes
        edofs[:, 1::2] = 2 * nodes + 1
        return edofs

    def coarsened(self) -> 'GridLevel':
        return GridLevel(self.nx // 2, self.ny // 2, self.dofs_per_node, self.level_index - 1)

    def __eq__(self, other):
        return isinstance(other, GridLevel) and (self.nx, self.ny, self.dofs_per_node, self.level_index) == \
            (other.nx, other.ny, other.dofs_per_node, other.level_index)

    def __repr__(self):
        return f"GridLevel({self.nx}x{self.ny}, dofs_per_node={self.dofs_per_node}, level={self.level_index})"


def _interpolation_1d(n_coarse: int) -> sp.csr_matrix:
    # coarse node j sits on fine node 2j; odd fine nodes take the mean of their two coarse neighbours
    n_fine = 2 * n_coarse
    rows = [2 * np.arange(n_coarse + 1)]
    cols = [np.arange(n_coarse + 1)]
    vals = [np.ones(n_coarse + 1)]
    odd = 2 * np.arange(n_coarse) + 1
    for offset in (0, 1):
        rows.append(odd)
        cols.append(np.arange(n_coarse) + offset)
        vals.append(np.full(n_coarse, 0.5))
    return sp.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                         shape=(n_fine + 1, n_coarse + 1)).tocsr()


def bilinear_prolongation(coarse: GridLevel) -> sp.csr_matrix:
    """
    Bilinear interpolation from a coarse level to the level with twice as many elements in each direction.
    With the column-major node order the 2D operator is the Kronecker product of the 1D ones, and each
    vector component is interpolated independently.
    """
    nodal = sp.kron(_interpolation_1d(coarse.nx), _interpolation_1d(coarse.ny), format='csr')
    if coarse.dofs_per_node == 1:
        return nodal
    return sp.kron(nodal, sp.identity(coarse.dofs_per_node), format='csr')


class GridHierarchy:
    def __init__(self, levels: typing.List[GridLevel]):
        self.levels = levels
        # prolongations[l - 1] maps level l - 1 onto level l
        self.prolongations = [bilinear_prolongation(levels[l - 1]) for l in range(1, len(levels))]

    @property
    def num_coarsenings(self) -> int:
        return len(self.levels) - 1

    @property
    def finest(self) -> GridLevel:
        return self.levels[-1]

    @property
    def coarsest(self) -> GridLevel:
        return self.levels[0]

    def prolongation(self, level: int) -> sp.csr_matrix:
        if level < 1 or level > self.num_coarsenings:
            raise DimensionError(f"No transfer operator into level {level} of a {len(self.levels)}-level hierarchy")
        return self.prolongations[level - 1]

    def galerkin_operators(self, K_fine) -> list:
        """
        Coarse operators K_{l-1} = R_l K_l P_l with R_l = P_l^T / 4, from coarsest (index 0) to finest

        Args:
            K_fine: Assembled operator on the finest level
        """
        check_length(K_fine, self.finest.num_dofs, 'fine operator')
        operators = [sp.csr_matrix(K_fine)]
        for level in range(self.num_coarsenings, 0, -1):
            P = self.prolongation(level)
            operators.append(((P.T @ operators[-1] @ P) * 0.25).tocsr())
        operators.reverse()
        return operators

    def __repr__(self):
        dims = ', '.join(f"{lvl.nx}x{lvl.ny}" for lvl in self.levels)
        return f"GridHierarchy([{dims}], dofs_per_node={self.finest.dofs_per_node})"


def build_hierarchy(nx_fine: int, ny_fine: int, num_coarsenings: int, dofs_per_node: int = 1) -> GridHierarchy:
    """
    Build the sequence of nested grids, coarsest first

    Args:
        nx_fine: Element count in x on the finest grid
        ny_fine: Element count in y on the finest grid
        num_coarsenings: How many times both counts are halved. 16x16 with 3 coarsenings ends on 2x2
        dofs_per_node: 1 for scalar fields, 2 for plane elasticity
    """
    if num_coarsenings < 0:
        raise ConfigurationError(f"num_coarsenings must be non-negative, got {num_coarsenings}",
                                 key='num_coarsenings')
    factor = 2 ** num_coarsenings
    for name, count in (('nx', nx_fine), ('ny', ny_fine)):
        if count < 1:
            raise ConfigurationError(f"{name} must be at least 1, got {count}", key=name)
        if count % factor != 0 or count // factor < 1:
            raise ConfigurationError(f"{name} = {count} is not divisible by 2^{num_coarsenings} = {factor}",
                                     key=name)

    levels = [GridLevel(nx_fine, ny_fine, dofs_per_node, num_coarsenings)]
    for _ in range(num_coarsenings):
        levels.append(levels[-1].coarsened())
    levels.reverse()
    return GridHierarchy(levels)


def prolongate(h: GridHierarchy, level: int, coarse_vec: np.ndarray) -> np.ndarray:
    P = h.prolongation(level)
    check_length(coarse_vec, P.shape[1], 'coarse vector')
    return P @ coarse_vec


def restrict(h: GridHierarchy, level: int, fine_vec: np.ndarray) -> np.ndarray:
    # full weighting, R = P^T / 4
    P = h.prolongation(level)
    check_length(fine_vec, P.shape[0], 'fine vector')
    return 0.25 * (P.T @ fine_vec)
