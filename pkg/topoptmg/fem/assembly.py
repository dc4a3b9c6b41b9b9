"""
    Global assembly of the plane-stress elasticity and Poisson systems.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import typing

import numpy as np
import scipy.sparse as sp

from topoptmg.fem.elements import element_stiffness, poisson_element_mass, poisson_element_stiffness
from topoptmg.grid.hierarchy import GridLevel
from topoptmg.mto.density import DensityField, effective_modulus
from topoptmg.utils.exceptions import ConfigurationError, DimensionError
from topoptmg.utils.utils import check_length

# Kept as an alias so signatures read like the domain: symmetric, both triangles stored, CSR
SparseSymMatrix = sp.csr_matrix


class MaterialModel:
    def __init__(self, phase_moduli: typing.Sequence[float], poisson_ratio: float = 0.3, p_exp: float = 3.0):
        """
        Args:
            phase_moduli: Nominal moduli per phase, stiffest first, last entry is the void surrogate
            poisson_ratio: Shared by every phase
            p_exp: SIMP penalty exponent
        """
        self.phase_moduli = np.asarray(phase_moduli, dtype=float)
        self.poisson_ratio = float(poisson_ratio)
        self.p_exp = float(p_exp)

        if self.phase_moduli.ndim != 1 or len(self.phase_moduli) < 2:
            raise ConfigurationError("At least two phases (one material and void) are required", key='moduli')
        if np.any(self.phase_moduli <= 0):
            raise ConfigurationError("Every phase modulus must be positive, use a small value for void",
                                     key='moduli')
        if not 0 < self.poisson_ratio < 0.5:
            raise ConfigurationError(f"Poisson ratio must lie in (0, 0.5), got {self.poisson_ratio}",
                                     key='poisson_ratio')
        if self.p_exp < 1:
            raise ConfigurationError(f"Penalty exponent must be at least 1, got {self.p_exp}", key='penalty')

    @property
    def num_phases(self) -> int:
        return len(self.phase_moduli)

    def unit_stiffness(self) -> np.ndarray:
        return element_stiffness(1.0, self.poisson_ratio)

    def __repr__(self):
        return f"MaterialModel(moduli={self.phase_moduli.tolist()}, nu={self.poisson_ratio}, p={self.p_exp})"


class BoundaryConditions:
    def __init__(self, fixed_dofs: typing.Iterable[int] = (), point_loads: typing.Iterable[tuple] = ()):
        self.fixed_dofs = np.unique(np.asarray(list(fixed_dofs), dtype=int))
        self.point_loads = [(int(dof), float(value)) for dof, value in point_loads]

    def validate(self, num_dofs: int):
        if len(self.fixed_dofs) and (self.fixed_dofs.min() < 0 or self.fixed_dofs.max() >= num_dofs):
            raise DimensionError(f"Fixed dofs must lie in [0, {num_dofs})")
        fixed = set(self.fixed_dofs.tolist())
        for dof, _ in self.point_loads:
            if not 0 <= dof < num_dofs:
                raise DimensionError(f"Load on dof {dof} outside [0, {num_dofs})")
            if dof in fixed:
                raise ConfigurationError(f"Load applied on fixed dof {dof}", key='point_loads')

    def load_vector(self, num_dofs: int) -> np.ndarray:
        F = np.zeros(num_dofs)
        for dof, value in self.point_loads:
            F[dof] += value
        return F


def is_symmetric(A, rtol: float = 1e-12) -> bool:
    A = sp.csr_matrix(A)
    scale = abs(A).max() if A.nnz else 0.0
    if scale == 0.0:
        return True
    diff = A - A.T
    return (abs(diff).max() if diff.nnz else 0.0) <= rtol * scale


def scatter(level: GridLevel, element_matrix: np.ndarray, scales: np.ndarray = None) -> sp.csr_matrix:
    """
    Sum the (optionally scaled) element matrix over every element of the level into a CSR matrix

    Args:
        level: Grid supplying the connectivity
        element_matrix: Square element matrix matching the level's dofs per element
        scales: Per-element multiplier, defaults to 1
    """
    edofs = level.element_dofs()
    n_local = edofs.shape[1]
    if element_matrix.shape != (n_local, n_local):
        raise DimensionError(f"Element matrix {element_matrix.shape} does not match {n_local} dofs per element")
    if scales is None:
        scales = np.ones(level.num_elements)
    iK = np.kron(edofs, np.ones((n_local, 1), dtype=int)).ravel()
    jK = np.kron(edofs, np.ones((1, n_local), dtype=int)).ravel()
    sK = (element_matrix.ravel()[np.newaxis, :] * scales[:, np.newaxis]).ravel()
    return sp.coo_matrix((sK, (iK, jK)), shape=(level.num_dofs, level.num_dofs)).tocsr()


def apply_dirichlet(K: sp.csr_matrix, F: np.ndarray, fixed_dofs: np.ndarray) -> typing.Tuple[sp.csr_matrix, np.ndarray]:
    """
    Zero-one elimination: fixed rows and columns are cleared, their diagonal set to one, their load to zero
    """
    free = np.ones(K.shape[0])
    free[fixed_dofs] = 0.0
    Z = sp.diags(free)
    K = (Z @ K @ Z + sp.diags(1.0 - free)).tocsr()
    K.eliminate_zeros()
    K.sort_indices()
    F = F.copy()
    F[fixed_dofs] = 0.0
    return K, F


def assemble_elasticity(level: GridLevel, density: DensityField, mat: MaterialModel,
                        bc: BoundaryConditions) -> typing.Tuple[sp.csr_matrix, np.ndarray]:
    if level.dofs_per_node != 2:
        raise DimensionError("Elasticity needs a level with 2 dofs per node")
    if (density.nx, density.ny) != (level.nx, level.ny):
        raise DimensionError(f"Density grid {density.nx}x{density.ny} does not match level {level.nx}x{level.ny}")
    if density.num_phases != mat.num_phases:
        raise DimensionError(f"Density has {density.num_phases} phases, material model has {mat.num_phases}")
    bc.validate(level.num_dofs)

    moduli = effective_modulus(density.alpha, mat)
    K = scatter(level, mat.unit_stiffness(), moduli)
    F = bc.load_vector(level.num_dofs)
    return apply_dirichlet(K, F, bc.fixed_dofs)


def boundary_nodes(level: GridLevel) -> np.ndarray:
    xy = level.node_coordinates()
    on_edge = (xy[:, 0] == 0) | (xy[:, 0] == level.nx) | (xy[:, 1] == 0) | (xy[:, 1] == level.ny)
    return np.nonzero(on_edge)[0]


def assemble_poisson(level: GridLevel, source: typing.Union[float, np.ndarray] = 1.0,
                     spacing: float = 1.0) -> typing.Tuple[sp.csr_matrix, np.ndarray]:
    """
    Q4 Galerkin system for laplacian(u) = f with u = 0 on the whole boundary, written as K u = -M f

    Args:
        level: Grid with 1 dof per node
        source: Constant f or nodal values of f
        spacing: Element edge length. The stiffness does not depend on it in 2D, the load scales with spacing^2
    """
    if level.dofs_per_node != 1:
        raise DimensionError("Poisson needs a level with 1 dof per node")
    if np.ndim(source) == 0:
        f = np.full(level.num_nodes, float(source))
    else:
        f = np.asarray(source, dtype=float)
        check_length(f, level.num_nodes, 'source')

    K = scatter(level, poisson_element_stiffness())
    M = scatter(level, poisson_element_mass())
    F = -(spacing ** 2) * (M @ f)
    return apply_dirichlet(K, F, boundary_nodes(level))


def compliance(K, U: np.ndarray) -> float:
    check_length(U, K.shape[0], 'displacement')
    return float(U @ (K @ U))


def element_energies(level: GridLevel, U: np.ndarray, k_hat: np.ndarray) -> np.ndarray:
    """
    u_e^T k_hat u_e for every element
    """
    check_length(U, level.num_dofs, 'displacement')
    ue = U[level.element_dofs()]
    return np.einsum('ij,jk,ik->i', ue, k_hat, ue)
