"""
    Shared linear systems and problems for the test suite
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import numpy as np
import scipy.sparse as sp

from topoptmg.fem.assembly import MaterialModel, assemble_elasticity, assemble_poisson
from topoptmg.fem.problems import square_wall_problem
from topoptmg.grid.hierarchy import GridLevel
from topoptmg.mto.density import DensityField

table_moduli = [9.0, 3.0, 1.0, 1e-9]
table_fractions = [0.16, 0.08, 0.08, 0.68]


def random_spd(n: int, seed: int, condition: float = 1e3) -> np.ndarray:
    """
    Dense SPD matrix with eigenvalues spread log-uniformly over [1, condition]
    """
    rng = np.random.default_rng(seed)
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    eigenvalues = np.logspace(0, np.log10(condition), n)
    A = (Q * eigenvalues) @ Q.T
    return 0.5 * (A + A.T)


def diagonally_dominant_spd(n: int, seed: int, density: float = 0.1) -> sp.csr_matrix:
    """
    Sparse symmetric matrix with a strictly dominant positive diagonal, so every Jacobi-family iteration converges
    """
    rng = np.random.default_rng(seed)
    off = sp.random(n, n, density=density, random_state=np.random.RandomState(seed), data_rvs=rng.standard_normal)
    off = sp.triu(off, k=1)
    off = off + off.T
    row_sums = np.asarray(abs(off).sum(axis=1)).ravel()
    return (off + sp.diags(2.0 * row_sums + 1.0)).tocsr()


def random_vector(n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal(n)


def poisson_system(n: int):
    level = GridLevel(n, n)
    K, F = assemble_poisson(level, source=1.0, spacing=1.0 / n)
    return level, K, F


def wall_system(nx: int, ny: int, fractions=tuple(table_fractions), moduli=tuple(table_moduli)):
    """
    Square wall with a uniform four-phase density
    """
    level, bc = square_wall_problem(nx, ny)
    mat = MaterialModel(moduli)
    density = DensityField.uniform(nx, ny, fractions)
    K, F = assemble_elasticity(level, density, mat, bc)
    return level, bc, mat, density, K, F
