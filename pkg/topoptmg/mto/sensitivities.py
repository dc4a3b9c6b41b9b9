"""
    Adjoint compliance sensitivities with respect to the phase fractions.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import typing

import numpy as np

from topoptmg.mto.density import DensityField
from topoptmg.utils.exceptions import DimensionError


def sensitivities_from_energies(energies: np.ndarray, density: DensityField, mat,
                                phases: typing.Sequence[int] = None) -> np.ndarray:
    """
    dC/dalpha_i,e = -p * alpha_i,e^(p - 1) * E_i * (u_e^T k_hat u_e)

    Args:
        energies: Unit-modulus element energies u_e^T k_hat u_e
        density: Current phase fractions
        mat: MaterialModel
        phases: Rows to evaluate, every phase when None
    Returns:
        (len(phases) x num_elements) array, every entry <= 0
    """
    if energies.shape[0] != density.num_elements:
        raise DimensionError(f"{energies.shape[0]} element energies for {density.num_elements} elements")
    if phases is None:
        phases = range(density.num_phases)
    phases = list(phases)
    alpha = density.alpha[phases]
    moduli = mat.phase_moduli[phases][:, np.newaxis]
    return -mat.p_exp * alpha ** (mat.p_exp - 1) * moduli * energies[np.newaxis, :]


def sensitivities(U: np.ndarray, density: DensityField, mat, level) -> np.ndarray:
    from topoptmg.fem.assembly import element_energies

    if (level.nx, level.ny) != (density.nx, density.ny):
        raise DimensionError(f"Density grid {density.nx}x{density.ny} does not match level {level.nx}x{level.ny}")
    return sensitivities_from_energies(element_energies(level, U, mat.unit_stiffness()), density, mat)
