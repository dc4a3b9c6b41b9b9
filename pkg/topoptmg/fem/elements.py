"""
    Bilinear quadrilateral (Q4) element matrices on the unit square element.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.

    Local node order is counter-clockwise from the lower-left corner:
    (-1,1)----(1,1)          3-------2
    |             |          |       |
    |    (0,0)    |          |       |
    |             |          |       |
    (-1,-1)--(1,-1)          0-------1
"""

import numpy as np

GAUSS_POINTS = np.array([-1.0, 1.0]) / np.sqrt(3.0)
GAUSS_WEIGHTS = np.array([1.0, 1.0])

NODE_XI = np.array([-1.0, 1.0, 1.0, -1.0])
NODE_ETA = np.array([-1.0, -1.0, 1.0, 1.0])

# unit square mapped from [-1, 1]^2
JACOBIAN_SCALE = 2.0
DET_J = 0.25


def shape_functions(xi: float, eta: float):
    """
    Returns:
        N (4,): shape function values
        dN (2 x 4): derivatives with respect to the physical x and y of the unit element
    """
    N = 0.25 * (1 + NODE_XI * xi) * (1 + NODE_ETA * eta)
    dN_dxi = 0.25 * NODE_XI * (1 + NODE_ETA * eta)
    dN_deta = 0.25 * NODE_ETA * (1 + NODE_XI * xi)
    return N, JACOBIAN_SCALE * np.vstack((dN_dxi, dN_deta))


def plane_stress_matrix(E: float, nu: float) -> np.ndarray:
    return E / (1 - nu ** 2) * np.array([[1, nu, 0],
                                         [nu, 1, 0],
                                         [0, 0, (1 - nu) / 2]])


def strain_displacement_matrix(dN: np.ndarray) -> np.ndarray:
    B = np.zeros((3, 8))
    B[0, 0::2] = dN[0]
    B[1, 1::2] = dN[1]
    B[2, 0::2] = dN[1]
    B[2, 1::2] = dN[0]
    return B


def _integrate(integrand) -> np.ndarray:
    total = None
    for xi, w_xi in zip(GAUSS_POINTS, GAUSS_WEIGHTS):
        for eta, w_eta in zip(GAUSS_POINTS, GAUSS_WEIGHTS):
            N, dN = shape_functions(xi, eta)
            value = w_xi * w_eta * DET_J * integrand(N, dN)
            total = value if total is None else total + value
    return total


def element_stiffness(E: float, nu: float) -> np.ndarray:
    """
    Plane-stress Q4 stiffness, 8x8, dofs ordered (u0, v0, u1, v1, u2, v2, u3, v3)

    Args:
        E: Elastic modulus, the matrix is linear in it
        nu: Poisson ratio in (0, 0.5)
    """
    D = plane_stress_matrix(E, nu)

    def integrand(_, dN):
        B = strain_displacement_matrix(dN)
        return B.T @ D @ B

    K = _integrate(integrand)
    return 0.5 * (K + K.T)


def poisson_element_stiffness() -> np.ndarray:
    return _integrate(lambda _, dN: dN.T @ dN)


def poisson_element_mass() -> np.ndarray:
    return _integrate(lambda N, _: np.outer(N, N))
