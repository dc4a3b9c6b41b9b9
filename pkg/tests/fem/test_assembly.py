"""
    Tests for global assembly, boundary conditions and the square wall problem
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import unittest

import numpy as np
import scipy.sparse.linalg as spla

from topoptmg.fem.assembly import BoundaryConditions, MaterialModel, apply_dirichlet, assemble_elasticity, \
    assemble_poisson, boundary_nodes, compliance, element_energies, is_symmetric, scatter
from topoptmg.fem.elements import poisson_element_stiffness
from topoptmg.fem.problems import square_wall_problem
from topoptmg.grid.hierarchy import GridLevel
from topoptmg.mto.density import DensityField
from topoptmg.utils.exceptions import ConfigurationError, DimensionError
from tests.helpers.systems import table_fractions, table_moduli, wall_system


class MaterialAndBoundaries(unittest.TestCase):
    def test_material_validation(self):
        with self.assertRaises(ConfigurationError):
            MaterialModel([1.0])
        with self.assertRaises(ConfigurationError) as context:
            MaterialModel([1.0, 0.0])
        self.assertEqual(context.exception.key, 'moduli')
        with self.assertRaises(ConfigurationError):
            MaterialModel([1.0, 1e-9], poisson_ratio=0.5)
        with self.assertRaises(ConfigurationError):
            MaterialModel([1.0, 1e-9], p_exp=0.5)

    def test_boundary_validation(self):
        bc = BoundaryConditions([0, 1], [(1, -1.0)])
        with self.assertRaises(ConfigurationError):
            bc.validate(10)
        with self.assertRaises(DimensionError):
            BoundaryConditions([20]).validate(10)

    def test_load_vector(self):
        F = BoundaryConditions([], [(3, 2.0), (3, 1.0), (0, -1.0)]).load_vector(5)
        np.testing.assert_allclose(F, [-1.0, 0, 0, 3.0, 0])

    def test_square_wall_geometry(self):
        level, bc = square_wall_problem(4, 4)
        self.assertEqual(len(bc.fixed_dofs), 10)
        # bottom nodes are 0, 5, 10, 15, 20
        self.assertIn(2 * 10 + 1, bc.fixed_dofs)
        load_node = level.node_index(2, 4)
        self.assertEqual(bc.point_loads, [(2 * load_node + 1, -1.0)])

    def test_square_wall_odd_width_loads_left_of_centre(self):
        level, bc = square_wall_problem(5, 4)
        self.assertEqual(bc.point_loads[0][0], 2 * level.node_index(2, 4) + 1)


class PoissonAssembly(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.level = GridLevel(8, 8)
        cls.K, cls.F = assemble_poisson(cls.level, source=1.0, spacing=1.0 / 8)

    def test_symmetric_positive_definite(self):
        self.assertTrue(is_symmetric(self.K))
        smallest = spla.eigsh(self.K.tocsc(), k=1, sigma=0, which='LM', return_eigenvectors=False)
        self.assertGreater(smallest[0], 0)

    def test_boundary_rows_are_identity(self):
        dense = self.K.toarray()
        for node in boundary_nodes(self.level):
            expected = np.zeros(self.level.num_nodes)
            expected[node] = 1.0
            np.testing.assert_array_equal(dense[node], expected)
            self.assertEqual(self.F[node], 0.0)

    def test_interior_stencil(self):
        node = self.level.node_index(4, 4)
        row = self.K.getrow(node).toarray().ravel()
        self.assertAlmostEqual(row[node], 8.0 / 3.0)
        self.assertAlmostEqual(row[self.level.node_index(3, 3)], -1.0 / 3.0)
        self.assertAlmostEqual(row[self.level.node_index(4, 5)], -1.0 / 3.0)

    def test_manufactured_solution(self):
        # u = sin(pi x) sin(pi y) solves laplacian(u) = -2 pi^2 u on the unit square
        results = []
        for n in (8, 16):
            level = GridLevel(n, n)
            xy = level.node_coordinates() / n
            exact = np.sin(np.pi * xy[:, 0]) * np.sin(np.pi * xy[:, 1])
            K, F = assemble_poisson(level, source=-2 * np.pi ** 2 * exact, spacing=1.0 / n)
            U = spla.spsolve(K.tocsc(), F)
            results.append(np.abs(U - exact).max())
        self.assertLess(results[1], 0.35 * results[0])
        self.assertLess(results[1], 1e-2)

    def test_source_length_checked(self):
        with self.assertRaises(DimensionError):
            assemble_poisson(self.level, source=np.ones(3))

    def test_scatter_sums_shared_nodes(self):
        K = scatter(GridLevel(2, 1), poisson_element_stiffness())
        # the middle bottom node is shared by both elements
        self.assertAlmostEqual(K[2, 2], 2 * 2.0 / 3.0)


class ElasticityAssembly(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.level, cls.bc, cls.mat, cls.density, cls.K, cls.F = wall_system(8, 8)

    def test_symmetric_and_eliminated(self):
        self.assertTrue(is_symmetric(self.K))
        dense = self.K.toarray()
        for dof in self.bc.fixed_dofs:
            self.assertEqual(dense[dof, dof], 1.0)
            self.assertEqual(np.count_nonzero(dense[dof]), 1)
            self.assertEqual(np.count_nonzero(dense[:, dof]), 1)

    def test_uniform_density_scales_unit_matrix(self):
        E = np.sum(np.asarray(table_moduli) * np.asarray(table_fractions) ** 3)
        unit = scatter(self.level, self.mat.unit_stiffness())
        free = np.setdiff1d(np.arange(self.level.num_dofs), self.bc.fixed_dofs)
        expected = E * unit[free][:, free].toarray()
        np.testing.assert_allclose(self.K[free][:, free].toarray(), expected, rtol=1e-12,
                                   atol=1e-12 * np.abs(expected).max())

    def test_compliance_equals_load_work_and_energy_sum(self):
        U = spla.spsolve(self.K.tocsc(), self.F)
        C = compliance(self.K, U)
        self.assertAlmostEqual(C, self.F @ U, places=10)
        self.assertGreater(C, 0)
        E = np.sum(np.asarray(table_moduli) * np.asarray(table_fractions) ** 3)
        energies = element_energies(self.level, U, self.mat.unit_stiffness())
        self.assertTrue(np.all(energies >= -1e-14))
        self.assertAlmostEqual(E * energies.sum(), C, delta=1e-8 * C)

    def test_scatter_is_additive_over_element_subsets(self):
        k_hat = self.mat.unit_stiffness()
        scales = np.linspace(1.0, 2.0, self.level.num_elements)
        left = np.arange(self.level.num_elements) < 37
        split = scatter(self.level, k_hat, scales * left) + scatter(self.level, k_hat, scales * ~left)
        whole = scatter(self.level, k_hat, scales)
        self.assertLess(abs(split - whole).max(), 1e-12 * abs(whole).max())

    def test_stiffer_phase_never_lowers_energy(self):
        rng = np.random.default_rng(11)
        for element in (0, 27, 63):
            with self.subTest(element=element):
                raised = self.density.copy()
                raised.alpha[0, element] += 0.3
                K_raised, _ = assemble_elasticity(self.level, raised, self.mat, self.bc)
                for _ in range(5):
                    x = rng.standard_normal(self.level.num_dofs)
                    before = x @ (self.K @ x)
                    self.assertGreaterEqual(x @ (K_raised @ x), before - 1e-10 * abs(before))

    def test_mismatched_density_rejected(self):
        with self.assertRaises(DimensionError):
            assemble_elasticity(self.level, DensityField.uniform(4, 4, table_fractions), self.mat, self.bc)
        with self.assertRaises(DimensionError):
            assemble_elasticity(self.level, DensityField.uniform(8, 8, [0.5, 0.5]), self.mat, self.bc)

    def test_apply_dirichlet_zeroes_load(self):
        K, F = apply_dirichlet(self.K, np.ones(self.level.num_dofs), self.bc.fixed_dofs)
        np.testing.assert_array_equal(F[self.bc.fixed_dofs], 0.0)

    def test_is_symmetric_detects_asymmetry(self):
        A = self.K.tolil()
        A[5, 6] += 1.0
        self.assertFalse(is_symmetric(A.tocsr()))
