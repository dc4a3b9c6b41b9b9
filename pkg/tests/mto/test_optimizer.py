"""
    Tests for the multi-material compliance optimizer
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import unittest

import numpy as np
import pandas as pd
import pytest

from topoptmg.fem.assembly import MaterialModel, assemble_elasticity, compliance
from topoptmg.fem.problems import square_wall_problem
from topoptmg.mto.density import DensityField
from topoptmg.mto.optimizer import OptimConfig, OptimReport, _pair_bounds, _shrink_moves, optimize
from topoptmg.solvers.cholesky import cholesky_factor, cholesky_solve
from topoptmg.solvers.solver_config import SolverConfig
from topoptmg.utils.exceptions import ConfigurationError, DimensionError
from tests.helpers.systems import table_fractions, table_moduli


def small_config(**changes) -> OptimConfig:
    settings = dict(volume_fractions=table_fractions, filter_radius=2.5, max_outer=15,
                    solver=SolverConfig(method='cholesky'))
    settings.update(changes)
    return OptimConfig(**settings)


class OptimConfigTests(unittest.TestCase):
    def test_defaults(self):
        cfg = OptimConfig()
        self.assertEqual(cfg.volume_fractions, table_fractions)
        self.assertEqual(cfg.filter_radius, 8.0)
        self.assertEqual(cfg.move, 0.2)
        self.assertEqual(cfg.move_shrink, 0.7)
        self.assertEqual(cfg.oc_damping, 0.5)
        self.assertEqual(cfg.solver.method, 'pcgmg')
        self.assertEqual(cfg.num_phases, 4)

    def test_rejected_values(self):
        cases = {
            'volume_fractions': dict(volume_fractions=[0.5, 0.6]),
            'density_floor': dict(density_floor=0.2),
            'filter_radius': dict(filter_radius=-1.0),
            'filter_tol': dict(filter_tol=0.0),
            'tol': dict(tol=0.0),
            'inner_sweeps': dict(inner_sweeps=0),
            'move': dict(move=0.0),
            'move_shrink': dict(move_shrink=1.5),
            'oc_damping': dict(oc_damping=2.0),
            'max_outer': dict(max_outer=0),
        }
        for key, kwargs in cases.items():
            with self.subTest(key=key):
                with self.assertRaises(ConfigurationError) as context:
                    OptimConfig(**kwargs)
                self.assertEqual(context.exception.key, key)

    def test_copy(self):
        cfg = OptimConfig()
        self.assertEqual(cfg, cfg.copy())
        self.assertEqual(cfg.copy(max_outer=5).max_outer, 5)


class OptimizeSmallWall(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.level, cls.bc = square_wall_problem(8, 8)
        cls.mat = MaterialModel(table_moduli)
        cls.records = []
        cls.report = optimize(cls.level, cls.bc, cls.mat, small_config(), callback=cls.records.append)

    def test_volume_fractions_held(self):
        np.testing.assert_allclose(self.report.phase_means(), table_fractions, atol=1e-5)

    def test_partition_and_bounds(self):
        self.assertLess(self.report.density.partition_error(), 1e-10)
        self.assertLessEqual(self.report.density.bounds_violation(), 1e-12)

    def test_compliance_decreases(self):
        compliance = self.report.history['compliance']
        self.assertLess(compliance.iloc[-1], compliance.iloc[0])

    def test_history(self):
        history = self.report.history
        self.assertEqual(list(history.columns), ['iteration', 'compliance', 'change', 'solver_iterations',
                                                 'seconds'])
        self.assertEqual(list(history['iteration']), list(range(1, len(history) + 1)))
        self.assertLessEqual(self.report.outer_iterations, 15)
        self.assertEqual(len(self.records), self.report.outer_iterations)
        self.assertEqual(self.records[-1].compliance, self.report.compliance)
        if not self.report.converged:
            self.assertEqual(self.report.outer_iterations, 15)

    def test_deterministic(self):
        again = optimize(self.level, self.bc, self.mat, small_config())
        np.testing.assert_array_equal(again.density.alpha, self.report.density.alpha)
        pd.testing.assert_frame_equal(again.history.drop(columns='seconds'),
                                      self.report.history.drop(columns='seconds'))

    def test_first_compliance_is_strain_energy(self):
        density = DensityField.uniform(8, 8, table_fractions)
        K, F = assemble_elasticity(self.level, density, self.mat, self.bc)
        U = cholesky_solve(cholesky_factor(K), F)
        self.assertAlmostEqual(self.report.history['compliance'].iloc[0], compliance(K, U),
                               delta=1e-10 * compliance(K, U))

    def test_sweep_change_within_move(self):
        self.assertLessEqual(self.report.history['change'].max(), 0.2 + 1e-12)

    def test_report_string(self):
        text = str(self.report)
        self.assertIn('Optimization Report', text)
        self.assertIn('8x8', text)


class OptimizeEdgeCases(unittest.TestCase):
    def test_equal_moduli_need_no_update(self):
        level, bc = square_wall_problem(8, 8)
        mat = MaterialModel([1.0, 1.0, 1.0, 1.0], p_exp=1.0)
        report = optimize(level, bc, mat, small_config())
        self.assertTrue(report.converged)
        self.assertEqual(report.outer_iterations, 1)
        expected = np.broadcast_to(np.array(table_fractions)[:, np.newaxis], report.density.alpha.shape)
        np.testing.assert_allclose(report.density.alpha, expected, atol=1e-5)

    def test_phase_count_mismatch(self):
        level, bc = square_wall_problem(4, 4)
        with self.assertRaises(DimensionError):
            optimize(level, bc, MaterialModel([1.0, 1e-9]), small_config())

    def test_pcgmg_with_warm_start(self):
        level, bc = square_wall_problem(8, 8)
        cfg = small_config(max_outer=4, warm_start=True, solver=SolverConfig(method='pcgmg', num_coarsenings=2))
        report = optimize(level, bc, MaterialModel(table_moduli), cfg)
        self.assertIsInstance(report, OptimReport)
        self.assertGreater(report.solver_iterations, 0)
        np.testing.assert_allclose(report.phase_means(), table_fractions, atol=1e-5)

    def test_four_phases_settle(self):
        level, bc = square_wall_problem(16, 16)
        report = optimize(level, bc, MaterialModel(table_moduli), OptimConfig(filter_radius=4.0,
                                                                              solver=SolverConfig(method='cholesky')))
        self.assertTrue(report.converged)
        self.assertLessEqual(report.history['change'].iloc[-1], 1e-3)
        np.testing.assert_allclose(report.phase_means(), table_fractions, atol=1e-5)


class MoveLimits(unittest.TestCase):
    def test_reversal_shrinks_move(self):
        cfg = OptimConfig(tol=1e-3, move_shrink=0.5)
        moves = np.full((2, 3), 0.2)
        directions = np.array([[1.0, 1.0, 0.0], [-1.0, 0.0, 1.0]])
        delta = np.array([[-0.1, 0.1, -0.1], [-0.1, 5e-4, -1e-4]])
        _shrink_moves(moves, directions, delta, cfg)
        np.testing.assert_allclose(moves, [[0.1, 0.2, 0.2], [0.2, 0.2, 0.2]])
        np.testing.assert_array_equal(directions, [[-1.0, 1.0, -1.0], [-1.0, 0.0, 1.0]])

    def test_pair_bounds_keep_both_phases_in_their_boxes(self):
        anchor = np.array([[0.5, 0.3], [0.2, 0.4], [0.3, 0.3]])
        density = DensityField(anchor.copy(), 1, 2)
        density.alpha[0] += [0.05, -0.05]
        density.alpha[2] -= [0.05, -0.05]
        moves = np.full(anchor.shape, 0.1)
        lower, upper = _pair_bounds(density, anchor, moves, 0, 1)
        np.testing.assert_allclose(lower, [0.45, 0.2])
        np.testing.assert_allclose(upper, [0.6, 0.35])
        self.assertTrue(np.all(lower <= density.alpha[0]) and np.all(density.alpha[0] <= upper))

    @pytest.mark.slow
    def test_square_wall_defaults(self):
        level, bc = square_wall_problem(32, 32)
        cfg = OptimConfig(solver=SolverConfig(method='pcgmg', num_coarsenings=2))
        report = optimize(level, bc, MaterialModel(table_moduli), cfg)
        self.assertTrue(report.converged)
        self.assertLessEqual(report.history['change'].iloc[-1], cfg.tol)
        np.testing.assert_allclose(report.phase_means(), table_fractions, atol=1e-2)
        self.assertLess(report.density.partition_error(), 1e-9)
        self.assertLess(report.compliance, report.history['compliance'].iloc[0])

    @pytest.mark.slow
    def test_direct_and_multigrid_designs_agree(self):
        level, bc = square_wall_problem(32, 32)
        mat = MaterialModel(table_moduli)
        direct = optimize(level, bc, mat, OptimConfig(solver=SolverConfig(method='cholesky')))
        multigrid = optimize(level, bc, mat, OptimConfig(solver=SolverConfig(method='pcgmg', tol=1e-6,
                                                                                num_coarsenings=2)))
        self.assertTrue(direct.converged)
        self.assertTrue(multigrid.converged)
        self.assertLess(abs(multigrid.compliance - direct.compliance) / direct.compliance, 1e-2)
