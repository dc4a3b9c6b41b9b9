"""
    Tests for plain and preconditioned conjugate gradients
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import unittest

import numpy as np

from topoptmg.solvers.cholesky import cholesky_factor, cholesky_solve
from topoptmg.solvers.krylov import cg_solve, pcg_solve
from topoptmg.utils.exceptions import DefinitenessError, DimensionError, PreconditionerError
from tests.helpers.systems import random_spd, random_vector, wall_system


def a_norm(A, v):
    return float(np.sqrt(v @ (A @ v)))


class ConjugateGradients(unittest.TestCase):
    def test_zero_rhs(self):
        report = cg_solve(np.eye(3), np.zeros(3))
        self.assertEqual(report.iterations, 0)
        self.assertTrue(report.converged)
        np.testing.assert_array_equal(report.solution, 0.0)

    def test_identity_converges_in_one_iteration(self):
        b = random_vector(8, seed=0)
        report = cg_solve(np.eye(8), b, tol=1e-12)
        self.assertEqual(report.iterations, 1)
        np.testing.assert_allclose(report.solution, b)

    def test_finite_termination(self):
        for n in (5, 10, 20, 50):
            A = random_spd(n, seed=n, condition=10.0)
            b = random_vector(n, seed=2 * n)
            report = cg_solve(A, b, tol=1e-10, max_iter=10 * n)
            self.assertTrue(report.converged)
            self.assertLessEqual(report.iterations, n)

    def test_oracle_equivalence(self):
        # with condition number 100 a residual of 1e-10 bounds the relative error by 1e-8
        rng = np.random.default_rng(11)
        for seed in range(50):
            n = int(rng.integers(10, 201))
            A = random_spd(n, seed=seed, condition=100.0)
            b = random_vector(n, seed=1000 + seed)
            exact = cholesky_solve(cholesky_factor(A), b)
            report = cg_solve(A, b, tol=1e-10, max_iter=2000)
            self.assertTrue(report.converged)
            self.assertLess(np.linalg.norm(report.solution - exact) / np.linalg.norm(exact), 1e-8)

    def test_error_bound_with_condition_number(self):
        for seed in range(20):
            n = 20 + 4 * seed
            A = random_spd(n, seed=300 + seed, condition=1e3)
            b = random_vector(n, seed=400 + seed)
            exact = np.linalg.solve(A, b)
            eigenvalues = np.linalg.eigvalsh(A)
            kappa = eigenvalues[-1] / eigenvalues[0]
            rate = (np.sqrt(kappa) - 1) / (np.sqrt(kappa) + 1)
            e0 = a_norm(A, exact)

            errors = []
            cg_solve(A, b, tol=1e-10, max_iter=5 * n, callback=lambda x: errors.append(a_norm(A, exact - x)))
            for k, error in enumerate(errors, start=1):
                self.assertLessEqual(error, 2 * rate ** k * e0 * (1 + 1e-6) + 1e-12 * e0)

    def test_residual_history_is_recorded(self):
        A = random_spd(30, seed=5, condition=50.0)
        report = cg_solve(A, random_vector(30, seed=6), tol=1e-8)
        self.assertEqual(len(report.residual_history), report.iterations + 1)
        self.assertEqual(report.residual_history[0], 1.0)
        self.assertLessEqual(report.relative_residual, 1e-8)

    def test_warm_start_from_solution(self):
        A = random_spd(15, seed=8, condition=10.0)
        b = random_vector(15, seed=9)
        report = cg_solve(A, b, tol=1e-8, x0=np.linalg.solve(A, b))
        self.assertEqual(report.iterations, 0)

    def test_iteration_cap(self):
        A = random_spd(60, seed=12, condition=1e5)
        report = cg_solve(A, random_vector(60, seed=13), tol=1e-14, max_iter=3)
        self.assertEqual(report.iterations, 3)
        self.assertFalse(report.converged)

    def test_indefinite_operator(self):
        with self.assertRaises(DefinitenessError):
            cg_solve(-np.eye(3), np.ones(3))

    def test_length_mismatch(self):
        with self.assertRaises(DimensionError):
            cg_solve(np.eye(3), np.ones(2))


class PreconditionedConjugateGradients(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        _, _, _, _, cls.K, cls.F = wall_system(8, 8)

    def test_exact_preconditioner_one_iteration(self):
        L = cholesky_factor(self.K)
        report = pcg_solve(self.K, self.F, lambda r: cholesky_solve(L, r), tol=1e-8)
        self.assertEqual(report.iterations, 1)

    def test_jacobi_preconditioner_matches_direct_solution(self):
        diagonal = self.K.diagonal()
        preconditioned = pcg_solve(self.K, self.F, lambda r: r / diagonal, tol=1e-10, max_iter=5000)
        self.assertTrue(preconditioned.converged)
        exact = cholesky_solve(cholesky_factor(self.K), self.F)
        self.assertLess(np.linalg.norm(preconditioned.solution - exact) / np.linalg.norm(exact), 1e-6)
        self.assertEqual(preconditioned.method, 'pcg')

    def test_negative_preconditioner(self):
        with self.assertRaises(PreconditionerError):
            pcg_solve(self.K, self.F, lambda r: -r)
