"""
    Conjugate gradients, plain and preconditioned.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import typing

import numpy as np

from topoptmg.solvers.solve_report import SolveReport
from topoptmg.utils.exceptions import DefinitenessError, PreconditionerError
from topoptmg.utils.utils import Timer, check_length


def pcg_solve(A, b: np.ndarray, precond: typing.Callable = None, tol: float = 1e-6, max_iter: int = 1000,
              x0: np.ndarray = None, callback: typing.Callable = None, method: str = 'pcg') -> SolveReport:
    """
    Preconditioned conjugate gradients

    Args:
        A: Symmetric positive definite operator supporting A @ x
        b: Right-hand side
        precond: z = precond(r) applying M^-1, identity when None
        tol: Relative residual tolerance
        max_iter: Iteration cap
        x0: Initial guess, zero when None
        callback: Called with the iterate after every iteration
        method: Label stored in the report
    Returns:
        SolveReport whose residual history holds the recurrence residuals ||r_i|| / ||b||
    """
    b = np.asarray(b, dtype=float)
    n = A.shape[0]
    check_length(b, n, 'right-hand side')

    with Timer() as timer:
        b_norm = np.linalg.norm(b)
        if b_norm == 0.0:
            return SolveReport(np.zeros(n), 0, 0.0, True, 0.0, [0.0], method=method)

        if x0 is None:
            x = np.zeros(n)
            r = b.copy()
        else:
            check_length(x0, n, 'initial guess')
            x = np.array(x0, dtype=float)
            r = b - A @ x

        residual = float(np.linalg.norm(r) / b_norm)
        history = [residual]
        iterations = 0

        if residual > tol:
            z = r.copy() if precond is None else precond(r)
            rz = float(z @ r)
            if rz <= 0:
                raise PreconditionerError(f"Preconditioner is not positive definite: z^T r = {rz}")
            p = z.copy()

            while iterations < max_iter:
                Ap = A @ p
                pAp = float(p @ Ap)
                if pAp <= 0:
                    raise DefinitenessError(f"Operator is not positive definite: p^T A p = {pAp} "
                                            f"at iteration {iterations}")
                alpha = rz / pAp
                x += alpha * p
                r -= alpha * Ap
                iterations += 1

                residual = float(np.linalg.norm(r) / b_norm)
                history.append(residual)
                if callback is not None:
                    callback(x)
                if residual <= tol or residual == 0.0:
                    break

                z = r.copy() if precond is None else precond(r)
                rz_next = float(z @ r)
                if rz_next <= 0:
                    raise PreconditionerError(f"Preconditioner is not positive definite: z^T r = {rz_next} "
                                              f"at iteration {iterations}")
                beta = rz_next / rz
                rz = rz_next
                p = z + beta * p

    return SolveReport(x, iterations, residual, residual <= tol, timer.seconds, history, method=method)


def cg_solve(A, b: np.ndarray, tol: float = 1e-6, max_iter: int = 1000, x0: np.ndarray = None,
             callback: typing.Callable = None) -> SolveReport:
    return pcg_solve(A, b, None, tol, max_iter, x0, callback, method='cg')
