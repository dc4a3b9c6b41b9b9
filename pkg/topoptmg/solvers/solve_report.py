"""
    Result container shared by every linear solver.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import numpy as np


class SolveReport:
    def __init__(self, solution: np.ndarray, iterations: int, relative_residual: float, converged: bool,
                 seconds: float = 0.0, residual_history: list = None, method: str = None):
        self.solution = solution
        self.iterations = iterations
        self.relative_residual = relative_residual
        self.converged = converged
        self.seconds = seconds
        # relative residual after each iteration, index 0 is the initial guess
        self.residual_history = residual_history if residual_history is not None else []
        self.method = method

    def __str__(self):
        return_string = "\n"
        return_string += "Solve Report: \n"
        rows = {
            'Method': self.method,
            'Unknowns': len(self.solution),
            'Iterations': self.iterations,
            'Relative residual': f"{self.relative_residual:.3e}",
            'Converged': self.converged,
            'Time (s)': f"{self.seconds:.3f}",
        }
        for key, value in rows.items():
            spaces_needed = 33 - len(key)
            return_string += key + ": " + (' ' * spaces_needed) + str(value) + "\n"
        return return_string
