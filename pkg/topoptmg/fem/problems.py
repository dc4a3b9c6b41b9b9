"""
    Test problems: the square wall under a point load.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import typing

import numpy as np

from topoptmg.fem.assembly import BoundaryConditions
from topoptmg.grid.hierarchy import GridLevel


def square_wall_problem(nx: int, ny: int, load: float = 1.0) -> typing.Tuple[GridLevel, BoundaryConditions]:
    """
    Bottom edge clamped in both directions, downward point load on the top-edge midpoint node
    (the node left of centre when nx is odd)
    """
    level = GridLevel(nx, ny, dofs_per_node=2, level_index=0)
    bottom = level.node_index(np.arange(nx + 1), 0)
    fixed = np.concatenate((2 * bottom, 2 * bottom + 1))
    load_node = level.node_index(nx // 2, ny)
    return level, BoundaryConditions(fixed, [(2 * load_node + 1, -load)])
