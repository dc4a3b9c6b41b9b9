"""
    Optimality-criteria update of one binary (two active phases) sub-problem.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import typing

import numpy as np

from topoptmg.mto.density import DensityField
from topoptmg.utils.exceptions import ConfigurationError, DimensionError, MultiplierError

numerator_floor = 1e-12
multiplier_bracket = (1e-40, 1e10)
max_halvings = 100
volume_tolerance = 1e-6


def _oc_numerator(sens_a: np.ndarray, sens_b: np.ndarray) -> np.ndarray:
    # shifting material from b to a changes compliance by dC/da - dC/db
    g = -sens_a + sens_b
    g_max = g.max()
    scale = max(np.abs(sens_a).max(), np.abs(sens_b).max())
    # differences at rounding level carry no preference
    if g_max <= numerator_floor * scale:
        return np.ones_like(g)
    return np.maximum(g / g_max, numerator_floor)


def oc_update_pair(density: DensityField, phase_a: int, phase_b: int, sens_a: np.ndarray, sens_b: np.ndarray,
                   target: float, move: float = 0.2, eta: float = 0.5,
                   bounds: typing.Tuple[np.ndarray, np.ndarray] = None) -> float:
    """
    Update phase_a in place with the pair sum s_e = alpha_a + alpha_b held fixed, then set alpha_b = s_e - alpha_a.
    Every other phase is left untouched.

    Args:
        density: Field updated in place
        phase_a: The free phase of the sub-problem
        phase_b: The phase absorbing the difference
        sens_a: Filtered dC/dalpha_a
        sens_b: Filtered dC/dalpha_b
        target: Required mean of alpha_a over the elements
        move: Largest change of alpha_a per update
        eta: Damping exponent of the multiplicative update
        bounds: Optional per-element (lower, upper) limits on the new alpha_a, intersected with the move box.
            The current alpha_a is always kept admissible.
    Returns:
        Largest absolute change of alpha_a
    """
    if phase_a == phase_b:
        raise ConfigurationError(f"A binary update needs two different phases, got {phase_a} twice")
    n = density.num_elements
    if sens_a.shape != (n,) or sens_b.shape != (n,):
        raise DimensionError(f"Pair sensitivities must have shape ({n},)")

    eps = density.floor
    alpha_a = density.alpha[phase_a].copy()
    pair_sum = alpha_a + density.alpha[phase_b]
    lower = np.maximum(eps, alpha_a - move)
    upper = np.minimum(pair_sum - eps, alpha_a + move)
    if bounds is not None:
        lower = np.minimum(np.maximum(lower, bounds[0]), alpha_a)
        upper = np.maximum(np.minimum(upper, bounds[1]), alpha_a)
    g = _oc_numerator(sens_a, sens_b)

    def candidate(log_lambda: float) -> np.ndarray:
        return np.clip(alpha_a * (g / np.exp(log_lambda)) ** eta, lower, upper)

    lo, hi = np.log(multiplier_bracket[0]), np.log(multiplier_bracket[1])
    most, least = candidate(lo).mean(), candidate(hi).mean()
    if target > most + volume_tolerance or target < least - volume_tolerance:
        raise MultiplierError(f"Volume target {target} for phase {phase_a} is outside the reachable range "
                              f"[{least:.6g}, {most:.6g}] under the move limits")

    # the mean volume decreases with lambda
    for _ in range(max_halvings):
        mid = 0.5 * (lo + hi)
        if candidate(mid).mean() > target:
            lo = mid
        else:
            hi = mid
    updated = candidate(0.5 * (lo + hi))
    if abs(updated.mean() - target) > volume_tolerance:
        raise MultiplierError(f"Bisection for phase {phase_a} stopped at volume {updated.mean():.8g}, "
                              f"target {target}")

    density.alpha[phase_a] = updated
    density.alpha[phase_b] = pair_sum - updated
    return float(np.abs(updated - alpha_a).max())
