"""
    Utils file for console output and small containers shared across topopt-mg.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import os
import sys
import time

import numpy as np

from topoptmg.utils.exceptions import DimensionError

default_output_directory = './topopt_out'


class AttributeDict(dict):
    """
    Dictionary with attribute access, so run settings can be read as cfg.mesh instead of cfg['mesh']
    """
    def __getattr__(self, attr):
        # Try catch is wrapped to support copying objects
        try:
            return self[attr]
        except KeyError:
            raise AttributeError(attr)

    def __setattr__(self, attr, value):
        self[attr] = value


def info_print(message):
    """
    This prints directly to stderr which allows a way to distinguish package info calls/errors from generic stdout
    Args:
        message: The message to print. INFO: will be prepended
    """
    print('INFO: ' + str(message), file=sys.stderr)


def update_progress(progress):
    # From this great post: https://stackoverflow.com/a/15860757/8087739
    # Accepts a float between 0 and 1. Any int will be converted to a float.
    # A value under 0 represents a 'halt'.
    # A value at 1 or bigger represents 100%
    bar_length = 20
    status = ""
    if isinstance(progress, int):
        progress = float(progress)
    if not isinstance(progress, float):
        progress = 0
        status = "error: progress var must be float\r\n"
    if progress < 0:
        progress = 0
        status = "Halt...\r\n"
    if progress >= 1:
        progress = 1
        status = "Done...\r\n"
    block = int(round(bar_length * progress))
    text = "\rProgress: [{0}] {1}% {2}".format("#" * block + "-" * (bar_length - block), round(progress * 100, 2),
                                               status)
    sys.stdout.write(text)
    sys.stdout.flush()


def output_directory(override: str = None) -> str:
    """
    Resolve where artifacts are written: explicit argument, then $TOPOPT_OUT, then ./topopt_out
    """
    if override is not None:
        return override
    return os.environ.get('TOPOPT_OUT', default_output_directory)


def check_length(vector: np.ndarray, expected: int, name: str = 'vector'):
    if vector.shape[0] != expected:
        raise DimensionError(f"{name} has length {vector.shape[0]}, expected {expected}")


def relative_residual(A, x: np.ndarray, b: np.ndarray, b_norm: float = None) -> float:
    if b_norm is None:
        b_norm = np.linalg.norm(b)
    if b_norm == 0.0:
        return float(np.linalg.norm(A @ x))
    return float(np.linalg.norm(b - A @ x) / b_norm)


class Timer:
    """
    Monotonic wall clock for a single measured call: with Timer() as t: ...; t.seconds
    """
    def __init__(self):
        self.start = None
        self.seconds = 0.0

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = round(time.perf_counter() - self.start, 3)
        return False
