"""
    Exception definitions for topopt-mg
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""


class ConfigurationError(Exception):
    def __init__(self, message: str, key: str = None, line: int = None):
        self.key = key
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionError(Exception):
    pass


class NumericalError(Exception):
    pass


class DefinitenessError(NumericalError):
    def __init__(self, message: str, row: int = None):
        # 1-based, matching the order of the failing leading minor
        self.row = row
        super().__init__(message)


class SplittingError(NumericalError):
    pass


class PreconditionerError(NumericalError):
    pass


class MultiplierError(NumericalError):
    pass
