"""
    Table of benchmark cells: one row per completed (or failed) run.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.
"""

import typing

import pandas as pd

bench_columns = ['mesh', 'method', 'iterations', 'seconds', 'converged', 'note']


def mesh_label(nx: int, ny: int) -> str:
    return f"{nx}x{ny}"


class BenchMatrix:
    def __init__(self, rows: typing.Iterable[dict] = ()):
        self.rows = [dict(row) for row in rows]

    @property
    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=bench_columns)

    def add(self, mesh: str, method: str, iterations: typing.Optional[int], seconds: typing.Optional[float],
            converged: bool, note: str = ''):
        self.rows.append(dict(zip(bench_columns, [mesh, method, iterations, seconds, bool(converged), note])))

    def extend(self, other: 'BenchMatrix'):
        self.rows.extend(dict(row) for row in other.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def meshes(self) -> list:
        return list(dict.fromkeys(self.frame['mesh']))

    @property
    def methods(self) -> list:
        return list(dict.fromkeys(self.frame['method']))

    def cell(self, mesh: str, method: str) -> dict:
        match = self.frame[(self.frame['mesh'] == mesh) & (self.frame['method'] == method)]
        if match.empty:
            raise KeyError(f"No cell for {method} on {mesh}")
        return match.iloc[0].to_dict()

    def to_csv(self, path: str):
        self.frame.to_csv(path, index=False)

    def to_markdown(self) -> str:
        """
        Rows are methods, each mesh contributes an Iter. and a Time column
        """
        meshes = self.meshes
        header = '| Method |' + ''.join(f" {mesh} Iter. | {mesh} Time |" for mesh in meshes)
        separator = '|---|' + '---|---|' * len(meshes)
        lines = [header, separator]
        for method in self.methods:
            line = f"| {method} |"
            for mesh in meshes:
                try:
                    cell = self.cell(mesh, method)
                except KeyError:
                    line += ' | |'
                    continue
                iterations = '-' if pd.isna(cell['iterations']) else str(int(cell['iterations']))
                if cell['note']:
                    time_text = f"*{cell['note']}*"
                elif pd.isna(cell['seconds']):
                    time_text = '-'
                else:
                    time_text = f"{cell['seconds']:.3f}s"
                line += f" {iterations} | {time_text} |"
            lines.append(line)
        return '\n'.join(lines) + '\n'

    def __str__(self):
        return self.to_markdown()
