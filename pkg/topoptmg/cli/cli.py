"""
    Command line front end for the solver benchmarks and the square-wall optimization.
    Copyright (C) 2026  topopt-mg contributors

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU Lesser General Public License as published
    by the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.

    This program is distributed in the hope that it will be useful,
    but WITHOUT ANY WARRANTY; without even the implied warranty of
    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
    GNU Lesser General Public License for more details.

    You should have received a copy of the GNU Lesser General Public License
    along with this program.  If not, see <https://www.gnu.org/licenses/>.
"""

import argparse
import os
import sys

from topoptmg.bench.poisson_bench import run_poisson_bench
from topoptmg.bench.wall_sweep import full_wall_meshes, run_wall_sweep
from topoptmg.cli.config import material_model, optim_config, parse_config, parse_mesh, solver_config, \
    write_config
from topoptmg.cli.outputs import emit_outputs
from topoptmg.fem.assembly import assemble_elasticity, assemble_poisson
from topoptmg.fem.problems import square_wall_problem
from topoptmg.grid.hierarchy import GridLevel, build_hierarchy
from topoptmg.mto.density import DensityField
from topoptmg.solvers.solve import solve
from topoptmg.solvers.solver_config import supported_methods
from topoptmg.utils.exceptions import ConfigurationError, DimensionError, NumericalError
from topoptmg.utils.utils import info_print, output_directory


# From blender build scripts found at
# https://stackoverflow.com/a/287944/8087739
class TermColors:
    HEADER = '\033[95m'
    OKBLUE = '\033[94m'
    OKCYAN = '\033[96m'
    OKGREEN = '\033[92m'
    WARNING = '\033[93m'
    FAIL = '\033[91m'
    ENDC = '\033[0m'
    BOLD = '\033[1m'
    UNDERLINE = '\033[4m'


exit_codes = {
    'ok': 0,
    'configuration': 1,
    'numerical': 2,
    'io': 3,
}


def add_common_args(arg_parser):
    arg_parser.add_argument('--config', type=str, default=None, help='Flat key = value settings file.')
    arg_parser.add_argument('--out', type=str, default=None,
                            help='Output directory, defaults to $TOPOPT_OUT or ./topopt_out.')
    arg_parser.add_argument('--quiet', action='store_true', help='No progress bar and no per-iteration records.')


def add_solver_args(arg_parser):
    method_names = [m.replace('_', '-') for m in supported_methods]
    arg_parser.add_argument('--method', type=str, default=None, help=f"One of {', '.join(method_names)}.")
    arg_parser.add_argument('--cgtol', type=float, default=None, help='Relative residual tolerance.')
    arg_parser.add_argument('--cg-max', dest='cg_max', type=int, default=None, help='Iteration cap.')
    arg_parser.add_argument('--omega', type=float, default=None, help='Damped Jacobi weight.')
    arg_parser.add_argument('--gamma', type=int, default=None, help='1 for a V-cycle, 2 for a W-cycle.')
    arg_parser.add_argument('--pre-sweeps', dest='pre_sweeps', type=int, default=None)
    arg_parser.add_argument('--post-sweeps', dest='post_sweeps', type=int, default=None)
    arg_parser.add_argument('--mg-levels', dest='mg_levels', type=int, default=None,
                            help='Number of coarsenings of the finest grid.')
    arg_parser.add_argument('--smoother', type=str, default=None)


parser = argparse.ArgumentParser(prog='topopt-mg',
                                 description='Multigrid-preconditioned solvers and multi-material topology '
                                             'optimization on structured grids.')

subparsers = parser.add_subparsers(help='Different topopt-mg commands.')

poisson_parser = subparsers.add_parser('poisson-bench', help='Compare solvers on the Poisson problem.')
poisson_parser.set_defaults(which='poisson-bench')
poisson_parser.add_argument('--grids', type=str, default=None, help='Comma separated square grid sizes.')
poisson_parser.add_argument('--methods', type=str, default=None, help='Comma separated solver methods.')
poisson_parser.add_argument('--tol', dest='cgtol', type=float, default=None, help='Relative residual tolerance.')
poisson_parser.add_argument('--cholesky-cap', dest='cholesky_cap', type=int, default=None,
                            help='Largest grid size solved directly.')
add_common_args(poisson_parser)

wall_parser = subparsers.add_parser('wall', help='Run the square-wall optimization sweep.')
wall_parser.set_defaults(which='wall')
wall_parser.add_argument('--mesh', type=str, default=None, help='Comma separated meshes such as 32x32,32x64.')
wall_parser.add_argument('--levels', type=str, default=None, help='Comma separated levels, e.g. accurate,2,3.')
wall_parser.add_argument('--full', action='store_true', help='Sweep every mesh from 32x32 to 128x256.')
wall_parser.add_argument('--parallel', action='store_true', default=None,
                         help='Run cells in parallel. Wall times become unreliable.')
wall_parser.add_argument('--max-outer', dest='max_outer', type=int, default=None)
add_solver_args(wall_parser)
add_common_args(wall_parser)

solve_parser = subparsers.add_parser('solve', help='Assemble and solve one linear system.')
solve_parser.set_defaults(which='solve')
solve_parser.add_argument('--problem', type=str, choices=['poisson', 'wall'], default='poisson')
solve_parser.add_argument('--mesh', type=str, default=None, help='Mesh such as 64x64.')
add_solver_args(solve_parser)
add_common_args(solve_parser)

setting_flags = ['grids', 'methods', 'cgtol', 'cholesky_cap', 'mesh', 'levels', 'parallel', 'max_outer', 'method',
                 'cg_max', 'omega', 'gamma', 'pre_sweeps', 'post_sweeps', 'mg_levels', 'smoother']


def run_poisson_bench_command(settings, out_dir: str, verbose: bool):
    print(f"{TermColors.BOLD}Poisson solver comparison{TermColors.ENDC}")
    matrix = run_poisson_bench(settings.grids, settings.methods, settings.cgtol, solver_config(settings),
                               settings.cholesky_cap, verbose=verbose)
    print(matrix.to_markdown())
    emit_outputs(matrix, out_dir)
    matrix.to_csv(os.path.join(out_dir, 'bench.csv'))


def run_wall_command(settings, out_dir: str, full: bool, verbose: bool):
    meshes = full_wall_meshes if full else [parse_mesh(mesh) for mesh in settings.mesh]
    print(f"{TermColors.BOLD}Square wall sweep{TermColors.ENDC}")
    matrix = run_wall_sweep(meshes, settings.levels, optim_config(settings), material_model(settings),
                            out_dir=out_dir, parallel=settings.parallel, verbose=verbose, stream=verbose)
    print(matrix.to_markdown())
    emit_outputs(matrix, out_dir)


def run_solve_command(settings, problem: str):
    cfg = solver_config(settings)
    for mesh in settings.mesh:
        nx, ny = parse_mesh(mesh)
        if problem == 'poisson':
            K, F = assemble_poisson(GridLevel(nx, ny, 1, cfg.num_coarsenings), spacing=1.0 / max(nx, ny))
            dofs_per_node = 1
        else:
            level, bc = square_wall_problem(nx, ny)
            density = DensityField.uniform(nx, ny, settings.volume_fractions, settings.density_floor)
            K, F = assemble_elasticity(level, density, material_model(settings), bc)
            dofs_per_node = 2
        hierarchy = build_hierarchy(nx, ny, cfg.num_coarsenings, dofs_per_node) if cfg.method == 'pcgmg' else None
        report = solve(K, F, cfg, hierarchy)
        print(f"{TermColors.OKCYAN}{problem} on {mesh}{TermColors.ENDC}")
        print(report)


def main(argv=None) -> int:
    try:
        args = vars(parser.parse_args(argv))
    except SystemExit as e:
        # argparse exits with 2 on bad flags, which would read as a numerical failure
        return exit_codes['ok'] if not e.code else exit_codes['configuration']
    try:
        which = args['which']
    except KeyError:
        parser.print_help()
        return exit_codes['ok']

    verbose = not args['quiet']
    try:
        overrides = {key: args[key] for key in setting_flags if key in args}
        settings = parse_config(args['config'], overrides)
        out_dir = output_directory(args['out'] or settings.out_dir or None)
        if which in ('poisson-bench', 'wall'):
            try:
                os.makedirs(out_dir, exist_ok=True)
            except OSError as e:
                raise OSError(f"Could not create {out_dir}: {e}") from e
            write_config(settings, os.path.join(out_dir, 'config.txt'))

        if which == 'poisson-bench':
            run_poisson_bench_command(settings, out_dir, verbose)
        elif which == 'wall':
            run_wall_command(settings, out_dir, args['full'], verbose)
        elif which == 'solve':
            run_solve_command(settings, args['problem'])
    except (ConfigurationError, DimensionError) as e:
        print(f"{TermColors.FAIL}Configuration error: {e}{TermColors.ENDC}", file=sys.stderr)
        return exit_codes['configuration']
    except NumericalError as e:
        print(f"{TermColors.FAIL}Numerical failure: {e}{TermColors.ENDC}", file=sys.stderr)
        return exit_codes['numerical']
    except OSError as e:
        print(f"{TermColors.FAIL}I/O error: {e}{TermColors.ENDC}", file=sys.stderr)
        return exit_codes['io']

    if which != 'solve':
        info_print(f"Outputs written to {out_dir}")
    return exit_codes['ok']


if __name__ == '__main__':
    sys.exit(main())
