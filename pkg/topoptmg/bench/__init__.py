from topoptmg.bench.bench_matrix import BenchMatrix, mesh_label
from topoptmg.bench.poisson_bench import run_poisson_bench, poisson_levels
from topoptmg.bench.wall_sweep import run_wall_sweep, accurate_label
