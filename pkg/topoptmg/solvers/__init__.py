from topoptmg.solvers.solver_config import SolverConfig, supported_methods
from topoptmg.solvers.solve_report import SolveReport
from topoptmg.solvers.cholesky import CholeskyFactor, cholesky_factor, cholesky_solve
from topoptmg.solvers.stationary import smoother_sweep, stationary_solve
from topoptmg.solvers.krylov import cg_solve, pcg_solve
from topoptmg.solvers.multigrid import mg_cycle, MultigridPreconditioner, pcgmg_solve
from topoptmg.solvers.solve import solve
