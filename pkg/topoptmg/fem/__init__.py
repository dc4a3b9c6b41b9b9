from topoptmg.fem.elements import element_stiffness, poisson_element_stiffness, poisson_element_mass
from topoptmg.fem.assembly import SparseSymMatrix, MaterialModel, BoundaryConditions, assemble_elasticity, \
    assemble_poisson, compliance, element_energies, is_symmetric, apply_dirichlet
from topoptmg.fem.problems import square_wall_problem
