from topoptmg.mto.density import DensityField, effective_modulus, DEFAULT_DENSITY_FLOOR
from topoptmg.mto.sensitivities import sensitivities, sensitivities_from_energies
from topoptmg.mto.filters import SensitivityFilter, filter_sensitivities
from topoptmg.mto.optimality_criteria import oc_update_pair
from topoptmg.mto.optimizer import OptimConfig, OptimReport, optimize
