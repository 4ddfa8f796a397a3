from hpbench.building.building_params import BuildingParams, derive_params
from hpbench.building.building_state import BuildingState
from hpbench.building.disturbance_sample import DisturbanceSample
from hpbench.building.dynamics import (
    DT_CONTROL, DT_SUBSTEP, discretize, integrate_step, rhs, rhs_three_state,
    rhs_two_state, steady_state, system_eigenvalues, system_matrices
)
