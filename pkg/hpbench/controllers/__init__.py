from hpbench.controllers.controller_mixin import ControllerMixin
from hpbench.controllers.heating_curve import HeatingCurve, heating_curve_act
from hpbench.controllers.mpc import (
    HorizonModel, MpcConfig, MpcController, mpc_objective, mpc_plan, mpc_solve
)
