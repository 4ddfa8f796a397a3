"""
Receding-horizon model predictive control of the supply temperature.

The plan minimizes the electrical energy over the horizon plus a weighted
squared slack on room temperatures below y_min. Room and return
temperatures are affine in the plan through the discretized building
model, so the objective and its gradient are evaluated in closed form and
minimized by projected gradient descent with step halving.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from numpy import (
    abs as np_abs, array, clip, concatenate, full, maximum, ndarray, zeros
)

from hpbench.building.building_params import BuildingParams
from hpbench.building.building_state import BuildingState
from hpbench.building.dynamics import DT_CONTROL, DT_SUBSTEP, discretize
from hpbench.controllers.controller_mixin import ControllerMixin
from hpbench.disturbances.disturbance_series import DisturbanceSeries
from hpbench.exceptions import ParameterError
from hpbench.heat_pump.heat_pump_model import HeatPumpModel

logger = logging.getLogger(__name__)

SECONDS_PER_KWH = 3.6e6
MIN_STEP = 1e-6


@dataclass(frozen=True)
class MpcConfig(object):
    """
    :param horizon: Steps in the plan.
    :param slack_weight: Weight of the squared comfort slack, per K².
    :param iters: Gradient iterations per solve.
    :param step_size: Initial step, °C of the largest control move.
    :param u_bounds: Supply temperature limits, °C.
    :param y_min: Lower room temperature bound, °C.
    """
    horizon: int = 24
    slack_weight: float = 0.1
    iters: int = 200
    step_size: float = 0.5
    u_bounds: Tuple[float, float] = (20.0, 60.0)
    y_min: float = 20.0

    def __post_init__(self):

        object.__setattr__(
            self, 'u_bounds', tuple(float(u) for u in self.u_bounds)
        )
        if self.horizon < 1:
            raise ParameterError('horizon must be at least 1')
        if not self.slack_weight > 0:
            raise ParameterError('slack_weight must be positive')
        if self.iters < 0:
            raise ParameterError('iters must be non-negative')
        if not self.step_size > 0:
            raise ParameterError('step_size must be positive')
        if not self.u_bounds[0] < self.u_bounds[1]:
            raise ParameterError('u_bounds must be (low, high), low < high')


class HorizonModel(object):
    """
    Affine map from a control plan to the room and return temperatures over
    the horizon, built from the discretized building model.
    """
    def __init__(self, params: BuildingParams, horizon: int,
                 dt: float = DT_CONTROL, substep: float = DT_SUBSTEP):

        self._params: BuildingParams = params
        self._horizon: int = horizon
        self._dt: float = dt
        phi, gamma = discretize(params, dt, substep)
        self._phi: ndarray = phi
        self._gamma: ndarray = gamma
        # column j of impulses is Φ^j·γ_u
        impulses = zeros((3, horizon))
        impulse = gamma[:, 1].copy()
        for j in range(horizon):
            impulses[:, j] = impulse
            impulse = phi @ impulse
        self._g_room: ndarray = zeros((horizon, horizon))
        self._g_ret: ndarray = zeros((horizon, horizon))
        for k in range(horizon):
            for j in range(k + 1):
                self._g_room[k, j] = impulses[0, k - j]
            for j in range(k):
                self._g_ret[k, j] = impulses[2, k - 1 - j]

    @property
    def params(self) -> BuildingParams:
        return self._params

    @property
    def horizon(self) -> int:
        return self._horizon

    @property
    def dt(self) -> float:
        return self._dt

    @property
    def g_room(self) -> ndarray:
        """
        d t_room(k + 1) / d u(j).
        """
        return self._g_room

    @property
    def g_ret(self) -> ndarray:
        """
        d t_hp_ret(k) / d u(j).
        """
        return self._g_ret

    def free_response(self, state: BuildingState,
                      forecast: DisturbanceSeries) -> Tuple[ndarray, ndarray]:
        """
        Return the room temperatures after each step and the return
        temperatures at the start of each step with zero supply.
        """
        x = state.as_array()
        rooms = zeros(self._horizon)
        rets = zeros(self._horizon)
        for k in range(self._horizon):
            rets[k] = x[2]
            x = (
                self._phi @ x
                + self._gamma[:, 0] * forecast.t_amb[k]
                + self._gamma[:, 2] * forecast.q_gain[k]
            )
            rooms[k] = x[0]
        return rooms, rets


class _Objective(object):

    def __init__(self, cfg: MpcConfig, model: HorizonModel,
                 heat_pump: HeatPumpModel, state: BuildingState,
                 forecast: DisturbanceSeries):

        self.cfg = cfg
        self.model = model
        self.heat_pump = heat_pump
        self.t_amb = forecast.t_amb[:cfg.horizon]
        self.rooms_free, self.rets_free = model.free_response(state, forecast)
        self.energy_scale = model.dt / SECONDS_PER_KWH

    def value_and_gradient(self, u: ndarray) -> Tuple[float, ndarray]:

        model = self.model
        rooms = self.rooms_free + model.g_room @ u
        rets = self.rets_free + model.g_ret @ u
        p_el, dp_ds, dp_dr = self.heat_pump.power_gradient(
            model.params, u, rets, self.t_amb
        )
        slack = maximum(0.0, self.cfg.y_min - rooms)
        value = (
            self.energy_scale * p_el.sum()
            + self.cfg.slack_weight * (slack * slack).sum()
        )
        gradient = (
            self.energy_scale * dp_ds
            + model.g_ret.T @ (self.energy_scale * dp_dr)
            - 2 * self.cfg.slack_weight * (model.g_room.T @ slack)
        )
        return float(value), gradient


def _check_forecast(cfg: MpcConfig, forecast: DisturbanceSeries):

    if len(forecast) < cfg.horizon:
        raise ParameterError(
            f'forecast has {len(forecast)} steps, horizon needs {cfg.horizon}'
        )


def mpc_objective(cfg: MpcConfig, model: HorizonModel,
                  heat_pump: HeatPumpModel, state: BuildingState,
                  forecast: DisturbanceSeries, controls: ndarray) -> float:
    """
    Return the objective of a control plan: energy in kWh plus the weighted
    squared comfort slack.
    """
    _check_forecast(cfg, forecast)
    objective = _Objective(cfg, model, heat_pump, state, forecast)
    value, _ = objective.value_and_gradient(array(controls, dtype=float))
    return value


def mpc_solve(cfg: MpcConfig, model: HorizonModel,
              heat_pump: HeatPumpModel, state: BuildingState,
              forecast: DisturbanceSeries,
              warm_start: Optional[ndarray] = None
              ) -> Tuple[ndarray, List[float]]:
    """
    Return the optimized plan and the objective of every accepted iterate,
    starting with the warm start.

    :param cfg: MPC settings.
    :param model: Horizon model of the building.
    :param heat_pump: Heat-pump efficiency model.
    :param state: Measured building state.
    :param forecast: Disturbances over at least the horizon.
    :param warm_start: Initial plan; all u_min if omitted.
    """
    _check_forecast(cfg, forecast)
    u_min, u_max = cfg.u_bounds
    if warm_start is None:
        u = full(cfg.horizon, u_min)
    else:
        u = clip(array(warm_start, dtype=float), u_min, u_max)
        if len(u) != cfg.horizon:
            raise ParameterError('warm start length must equal the horizon')
    objective = _Objective(cfg, model, heat_pump, state, forecast)
    value, gradient = objective.value_and_gradient(u)
    accepted = [value]
    step = cfg.step_size
    for _ in range(cfg.iters):
        scale = np_abs(gradient).max()
        if scale == 0 or step < MIN_STEP:
            break
        candidate = clip(u - step * gradient / scale, u_min, u_max)
        candidate_value, candidate_gradient = \
            objective.value_and_gradient(candidate)
        if candidate_value < value:
            assert candidate_value <= accepted[-1]
            u, value, gradient = candidate, candidate_value, candidate_gradient
            accepted.append(value)
        else:
            step /= 2
    logger.debug(
        'mpc solve: %d accepted of %d iterations, objective %.6f -> %.6f',
        len(accepted) - 1, cfg.iters, accepted[0], accepted[-1]
    )
    return u, accepted


def mpc_plan(cfg: MpcConfig, params: BuildingParams,
             heat_pump: HeatPumpModel, state: BuildingState,
             forecast: DisturbanceSeries,
             warm_start: Optional[ndarray] = None,
             dt: float = DT_CONTROL,
             substep: float = DT_SUBSTEP) -> ndarray:
    """
    Return the supply temperature plan over the horizon, °C.

    :param cfg: MPC settings.
    :param params: Building parameters of the prediction model.
    :param heat_pump: Heat-pump efficiency model.
    :param state: Measured building state.
    :param forecast: Disturbances over at least the horizon.
    :param warm_start: Initial plan; all u_min if omitted.
    :param dt: Control interval, s.
    :param substep: Integration substep, s.
    """
    model = HorizonModel(params, cfg.horizon, dt, substep)
    controls, _ = mpc_solve(cfg, model, heat_pump, state, forecast,
                            warm_start)
    return controls


class MpcController(ControllerMixin):
    """
    MPC on the ground-truth building model with a perfect disturbance
    forecast, warm-started from its previous plan.
    """
    name = 'mpc'

    def __init__(self, config: MpcConfig, params: BuildingParams,
                 heat_pump: HeatPumpModel, dt: float = DT_CONTROL,
                 substep: float = DT_SUBSTEP):

        self._config: MpcConfig = config
        self._heat_pump: HeatPumpModel = heat_pump
        self._model: HorizonModel = HorizonModel(
            params, config.horizon, dt, substep
        )
        self._plan: Optional[ndarray] = None
        self._objectives: List[float] = []

    @property
    def config(self) -> MpcConfig:
        return self._config

    @property
    def plan(self) -> Optional[ndarray]:
        return self._plan

    @property
    def objectives(self) -> List[float]:
        """
        Accepted objectives of the latest solve.
        """
        return self._objectives

    def reset(self):

        self._plan = None
        self._objectives = []

    def warm_start(self) -> Optional[ndarray]:
        """
        Previous plan shifted by one step with its last entry repeated.
        """
        if self._plan is None:
            return None
        return concatenate([self._plan[1:], self._plan[-1:]])

    def mpc_act(self, state: BuildingState,
                forecast: DisturbanceSeries) -> float:
        """
        Solve from the measured state and return the first control, °C.
        """
        plan, objectives = mpc_solve(
            self._config, self._model, self._heat_pump, state, forecast,
            self.warm_start()
        )
        self._plan = plan
        self._objectives = objectives
        return float(plan[0])

    def supply_temperature(self, observation: ndarray, env) -> float:

        state = BuildingState(
            float(observation[1]), float(observation[2]),
            float(observation[3])
        )
        forecast = env.disturbances.window(env.index, self._config.horizon)
        return self.mpc_act(state, forecast)
