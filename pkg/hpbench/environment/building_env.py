import logging
from math import isnan
from typing import Any, Dict, Optional

from numpy import array, ndarray, zeros
from numpy.random import Generator, Philox

from hpbench.building.building_params import BuildingParams
from hpbench.building.building_state import BuildingState
from hpbench.building.dynamics import integrate_step
from hpbench.disturbances.disturbance_series import DisturbanceSeries
from hpbench.environment.env_config import EnvConfig
from hpbench.environment.transition import Transition
from hpbench.exceptions import EnvironmentStateError, InvalidActionError
from hpbench.heat_pump.heat_pump_model import HeatPumpModel

logger = logging.getLogger(__name__)

MODES = ('train', 'eval')
SECONDS_PER_KWH = 3.6e6


class BuildingEnv(object):
    """
    Constrained control environment of a heat-pump heated building.

    The action sets the supply temperature for the next control interval.
    The reward is the negative electrical energy in kWh and the cost is the
    underheating of the true room temperature below the set-point.
    Observation noise only affects what the controller sees.
    """
    def __init__(self, params: Optional[BuildingParams] = None,
                 heat_pump: Optional[HeatPumpModel] = None,
                 disturbances: Optional[DisturbanceSeries] = None,
                 config: Optional[EnvConfig] = None,
                 rng: Optional[Generator] = None):
        """
        Create a new BuildingEnv.

        :param params: Building parameters.
        :param heat_pump: Heat-pump efficiency model.
        :param disturbances: Weather and gains driving the building.
        :param config: Environment settings.
        :param rng: Random stream. A Philox stream seeded with
                    config.rng_seed if omitted.
        """
        self._params: Optional[BuildingParams] = params
        self._heat_pump: Optional[HeatPumpModel] = heat_pump
        self._disturbances: Optional[DisturbanceSeries] = disturbances
        self._config: EnvConfig = config or EnvConfig()
        self._rng: Generator = (
            rng if rng is not None else Generator(Philox(self._config.rng_seed))
        )
        self._state: Optional[BuildingState] = None
        self._mode: Optional[str] = None
        self._start_index: int = 0
        self._step_count: int = 0
        self._episode_len: int = self._config.episode_len
        self._done: bool = False

    @property
    def params(self) -> BuildingParams:
        return self._params

    @property
    def heat_pump(self) -> HeatPumpModel:
        return self._heat_pump

    @property
    def disturbances(self) -> DisturbanceSeries:
        return self._disturbances

    @property
    def config(self) -> EnvConfig:
        return self._config

    @property
    def rng(self) -> Generator:
        return self._rng

    @property
    def state(self) -> BuildingState:
        """
        True (noise-free) building state.
        """
        return self._state

    @property
    def mode(self) -> Optional[str]:
        return self._mode

    @property
    def start_index(self) -> int:
        return self._start_index

    @property
    def step_count(self) -> int:
        return self._step_count

    @property
    def episode_len(self) -> int:
        return self._episode_len

    @property
    def done(self) -> bool:
        return self._done

    @property
    def index(self) -> int:
        """
        Disturbance index of the upcoming interval.
        """
        return self._start_index + self._step_count

    @property
    def is_configured(self) -> bool:
        return not any(
            item is None for item in
            (self._params, self._heat_pump, self._disturbances)
        )

    def reset(self, mode: str = 'train',
              seed: Optional[int] = None) -> ndarray:
        """
        Start a new episode and return its first observation.

        Training episodes start at a random interval of the disturbance
        series from a random state. Evaluation episodes start at the first
        interval from config.eval_state and run over config.eval_episode_len
        steps, or the whole series.

        :param mode: 'train' or 'eval'.
        :param seed: Reseeds the random stream when given.
        """
        if not self.is_configured:
            raise EnvironmentStateError(
                'environment needs building parameters, a heat pump and '
                'disturbances before reset'
            )
        if mode not in MODES:
            raise ValueError(f'mode must be one of {MODES}')
        if seed is not None:
            self._rng = Generator(Philox(seed))
        if mode == 'train':
            self._start_index = int(
                self._rng.integers(0, len(self._disturbances))
            )
            t_room = float(self._rng.uniform(15.0, 25.0))
            t_hp_ret = float(self._rng.uniform(20.0, 40.0))
            self._state = BuildingState(t_room, t_room, t_hp_ret)
            self._episode_len = self._config.episode_len
        else:
            self._start_index = 0
            self._state = BuildingState(*self._config.eval_state)
            self._episode_len = (
                self._config.eval_episode_len or len(self._disturbances)
            )
        self._mode = mode
        self._step_count = 0
        self._done = False
        return self._observe()

    def _observe(self) -> ndarray:

        dist = self._disturbances.sample(self.index)
        obs = array([
            dist.t_amb, self._state.t_room, self._state.t_wall,
            self._state.t_hp_ret, dist.q_gain / 1000
        ])
        if self._config.noise_sigma > 0:
            noise = zeros(5)
            noise[:4] = self._rng.normal(0.0, self._config.noise_sigma, 4)
            obs = obs + noise
        return obs

    def step(self, action: float) -> Transition:
        """
        Apply a normalized action for one control interval.

        :param action: Requested supply temperature scaled to [−1, 1];
                       values outside are clipped.
        """
        if self._state is None:
            raise EnvironmentStateError('step called before reset')
        if self._done:
            raise EnvironmentStateError('episode is done, call reset')
        action = float(action)
        if isnan(action):
            raise InvalidActionError('action is NaN')
        if not -1.0 <= action <= 1.0:
            logger.debug('clipping action %.4f to [-1, 1]', action)
            action = max(-1.0, min(1.0, action))
        config = self._config
        t_hp_sup = config.supply_temperature(action)
        dist = self._disturbances.sample(self.index)
        q_th, p_el = self._heat_pump.hp_power(
            self._params, t_hp_sup, self._state.t_hp_ret, dist.t_amb
        )
        self._state = integrate_step(
            self._state, dist, t_hp_sup, self._params,
            dt=config.dt, substep=config.substep
        )
        reward = -p_el * config.dt / SECONDS_PER_KWH if p_el > 0 else 0.0
        cost = max(0.0, config.t_ref - self._state.t_room)
        self._step_count += 1
        self._done = self._step_count >= self._episode_len
        info: Dict[str, Any] = {
            'state': self._state,
            'step': self._step_count - 1,
            't_amb': dist.t_amb,
            'q_gain': dist.q_gain,
            't_hp_sup': t_hp_sup,
            'q_th': q_th,
            'p_el': p_el,
            'cop': q_th / p_el if p_el > 0 else 0.0,
        }
        return Transition(
            obs=self._observe(), action=action, reward=reward,
            cost=cost, done=self._done, info=info
        )

    def __str__(self):

        return (
            f'BuildingEnv(mode={self._mode}, step={self._step_count}/'
            f'{self._episode_len}, start={self._start_index})'
        )

    def __repr__(self):

        return str(self)
