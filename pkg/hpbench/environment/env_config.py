from dataclasses import dataclass
from typing import Optional, Tuple

from hpbench.exceptions import ParameterError
from hpbench.utils import clamp


@dataclass(frozen=True)
class EnvConfig(object):
    """
    Settings of the building control environment.

    :param t_ref: Room set-point, °C. Cost accrues below it.
    :param noise_sigma: Std of the observation noise on temperatures, K.
    :param episode_len: Steps per training episode.
    :param action_bounds: Supply temperatures, °C, that actions −1 and 1
                          map to.
    :param gamma: Discount factor.
    :param cost_limit_d: Budget on the expected discounted episode cost.
    :param rng_seed: Seed of the environment's random stream.
    :param dt: Control interval, s.
    :param substep: Integration substep, s.
    :param eval_episode_len: Steps of an evaluation episode. The full
                             disturbance series when None.
    :param eval_state: (t_room, t_wall, t_hp_ret) at an evaluation reset.
    """
    t_ref: float = 20.0
    noise_sigma: float = 0.0
    episode_len: int = 96
    action_bounds: Tuple[float, float] = (20.0, 60.0)
    gamma: float = 0.99
    cost_limit_d: float = 10.0
    rng_seed: int = 0
    dt: float = 900.0
    substep: float = 60.0
    eval_episode_len: Optional[int] = None
    eval_state: Tuple[float, float, float] = (20.0, 20.0, 25.0)

    def __post_init__(self):

        object.__setattr__(
            self, 'action_bounds', tuple(float(b) for b in self.action_bounds)
        )
        object.__setattr__(
            self, 'eval_state', tuple(float(t) for t in self.eval_state)
        )
        if self.episode_len < 1:
            raise ParameterError('episode_len must be at least 1')
        if self.eval_episode_len is not None and self.eval_episode_len < 1:
            raise ParameterError('eval_episode_len must be at least 1')
        if len(self.action_bounds) != 2 or \
                not self.action_bounds[0] < self.action_bounds[1]:
            raise ParameterError('action_bounds must be (low, high), low < high')
        if self.noise_sigma < 0:
            raise ParameterError('noise_sigma must be non-negative')
        if not 0 <= self.gamma <= 1:
            raise ParameterError('gamma must lie in [0, 1]')
        if not self.dt > 0 or not self.substep > 0:
            raise ParameterError('dt and substep must be positive')

    @property
    def midpoint(self) -> float:
        return (self.action_bounds[0] + self.action_bounds[1]) / 2

    @property
    def half_range(self) -> float:
        return (self.action_bounds[1] - self.action_bounds[0]) / 2

    def supply_temperature(self, action: float) -> float:
        """
        Map a normalized action to a supply temperature, clipping to [−1, 1].
        """
        return self.midpoint + clamp(action, -1.0, 1.0) * self.half_range

    def action_for(self, t_hp_sup: float) -> float:
        """
        Return the normalized action that requests the supply temperature.
        """
        return clamp((t_hp_sup - self.midpoint) / self.half_range, -1.0, 1.0)
