from dataclasses import replace

from hpbench.environment.building_env import BuildingEnv
from hpbench.environment.transition import Transition
from hpbench.exceptions import ParameterError


class PenaltyRewardEnv(BuildingEnv):
    """
    BuildingEnv whose reward is reduced by a fixed penalty on every step
    that leaves the room below the set-point.

    The unshaped energy reward stays available as info['energy_reward'].
    """
    def __init__(self, *args, penalty: float = 2.0, **kwargs):
        """
        :param penalty: Amount subtracted from the reward while cost > 0.
        """
        if penalty < 0:
            raise ParameterError('penalty must be non-negative')
        super().__init__(*args, **kwargs)
        self._penalty: float = float(penalty)

    @property
    def penalty(self) -> float:
        return self._penalty

    def step(self, action: float) -> Transition:

        transition = super().step(action)
        info = dict(transition.info)
        info['energy_reward'] = transition.reward
        shaped = transition.reward
        if transition.cost > 0:
            shaped -= self._penalty
        return replace(transition, reward=shaped, info=info)
