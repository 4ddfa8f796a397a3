from dataclasses import dataclass, field
from typing import Any, Dict

from numpy import ndarray

from hpbench.building.building_state import BuildingState

OBSERVATION_LABELS = ('t_amb', 't_room', 't_wall', 't_hp_ret', 'q_gain_kw')


@dataclass(frozen=True)
class Transition(object):
    """
    Record of one environment step.

    :param obs: Observation after the step, [t_amb, t_room, t_wall,
                t_hp_ret, q_gain_kw] for the upcoming interval.
    :param action: Normalized action that was applied, in [−1, 1].
    :param reward: Negative electrical energy of the step, kWh.
    :param cost: Underheating of the true room temperature, K.
    :param done: True when the episode is truncated.
    :param info: True state, t_amb, q_gain, t_hp_sup, q_th, p_el and cop.
    """
    obs: ndarray
    action: float
    reward: float
    cost: float
    done: bool
    info: Dict[str, Any] = field(default_factory=dict)

    @property
    def state(self) -> BuildingState:
        return self.info['state']

    @property
    def p_el(self) -> float:
        return self.info['p_el']

    @property
    def t_hp_sup(self) -> float:
        return self.info['t_hp_sup']
