from dataclasses import dataclass
from math import fsum
from typing import Sequence, Union

from pandas import DataFrame

from hpbench.environment.episode_log import episode_frame
from hpbench.environment.transition import Transition
from hpbench.utils import num_format

SECONDS_PER_KWH = 3.6e6
AVG_DEV_LIMIT = 0.05
MAX_DEV_LIMIT = 2.5


@dataclass(frozen=True)
class KpiReport(object):
    """
    Energy and comfort indicators of one episode.

    :param energy_kwh: Electrical energy, kWh.
    :param avg_dev_k: Mean |t_room − t_ref|, K.
    :param max_dev_k: Max |t_room − t_ref|, K.
    :param violation_steps: Steps ending with t_room < t_ref.
    :param pass_comfort: avg_dev_k < 0.05 and max_dev_k < 2.5.
    :param max_underheat_k: Max of t_ref − t_room, floored at 0, K.
    :param avg_underheat_k: Mean of t_ref − t_room, floored at 0, K.
    """
    energy_kwh: float
    avg_dev_k: float
    max_dev_k: float
    violation_steps: int
    pass_comfort: bool
    max_underheat_k: float
    avg_underheat_k: float

    def __str__(self):

        return (
            f'energy={num_format(self.energy_kwh, 2)} kWh, '
            f'avg_dev={num_format(self.avg_dev_k, 3)} K, '
            f'max_dev={num_format(self.max_dev_k, 3)} K, '
            f'violations={self.violation_steps}, '
            f'pass={self.pass_comfort}'
        )


def compute_kpis(trajectory: Union[DataFrame, Sequence[Transition]],
                 t_ref: float = 20.0, dt: float = 900.0) -> KpiReport:
    """
    Compute the KPIs of an episode from its true room temperatures and
    electrical powers.

    :param trajectory: Episode log frame or the episode's transitions.
    :param t_ref: Room set-point, °C.
    :param dt: Step length, s.
    """
    if not isinstance(trajectory, DataFrame):
        trajectory = episode_frame(trajectory)
    if len(trajectory) == 0:
        raise ValueError('cannot compute KPIs of an empty trajectory')
    t_room = [float(t) for t in trajectory['t_room']]
    p_el = [float(p) for p in trajectory['p_el_w']]
    n = len(t_room)
    deviations = [abs(t - t_ref) for t in t_room]
    underheat = [max(0.0, t_ref - t) for t in t_room]
    avg_dev = fsum(deviations) / n
    max_dev = max(deviations)
    return KpiReport(
        energy_kwh=fsum(p * dt / SECONDS_PER_KWH for p in p_el),
        avg_dev_k=avg_dev,
        max_dev_k=max_dev,
        violation_steps=sum(1 for t in t_room if t < t_ref),
        pass_comfort=avg_dev < AVG_DEV_LIMIT and max_dev < MAX_DEV_LIMIT,
        max_underheat_k=max(underheat),
        avg_underheat_k=fsum(underheat) / n
    )
