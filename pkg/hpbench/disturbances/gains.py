from dataclasses import dataclass, field
from typing import Tuple

from numpy import array, ndarray, where
from pandas import DatetimeIndex, Series

from hpbench.exceptions import ParameterError

SLOTS_PER_DAY = 96


def _default_template() -> Tuple[float, ...]:

    template = [1.0] * SLOTS_PER_DAY
    for slot in list(range(6 * 4, 9 * 4)) + list(range(17 * 4, 23 * 4)):
        template[slot] = 3.0
    return tuple(template)


@dataclass(frozen=True)
class OccupancySchedule(object):
    """
    Internal gains per floor area as 96 quarter-hour slots, W/m².

    :param weekday: Template for Monday to Friday.
    :param weekend: Template for Saturday and Sunday.
    """
    weekday: Tuple[float, ...] = field(default_factory=_default_template)
    weekend: Tuple[float, ...] = field(default_factory=_default_template)

    def __post_init__(self):

        for name in ('weekday', 'weekend'):
            template = tuple(float(v) for v in getattr(self, name))
            if len(template) != SLOTS_PER_DAY:
                raise ParameterError(
                    f'{name} schedule needs {SLOTS_PER_DAY} slots, '
                    f'got {len(template)}'
                )
            if any(v < 0 for v in template):
                raise ParameterError(f'{name} schedule has negative entries')
            object.__setattr__(self, name, template)

    @staticmethod
    def constant(value: float) -> 'OccupancySchedule':
        """
        Return a schedule with the same value in every slot.
        """
        template = tuple([value] * SLOTS_PER_DAY)
        return OccupancySchedule(weekday=template, weekend=template)

    def profile(self, index: DatetimeIndex) -> ndarray:
        """
        Return the W/m² value of the slot containing each timestamp.
        """
        slots = (index.hour * 4 + index.minute // 15).to_numpy()
        weekend = (index.dayofweek >= 5).astype(bool)
        return where(
            weekend,
            array(self.weekend)[slots],
            array(self.weekday)[slots]
        )


def gains_profile(a_floor: float, solar: Series,
                  schedule: OccupancySchedule,
                  window_area: float = 0.0,
                  g_value: float = 0.0) -> Series:
    """
    Return the total heat gains in W on the time grid of solar.

    q_gain = a_floor·schedule + window_area·g_value·solar

    :param a_floor: Conditioned floor area, m².
    :param solar: Global irradiance in W/m² indexed by timestamp.
    :param schedule: Occupancy schedule.
    :param window_area: Glazed area, m².
    :param g_value: Solar energy transmittance of the glazing.
    """
    if a_floor < 0 or window_area < 0 or g_value < 0:
        raise ParameterError('a_floor, window_area and g_value must be ≥ 0')
    if (solar < 0).any():
        raise ParameterError('solar irradiance must be non-negative')
    index = DatetimeIndex(solar.index)
    occupancy = a_floor * schedule.profile(index)
    return Series(
        occupancy + window_area * g_value * solar.values,
        index=solar.index, name='q_gain'
    )
