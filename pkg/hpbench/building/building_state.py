from dataclasses import dataclass
from math import isfinite

from numpy import array, ndarray

from hpbench.custom_types.array_types import FloatArray1d
from hpbench.exceptions import SimulationBlowupError

T_PLAUSIBLE_MIN = -30.0
T_PLAUSIBLE_MAX = 100.0


@dataclass(frozen=True)
class BuildingState(object):
    """
    Temperatures of the building model in °C.

    The two-state model has no wall node; it carries t_wall equal to t_room.
    """
    t_room: float
    t_wall: float
    t_hp_ret: float

    @staticmethod
    def uniform(temperature: float) -> 'BuildingState':
        """
        Return a state with every node at the same temperature.
        """
        return BuildingState(temperature, temperature, temperature)

    @staticmethod
    def from_array(values: FloatArray1d) -> 'BuildingState':

        t_room, t_wall, t_hp_ret = values
        return BuildingState(float(t_room), float(t_wall), float(t_hp_ret))

    def as_array(self) -> ndarray:

        return array([self.t_room, self.t_wall, self.t_hp_ret])

    def check_plausible(self) -> 'BuildingState':
        """
        Raise a SimulationBlowupError naming the first node outside the
        plausible temperature band, otherwise return self.
        """
        for name in ('t_room', 't_wall', 't_hp_ret'):
            value = getattr(self, name)
            if (
                    not isfinite(value) or
                    not T_PLAUSIBLE_MIN <= value <= T_PLAUSIBLE_MAX
            ):
                raise SimulationBlowupError(
                    name, value, T_PLAUSIBLE_MIN, T_PLAUSIBLE_MAX
                )
        return self
