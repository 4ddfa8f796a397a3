from dataclasses import dataclass
from typing import Tuple

from numpy import ndarray

from hpbench.controllers.controller_mixin import ControllerMixin
from hpbench.exceptions import ParameterError
from hpbench.utils import clamp, num_format


@dataclass(frozen=True)
class HeatingCurve(ControllerMixin):
    """
    Rule-based controller setting the supply temperature linearly from the
    ambient temperature.

    t_hp_sup = clamp(base + slope·(t_design − t_amb), clamp)

    :param base: Supply temperature at t_amb = t_design, °C.
    :param slope: Rise of the supply per K of colder ambient.
    :param clamp: Limits of the supply temperature, °C.
    :param t_design: Ambient temperature at which the supply equals base.
    """
    base: float = 28.0
    slope: float = 1.0
    clamp: Tuple[float, float] = (20.0, 55.0)
    t_design: float = 20.0
    name = 'heating_curve'

    def __post_init__(self):

        object.__setattr__(self, 'clamp', tuple(float(c) for c in self.clamp))
        if self.slope < 0:
            raise ParameterError('slope must be non-negative')
        if not self.clamp[0] < self.clamp[1]:
            raise ParameterError('clamp must be (low, high), low < high')

    def supply_temperature(self, observation: ndarray, env=None) -> float:

        return heating_curve_act(self, float(observation[0]))

    def __str__(self):

        return (
            f'HeatingCurve({num_format(self.base, 2)} + '
            f'{num_format(self.slope, 3)}·({num_format(self.t_design, 2)} '
            f'− T_amb) ∈ [{num_format(self.clamp[0], 1)}, '
            f'{num_format(self.clamp[1], 1)}])'
        )


def heating_curve_act(curve: HeatingCurve, t_amb_observed: float) -> float:
    """
    Return the supply temperature of the heating curve, °C.

    :param curve: Heating curve parameters.
    :param t_amb_observed: Observed ambient temperature, °C.
    """
    return clamp(
        curve.base + curve.slope * (curve.t_design - t_amb_observed),
        curve.clamp[0], curve.clamp[1]
    )
