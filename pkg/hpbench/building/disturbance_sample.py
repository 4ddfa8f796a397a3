from dataclasses import dataclass

from hpbench.exceptions import ParameterError


@dataclass(frozen=True)
class DisturbanceSample(object):
    """
    Exogenous inputs over one control interval.

    :param t_amb: Ambient temperature, °C.
    :param q_gain: Internal and solar heat gains, W.
    """
    t_amb: float
    q_gain: float = 0.0

    def __post_init__(self):

        if not self.q_gain >= 0:
            raise ParameterError('q_gain must be non-negative')
