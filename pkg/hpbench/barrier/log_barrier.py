"""
Linear smoothed log barrier.

For x ≤ −1/μ² the barrier is the scaled logarithm −(1/μ)·ln(−x); beyond the
joint it continues as the tangent line μx − (1/μ)·ln(1/μ²) + 1/μ, so it is
C¹, convex and non-decreasing everywhere. The shifted barrier applies it to
ReLU(x − d) − 1 and is exactly zero whenever x ≤ d.
"""
from dataclasses import dataclass
from typing import Tuple

from numpy import asarray, log, maximum, ndarray, where

from hpbench.custom_types.array_types import FloatOrFloatArray1d
from hpbench.exceptions import ParameterError


@dataclass(frozen=True)
class BarrierParams(object):
    """
    :param mu: Barrier sharpness. The shifted barrier needs mu > 1.
    :param d: Cost limit.
    """
    mu: float = 10.0
    d: float = 10.0

    def __post_init__(self):

        if not self.mu > 0:
            raise ParameterError('mu must be positive')


def _output(value: ndarray):

    if value.ndim == 0:
        return float(value)
    return value


def psi_tilde(x: FloatOrFloatArray1d,
              mu: float) -> Tuple[FloatOrFloatArray1d, FloatOrFloatArray1d]:
    """
    Return the value and derivative of the smoothed log barrier at x.

    :param x: Point(s), finite.
    :param mu: Sharpness, > 0.
    """
    if not mu > 0:
        raise ParameterError('mu must be positive')
    x = asarray(x, dtype=float)
    on_log = x <= -1 / mu ** 2
    x_log = where(on_log, x, -1.0)
    value = where(
        on_log,
        -log(-x_log) / mu,
        mu * x - log(1 / mu ** 2) / mu + 1 / mu
    )
    derivative = where(on_log, -1 / (mu * x_log), mu)
    return _output(value), _output(derivative)


def psi_star(x: FloatOrFloatArray1d, mu: float,
             d: float) -> Tuple[FloatOrFloatArray1d, FloatOrFloatArray1d]:
    """
    Return the value and derivative of the shifted barrier
    psi_tilde(ReLU(x − d) − 1) at x.

    Value and derivative are exactly 0 for x ≤ d, the kink included.

    :param x: Cost estimate(s).
    :param mu: Sharpness, > 1.
    :param d: Cost limit.
    """
    if not mu > 1:
        raise ParameterError('the shifted barrier needs mu > 1')
    x = asarray(x, dtype=float)
    violated = x > d
    value, derivative = psi_tilde(maximum(x - d, 0.0) - 1, mu)
    return (
        _output(where(violated, value, 0.0)),
        _output(where(violated, derivative, 0.0))
    )
