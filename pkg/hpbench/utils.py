from math import fsum, isfinite
from typing import Iterable

from numpy import asarray, ndarray


def clamp(value: float, lower: float, upper: float) -> float:
    """
    Return value limited to the closed interval [lower, upper].
    """
    return max(lower, min(upper, value))


def all_positive(*args) -> bool:
    """
    Return True if every arg is a finite number strictly greater than 0.
    """
    return all([isfinite(arg) and arg > 0 for arg in args])


def discounted_sum(values: Iterable[float], gamma: float) -> float:
    """
    Return the discounted sum Σ γ^t · v_t of a sequence.

    :param values: Per-step values, first step undiscounted.
    :param gamma: Discount factor.
    """
    return fsum(
        value * gamma ** t
        for t, value in enumerate(values)
    )


def as_float_array(values: Iterable[float]) -> ndarray:
    """
    Return a read-only float64 copy of values.
    """
    array = asarray(values, dtype=float).copy()
    array.setflags(write=False)
    return array


def num_format(number: float, max_dp: int) -> str:

    for ndp in range(max_dp):
        if round(number, ndp) == number:
            return f'{number:0.{ndp}f}'
    return f'{number:0.{max_dp}f}'
