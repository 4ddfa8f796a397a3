from typing import Union, Iterable, Sequence, Tuple

from numpy import ndarray
from pandas import Series

FloatArray1d = Union[Iterable[float], ndarray, Series]
FloatOrFloatArray1d = Union[float, Iterable[float], ndarray]

# (dT_room/dt, dT_hp,ret/dt) or (dT_room/dt, dT_wall/dt, dT_hp,ret/dt)
Derivative = Tuple[float, ...]

# second-order polynomial in (T_hp,sup, T_amb):
# c0 + c1·s + c2·a + c3·s² + c4·s·a + c5·a²
PolyCoefficients = Sequence[float]
