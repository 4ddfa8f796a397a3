from typing import Optional, Union

from numpy import arange, ndarray, zeros
from pandas import (
    DataFrame, DatetimeIndex, Series, Timedelta, Timestamp, date_range
)

from hpbench.building.disturbance_sample import DisturbanceSample
from hpbench.custom_types.array_types import FloatArray1d
from hpbench.exceptions import ParameterError
from hpbench.utils import as_float_array

STEP_SECONDS = 900


class DisturbanceSeries(object):
    """
    Exogenous inputs on a regular time grid.

    Indexing wraps around the end of the series, so a one-year series can
    drive episodes that start late in December.
    """
    def __init__(self, start: Union[str, Timestamp],
                 t_amb: FloatArray1d,
                 q_gain: Optional[FloatArray1d] = None,
                 solar: Optional[FloatArray1d] = None,
                 step: int = STEP_SECONDS):
        """
        Create a new DisturbanceSeries.

        :param start: Timestamp of the first sample, taken as UTC.
        :param t_amb: Ambient temperatures, °C.
        :param q_gain: Total heat gains, W. Zeros if omitted.
        :param solar: Global irradiance, W/m². Zeros if omitted.
        :param step: Interval between samples, s.
        """
        start = Timestamp(start)
        if start.tzinfo is None:
            start = start.tz_localize('UTC')
        self._start: Timestamp = start.tz_convert('UTC')
        if not step > 0:
            raise ParameterError('step must be positive')
        self._step: int = int(step)
        self._t_amb: ndarray = as_float_array(t_amb)
        n = len(self._t_amb)
        if n < 1:
            raise ParameterError('a disturbance series needs at least 1 sample')
        self._q_gain: ndarray = as_float_array(
            zeros(n) if q_gain is None else q_gain
        )
        self._solar: ndarray = as_float_array(
            zeros(n) if solar is None else solar
        )
        if len(self._q_gain) != n or len(self._solar) != n:
            raise ParameterError('t_amb, q_gain and solar lengths differ')
        if (self._q_gain < 0).any():
            raise ParameterError('q_gain must be non-negative')

    @property
    def start(self) -> Timestamp:
        return self._start

    @property
    def step(self) -> int:
        return self._step

    @property
    def t_amb(self) -> ndarray:
        return self._t_amb

    @property
    def q_gain(self) -> ndarray:
        return self._q_gain

    @property
    def solar(self) -> ndarray:
        return self._solar

    def __len__(self) -> int:
        return len(self._t_amb)

    @property
    def index(self) -> DatetimeIndex:
        """
        Timestamps of the samples.
        """
        return date_range(
            self._start, periods=len(self), freq=f'{self._step}s'
        )

    def sample(self, k: int) -> DisturbanceSample:
        """
        Return the disturbance of interval k, wrapping around the end.
        """
        i = k % len(self)
        return DisturbanceSample(
            t_amb=float(self._t_amb[i]), q_gain=float(self._q_gain[i])
        )

    def window(self, k: int, n: int) -> 'DisturbanceSeries':
        """
        Return the n intervals starting at k as a new series, wrapping
        around the end.
        """
        if n < 1:
            raise ParameterError('window length must be at least 1')
        ix = (k + arange(n)) % len(self)
        return DisturbanceSeries(
            start=self._start + (k % len(self)) * self.timedelta,
            t_amb=self._t_amb[ix], q_gain=self._q_gain[ix],
            solar=self._solar[ix], step=self._step
        )

    @property
    def timedelta(self) -> Timedelta:
        return Timedelta(seconds=self._step)

    def with_gains(self, q_gain: FloatArray1d) -> 'DisturbanceSeries':
        """
        Return a copy of the series with the gains replaced.
        """
        return DisturbanceSeries(
            start=self._start, t_amb=self._t_amb, q_gain=q_gain,
            solar=self._solar, step=self._step
        )

    def solar_series(self) -> Series:
        """
        Irradiance in W/m² indexed by timestamp.
        """
        return Series(self._solar, index=self.index, name='solar_wm2')

    def to_frame(self) -> DataFrame:

        return DataFrame({
            't_amb': self._t_amb,
            'q_gain': self._q_gain,
            'solar': self._solar
        }, index=self.index)

    def __str__(self):

        return (
            f'DisturbanceSeries(start={self._start.isoformat()}, '
            f'step={self._step}s, n={len(self)})'
        )

    def __repr__(self):

        return str(self)
