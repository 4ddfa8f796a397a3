import logging
from pathlib import Path
from typing import Union

from numpy import arange, clip, maximum, pi, sin, sqrt, cos
from numpy.random import default_rng
from pandas import read_csv, to_datetime, to_numeric, Timestamp
from scipy.signal import lfilter

from hpbench.disturbances.disturbance_series import (
    DisturbanceSeries, STEP_SECONDS
)
from hpbench.exceptions import ParameterError, WeatherFormatError

logger = logging.getLogger(__name__)

WEATHER_COLUMNS = ['timestamp', 't_amb_c', 'solar_wm2']


def load_weather_csv(path: Union[str, Path],
                     step: int = STEP_SECONDS) -> DisturbanceSeries:
    """
    Load a weather file into a DisturbanceSeries with zero gains.

    The file must have the header `timestamp,t_amb_c,solar_wm2` and rows in
    consecutive `step` second increments. Line numbers in error messages
    count the header as line 1.

    :param path: Path to the CSV file.
    :param step: Expected interval between rows, s.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f'weather file {path} does not exist')
    data = read_csv(path, dtype=str, keep_default_na=False)
    if list(data.columns) != WEATHER_COLUMNS:
        raise WeatherFormatError(
            f'{path}: header must be {",".join(WEATHER_COLUMNS)}, '
            f'got {",".join(data.columns)}'
        )
    if len(data) == 0:
        raise WeatherFormatError(f'{path}: no data rows')
    timestamps = to_datetime(data['timestamp'], utc=True, errors='coerce')
    t_amb = to_numeric(data['t_amb_c'], errors='coerce')
    solar = to_numeric(data['solar_wm2'], errors='coerce')
    bad = timestamps.isnull() | t_amb.isnull() | solar.isnull() | (solar < 0)
    if bad.any():
        lines = [int(ix) + 2 for ix in data.index[bad]]
        raise WeatherFormatError(
            f'{path}: malformed rows on lines {lines}'
        )
    deltas = timestamps.diff().dt.total_seconds().iloc[1:]
    for ix, delta in deltas.items():
        if delta <= 0:
            raise WeatherFormatError(
                f'{path}: timestamps not increasing at line {ix + 2}'
            )
        if delta != step:
            raise WeatherFormatError(
                f'{path}: gap of {delta:.0f} s between lines '
                f'{ix + 1} and {ix + 2}'
            )
    logger.info('loaded %d weather rows from %s', len(data), path)
    return DisturbanceSeries(
        start=timestamps.iloc[0], t_amb=t_amb.values,
        solar=solar.values, step=step
    )


def synth_weather(seed: int, days: int,
                  annual_mean: float = 8.0,
                  annual_amp: float = 10.0,
                  daily_amp: float = 4.0,
                  phi: float = 0.95,
                  sigma: float = 0.5,
                  solar_peak: float = 800.0,
                  start: Union[str, Timestamp] = '2023-01-01',
                  step: int = STEP_SECONDS) -> DisturbanceSeries:
    """
    Generate a synthetic ambient temperature and irradiance series.

    Temperature is an annual and a daily sinusoid plus stationary AR(1)
    noise. Irradiance is a daylight half-sine between 06:00 and 18:00
    scaled by season.

    :param seed: Seed of the noise generator.
    :param days: Number of days, ≥ 1.
    :param annual_mean: Mean temperature, °C.
    :param annual_amp: Annual amplitude, K; the minimum falls at the start.
    :param daily_amp: Daily amplitude, K; the minimum falls at midnight.
    :param phi: AR(1) coefficient.
    :param sigma: Stationary standard deviation of the noise, K.
    :param solar_peak: Midsummer noon irradiance, W/m².
    :param start: Timestamp of the first sample.
    :param step: Interval between samples, s.
    """
    if days < 1:
        raise ParameterError('days must be at least 1')
    if not 0 <= phi < 1 or sigma < 0:
        raise ParameterError('need 0 ≤ phi < 1 and sigma ≥ 0')
    n = int(days * 86400 // step)
    seconds = arange(n) * float(step)
    day = seconds / 86400
    hour = (seconds / 3600) % 24
    t_amb = (
        annual_mean
        + annual_amp * sin(2 * pi * day / 365 - pi / 2)
        + daily_amp * sin(2 * pi * hour / 24 - pi / 2)
    )
    if sigma > 0:
        rng = default_rng(seed)
        shocks = rng.standard_normal(n)
        shocks[0] *= sigma
        shocks[1:] *= sigma * sqrt(1 - phi ** 2)
        t_amb = t_amb + lfilter([1.0], [1.0, -phi], shocks)
    season = 0.55 - 0.45 * cos(2 * pi * day / 365)
    solar = solar_peak * maximum(0, sin(2 * pi * (hour - 6) / 24)) * season
    return DisturbanceSeries(
        start=start, t_amb=t_amb, solar=clip(solar, 0, None), step=step
    )
