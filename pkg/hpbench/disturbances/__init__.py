from hpbench.disturbances.disturbance_series import DisturbanceSeries
from hpbench.disturbances.gains import OccupancySchedule, gains_profile
from hpbench.disturbances.weather import load_weather_csv, synth_weather
