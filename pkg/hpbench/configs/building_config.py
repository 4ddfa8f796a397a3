import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Mapping, Optional, Union

from numpy.random import Generator

from hpbench.building.building_params import BuildingParams, derive_params
from hpbench.configs.parsing import (
    check_keys, check_mapping, dataclass_from_dict, field_path
)
from hpbench.disturbances.disturbance_series import DisturbanceSeries
from hpbench.disturbances.gains import OccupancySchedule, gains_profile
from hpbench.environment.building_env import BuildingEnv
from hpbench.environment.env_config import EnvConfig
from hpbench.environment.penalty_reward_env import PenaltyRewardEnv
from hpbench.exceptions import ConfigError
from hpbench.heat_pump.heat_pump_model import HeatPumpModel

logger = logging.getLogger(__name__)

BUILTIN_DIR = Path(__file__).parent.parent / 'data' / 'buildings'
PARAM_KEYS = (
    'h_ve_tr', 'c_bldg_specific', 'a_floor', 'h_room', 'water_volume',
    'h_rad_con', 'mdot_hp', 'cp_water', 'wall_split', 'h_wall',
    'gain_wall_fraction', 'variant'
)
OTHER_KEYS = ('name', 'window_area', 'g_value', 'occupancy', 'heat_pump')


@dataclass(frozen=True)
class BuildingConfig(object):
    """
    A building ready to simulate: RC parameters, heat pump and the inputs
    its heat gains are synthesised from.

    :param name: Display name, e.g. 'building1'.
    :param params: Derived RC parameters.
    :param heat_pump: Heat-pump efficiency model.
    :param window_area: Glazed area admitting solar gains, m².
    :param g_value: Solar energy transmittance of the glazing.
    :param occupancy: Internal gains schedule.
    """
    name: str
    params: BuildingParams
    heat_pump: HeatPumpModel = field(default_factory=HeatPumpModel)
    window_area: float = 0.0
    g_value: float = 0.0
    occupancy: OccupancySchedule = field(default_factory=OccupancySchedule)

    @staticmethod
    def from_dict(raw: Mapping[str, Any],
                  source: Optional[str] = None) -> 'BuildingConfig':
        """
        Build a config from a JSON object, raising a ConfigError that lists
        every invalid field.
        """
        messages = []
        config = parse_building(raw, '', messages)
        if messages:
            raise ConfigError(messages, source)
        return config

    @staticmethod
    def from_json(path: Union[str, Path]) -> 'BuildingConfig':

        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f'building config not found: {path}')
        try:
            with open(path) as f:
                raw = json.load(f)
        except json.JSONDecodeError as error:
            raise ConfigError([f'not valid JSON: {error}'], str(path))
        if isinstance(raw, dict):
            raw.setdefault('name', path.stem)
        return BuildingConfig.from_dict(raw, str(path))

    @staticmethod
    def builtin(name: str) -> 'BuildingConfig':
        """
        Load one of the shipped building configs, 'building1' or
        'building2'.
        """
        path = BUILTIN_DIR / f'{name}.json'
        if not path.is_file():
            known = sorted(p.stem for p in BUILTIN_DIR.glob('*.json'))
            raise FileNotFoundError(
                f'no builtin building {name!r}, choose from {known}'
            )
        return BuildingConfig.from_json(path)

    @staticmethod
    def resolve(name_or_path: Union[str, Path],
                base_dir: Optional[Path] = None) -> 'BuildingConfig':
        """
        Load a builtin building by name or a building config file by path.

        :param name_or_path: Builtin name, or path to a JSON file.
        :param base_dir: Directory relative paths are resolved against.
        """
        text = str(name_or_path)
        if not text.endswith('.json') and (BUILTIN_DIR / f'{text}.json').is_file():
            return BuildingConfig.builtin(text)
        path = Path(text)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return BuildingConfig.from_json(path)

    def disturbances(self, weather: DisturbanceSeries) -> DisturbanceSeries:
        """
        Return the weather with this building's occupancy and solar gains
        attached.
        """
        q_gain = gains_profile(
            self.params.a_floor, weather.solar_series(), self.occupancy,
            self.window_area, self.g_value
        )
        return weather.with_gains(q_gain.to_numpy())

    def make_env(self, weather: DisturbanceSeries,
                 config: Optional[EnvConfig] = None,
                 rng: Optional[Generator] = None,
                 penalty: Optional[float] = None) -> BuildingEnv:
        """
        Create an environment of this building driven by weather.

        :param weather: Ambient temperature and irradiance.
        :param config: Environment settings.
        :param rng: Random stream of the environment.
        :param penalty: Reward penalty per underheated step. A plain
                        BuildingEnv if None.
        """
        args = (self.params, self.heat_pump, self.disturbances(weather),
                config, rng)
        if penalty is None:
            return BuildingEnv(*args)
        return PenaltyRewardEnv(*args, penalty=penalty)

    def __str__(self):

        return f'BuildingConfig({self.name}, {self.params})'


def parse_building(raw: Any, path: str,
                   messages: List[str]) -> Optional[BuildingConfig]:
    """
    Parse a building JSON object, appending problems to messages.
    """
    if not check_mapping(raw, path, messages):
        return None
    check_keys(raw, PARAM_KEYS + OTHER_KEYS, path, messages)
    n_before = len(messages)
    params = None
    try:
        params = derive_params({
            key: value for key, value in raw.items() if key in PARAM_KEYS
        })
    except (TypeError, ValueError) as error:
        messages.append(f'{path or "building"}: {error}')
    heat_pump = dataclass_from_dict(
        HeatPumpModel, raw.get('heat_pump'), field_path(path, 'heat_pump'),
        messages
    )
    occupancy = dataclass_from_dict(
        OccupancySchedule, raw.get('occupancy'),
        field_path(path, 'occupancy'), messages
    )
    name = raw.get('name', 'building')
    if not isinstance(name, str):
        messages.append(f'{field_path(path, "name")}: expected a string')
    for key in ('window_area', 'g_value'):
        value = raw.get(key, 0.0)
        if not isinstance(value, (int, float)) or value < 0:
            messages.append(
                f'{field_path(path, key)}: expected a number ≥ 0, got {value!r}'
            )
    if len(messages) > n_before:
        return None
    return BuildingConfig(
        name=name, params=params, heat_pump=heat_pump,
        window_area=float(raw.get('window_area', 0.0)),
        g_value=float(raw.get('g_value', 0.0)),
        occupancy=occupancy
    )
