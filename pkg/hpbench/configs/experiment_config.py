import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Union

from hpbench.configs.building_config import BuildingConfig
from hpbench.configs.parsing import (
    check_keys, check_mapping, dataclass_from_dict, field_path
)
from hpbench.controllers.heating_curve import HeatingCurve
from hpbench.controllers.mpc import MpcConfig
from hpbench.crl.trainer_config import TrainerConfig
from hpbench.disturbances.disturbance_series import DisturbanceSeries
from hpbench.disturbances.weather import load_weather_csv, synth_weather
from hpbench.environment.env_config import EnvConfig
from hpbench.exceptions import ConfigError

logger = logging.getLogger(__name__)

BUILTIN_DIR = Path(__file__).parent.parent / 'data' / 'experiments'
RULE_CONTROLLERS = ('heating_curve', 'mpc')
LEARNED_CONTROLLERS = {
    'sac_2': dict(algorithm='sac', penalty=2.0),
    'sac_30': dict(algorithm='sac', penalty=30.0),
    'sac_lag': dict(algorithm='sac_lag', penalty=0.0),
    'csac_lb': dict(algorithm='csac_lb', penalty=0.0),
}
CONTROLLERS = RULE_CONTROLLERS + tuple(LEARNED_CONTROLLERS.keys())
TOP_LEVEL_KEYS = (
    'name', 'buildings', 'weather', 'environment', 'heating_curve', 'mpc',
    'training', 'scenarios', 'seeds', 'workers'
)


@dataclass(frozen=True)
class WeatherConfig(object):
    """
    Where the weather of an experiment comes from: a CSV file if csv is
    set, else synth_weather(seed, days).
    """
    seed: int = 0
    days: int = 365
    csv: Optional[Path] = None

    def load(self) -> DisturbanceSeries:

        if self.csv is not None:
            return load_weather_csv(self.csv)
        return synth_weather(self.seed, self.days)


@dataclass(frozen=True)
class Scenario(object):
    """
    One cell group of the scenario matrix: a building under each noise
    level, controlled by each controller.
    """
    building: str
    noise: Tuple[float, ...] = (0.0,)
    controllers: Tuple[str, ...] = ('heating_curve',)


class RunSpec(NamedTuple):

    building: str
    noise: float
    controller: str
    seed: int

    @property
    def relative_dir(self) -> Path:
        """
        Location of the run below the experiment's output directory.
        """
        return (
            Path('runs') / self.building / f'noise_{self.noise:g}' /
            self.controller / f'seed_{self.seed}'
        )


@dataclass(frozen=True)
class ExperimentConfig(object):
    """
    A scenario matrix (building × noise × controller × seed) and the
    settings every run in it shares.
    """
    name: str
    buildings: Dict[str, BuildingConfig]
    scenarios: Tuple[Scenario, ...]
    weather: WeatherConfig = field(default_factory=WeatherConfig)
    environment: EnvConfig = field(default_factory=EnvConfig)
    heating_curve: HeatingCurve = field(default_factory=HeatingCurve)
    mpc: MpcConfig = field(default_factory=MpcConfig)
    training: TrainerConfig = field(default_factory=TrainerConfig)
    episodes: int = 500
    seeds: Tuple[int, ...] = (0,)
    workers: int = 1

    @staticmethod
    def from_dict(raw: Any, base_dir: Optional[Path] = None,
                  source: Optional[str] = None) -> 'ExperimentConfig':
        """
        Parse an experiment JSON object.

        Every problem is collected and reported in one ConfigError whose
        messages carry the field path, e.g.
        "scenarios[0].controllers[1]: unknown controller 'foo'".

        :param raw: Parsed JSON document.
        :param base_dir: Directory relative building and weather paths are
                         resolved against.
        :param source: Name of the document for error messages.
        """
        messages = []
        config = _parse_experiment(raw, base_dir, messages)
        if messages:
            raise ConfigError(messages, source)
        return config

    @staticmethod
    def from_json(path: Union[str, Path]) -> 'ExperimentConfig':

        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f'experiment config not found: {path}')
        try:
            with open(path) as f:
                raw = json.load(f)
        except json.JSONDecodeError as error:
            raise ConfigError([f'not valid JSON: {error}'], str(path))
        return ExperimentConfig.from_dict(raw, path.parent, str(path))

    @staticmethod
    def builtin(name: str) -> 'ExperimentConfig':

        path = BUILTIN_DIR / f'{name}.json'
        if not path.is_file():
            known = sorted(p.stem for p in BUILTIN_DIR.glob('*.json'))
            raise FileNotFoundError(
                f'no builtin experiment {name!r}, choose from {known}'
            )
        return ExperimentConfig.from_json(path)

    def runs(self) -> List[RunSpec]:
        """
        Expand the scenario matrix in declaration order.
        """
        return [
            RunSpec(scenario.building, noise, controller, seed)
            for scenario in self.scenarios
            for noise in scenario.noise
            for controller in scenario.controllers
            for seed in self.seeds
        ]

    def env_config(self, noise: float, seed: int) -> EnvConfig:

        return replace(self.environment, noise_sigma=noise, rng_seed=seed)

    def trainer_config(self, controller: str, seed: int) -> TrainerConfig:
        """
        Return the trainer settings of a learned controller.
        """
        if controller not in LEARNED_CONTROLLERS:
            raise ValueError(f'{controller!r} is not a learned controller')
        return replace(
            self.training, seed=seed, **LEARNED_CONTROLLERS[controller]
        )


def _parse_weather(raw: Any, base_dir: Optional[Path],
                   messages: List[str]) -> Optional[WeatherConfig]:

    if raw is None:
        return WeatherConfig()
    if not check_mapping(raw, 'weather', messages):
        return None
    check_keys(raw, ('synthetic', 'csv'), 'weather', messages)
    if ('synthetic' in raw) == ('csv' in raw):
        messages.append('weather: give exactly one of "synthetic" or "csv"')
        return None
    if 'csv' in raw:
        if not isinstance(raw['csv'], str):
            messages.append('weather.csv: expected a path string')
            return None
        path = Path(raw['csv'])
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        if not path.is_file():
            messages.append(f'weather.csv: file not found: {path}')
            return None
        return WeatherConfig(csv=path)
    synthetic = raw['synthetic']
    if not check_mapping(synthetic, 'weather.synthetic', messages):
        return None
    check_keys(synthetic, ('seed', 'days'), 'weather.synthetic', messages)
    seed = synthetic.get('seed', 0)
    days = synthetic.get('days', 365)
    if not isinstance(seed, int) or seed < 0:
        messages.append(
            f'weather.synthetic.seed: expected an integer ≥ 0, got {seed!r}'
        )
        return None
    if not isinstance(days, int) or days < 1:
        messages.append(
            f'weather.synthetic.days: expected an integer ≥ 1, got {days!r}'
        )
        return None
    return WeatherConfig(seed=seed, days=days)


def _parse_buildings(raw: Any, base_dir: Optional[Path],
                     messages: List[str]) -> Dict[str, BuildingConfig]:

    buildings = {}
    if not check_mapping(raw, 'buildings', messages):
        return buildings
    if len(raw) == 0:
        messages.append('buildings: at least one building is required')
    for name, ref in raw.items():
        path = field_path('buildings', name)
        if not isinstance(ref, str):
            messages.append(f'{path}: expected a builtin name or a path')
            continue
        try:
            buildings[name] = BuildingConfig.resolve(ref, base_dir)
        except ConfigError as error:
            messages.extend(f'{path}: {message}' for message in error.messages)
        except FileNotFoundError as error:
            messages.append(f'{path}: {error}')
    return buildings


def _parse_number_list(raw: Any, path: str, messages: List[str],
                       integer: bool, minimum: float) -> Tuple:

    if not isinstance(raw, list) or len(raw) == 0:
        messages.append(f'{path}: expected a non-empty list')
        return ()
    kind = int if integer else (int, float)
    values = []
    for i, value in enumerate(raw):
        if isinstance(value, bool) or not isinstance(value, kind) or \
                value < minimum:
            messages.append(
                f'{field_path(path, i)}: expected a number ≥ {minimum}, '
                f'got {value!r}'
            )
        else:
            values.append(value)
    return tuple(values)


def _parse_scenarios(raw: Any,
                     building_names: List[str],
                     messages: List[str]) -> Tuple[Scenario, ...]:

    if not isinstance(raw, list) or len(raw) == 0:
        messages.append('scenarios: expected a non-empty list')
        return ()
    scenarios = []
    for i, item in enumerate(raw):
        path = field_path('scenarios', i)
        if not check_mapping(item, path, messages):
            continue
        check_keys(item, ('building', 'noise', 'controllers'), path, messages)
        building = item.get('building')
        if building not in building_names:
            messages.append(
                f'{field_path(path, "building")}: unknown building '
                f'{building!r}, declared are {building_names}'
            )
        noise = _parse_number_list(
            item.get('noise', [0.0]), field_path(path, 'noise'), messages,
            integer=False, minimum=0
        )
        controllers = item.get('controllers')
        if not isinstance(controllers, list) or len(controllers) == 0:
            messages.append(
                f'{field_path(path, "controllers")}: expected a non-empty list'
            )
            continue
        for j, controller in enumerate(controllers):
            if controller not in CONTROLLERS:
                messages.append(
                    f'{field_path(field_path(path, "controllers"), j)}: '
                    f'unknown controller {controller!r}'
                )
        scenarios.append(Scenario(
            building=building,
            noise=tuple(float(n) for n in noise),
            controllers=tuple(controllers)
        ))
    return tuple(scenarios)


def _parse_experiment(raw: Any, base_dir: Optional[Path],
                      messages: List[str]) -> Optional[ExperimentConfig]:

    if not check_mapping(raw, '', messages):
        return None
    check_keys(raw, TOP_LEVEL_KEYS, '', messages)
    name = raw.get('name', 'experiment')
    if not isinstance(name, str) or not name:
        messages.append('name: expected a non-empty string')
    raw_buildings = raw.get('buildings')
    buildings = _parse_buildings(raw_buildings, base_dir, messages)
    building_names = (
        list(raw_buildings.keys()) if isinstance(raw_buildings, dict) else []
    )
    weather = _parse_weather(raw.get('weather'), base_dir, messages)
    environment = dataclass_from_dict(
        EnvConfig, raw.get('environment'), 'environment', messages
    )
    heating_curve = dataclass_from_dict(
        HeatingCurve, raw.get('heating_curve'), 'heating_curve', messages
    )
    mpc = dataclass_from_dict(MpcConfig, raw.get('mpc'), 'mpc', messages)
    raw_training = raw.get('training') or {}
    training = dataclass_from_dict(
        TrainerConfig, raw_training, 'training', messages,
        extra=('episodes',)
    )
    episodes = 500
    if isinstance(raw_training, dict):
        episodes = raw_training.get('episodes', 500)
        if isinstance(episodes, bool) or not isinstance(episodes, int) or \
                episodes < 1:
            messages.append(
                f'training.episodes: expected an integer ≥ 1, got {episodes!r}'
            )
    scenarios = _parse_scenarios(
        raw.get('scenarios'), building_names, messages
    )
    seeds = _parse_number_list(
        raw.get('seeds', [0]), 'seeds', messages, integer=True, minimum=0
    )
    workers = raw.get('workers', 1)
    if isinstance(workers, bool) or not isinstance(workers, int) or \
            workers < 1:
        messages.append(f'workers: expected an integer ≥ 1, got {workers!r}')
    if messages:
        return None
    return ExperimentConfig(
        name=name, buildings=buildings, scenarios=scenarios,
        weather=weather, environment=environment,
        heating_curve=heating_curve, mpc=mpc, training=training,
        episodes=episodes, seeds=seeds, workers=workers
    )
