from hpbench.configs.building_config import BuildingConfig, parse_building
from hpbench.configs.experiment_config import (
    CONTROLLERS, ExperimentConfig, LEARNED_CONTROLLERS, RunSpec, Scenario,
    WeatherConfig
)
