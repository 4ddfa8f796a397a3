from hpbench.environment.building_env import BuildingEnv
from hpbench.environment.env_config import EnvConfig
from hpbench.environment.episode_log import (
    LOG_COLUMNS, episode_frame, log_episode, read_episode_log
)
from hpbench.environment.penalty_reward_env import PenaltyRewardEnv
from hpbench.environment.transition import Transition
from hpbench.environment.vector_env import (
    VectorEnv, batch_step, spawn_generators
)
