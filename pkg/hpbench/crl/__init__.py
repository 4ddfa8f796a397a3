from hpbench.crl.adam import Adam
from hpbench.crl.checkpoint import load_checkpoint, save_checkpoint
from hpbench.crl.mlp import Mlp
from hpbench.crl.observation import normalize_observation
from hpbench.crl.replay_buffer import Batch, ReplayBuffer
from hpbench.crl.sac_agent import SacAgent
from hpbench.crl.squashed_gaussian_policy import (
    SquashedGaussianPolicy, policy_sample
)
from hpbench.crl.trainer_config import ALGORITHMS, TrainerConfig
from hpbench.crl.training import (
    METRIC_COLUMNS, PolicyController, TrainingResult, evaluate, train
)
