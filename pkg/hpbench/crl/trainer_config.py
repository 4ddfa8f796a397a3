from dataclasses import dataclass
from typing import Tuple

from hpbench.exceptions import ParameterError
from hpbench.utils import all_positive, num_format

ALGORITHMS = ('sac', 'sac_lag', 'csac_lb')


@dataclass(frozen=True)
class TrainerConfig(object):
    """
    Hyperparameters of the soft actor-critic trainers.

    :param algorithm: 'sac' (reward shaped by penalty), 'sac_lag'
                      (learned Lagrange multiplier) or 'csac_lb' (shifted
                      log barrier on the cost critic).
    :param penalty: Reward penalty per underheated step, 'sac' only.
    :param batch_size: Replay samples per update.
    :param gamma: Discount factor.
    :param lr: Learning rate of every optimizer.
    :param tau: Polyak rate of the target critics.
    :param warmup_steps: Environment steps with uniform random actions.
    :param update_every: Environment steps per gradient update.
    :param buffer_size: Replay capacity.
    :param hidden: Hidden layer widths of every network.
    :param mu: Barrier sharpness, 'csac_lb'.
    :param cost_limit_d: Budget on the discounted cost.
    :param target_entropy: Entropy the temperature α is tuned towards.
    :param alpha_init: Initial entropy temperature.
    :param auto_alpha: Tune α; keep it at alpha_init if False.
    :param beta_init: Initial Lagrange multiplier, 'sac_lag'.
    :param eval_every: Episodes between evaluations.
    :param seed: Seed of network initialization, noise and sampling.
    """
    algorithm: str = 'csac_lb'
    penalty: float = 0.0
    batch_size: int = 256
    gamma: float = 0.99
    lr: float = 1e-3
    tau: float = 0.005
    warmup_steps: int = 100
    update_every: int = 1
    buffer_size: int = 3_000_000
    hidden: Tuple[int, ...] = (256, 256)
    mu: float = 10.0
    cost_limit_d: float = 10.0
    target_entropy: float = -1.0
    alpha_init: float = 1.0
    auto_alpha: bool = True
    beta_init: float = 1.0
    eval_every: int = 10
    seed: int = 0

    def __post_init__(self):

        object.__setattr__(self, 'hidden', tuple(int(h) for h in self.hidden))
        if self.algorithm not in ALGORITHMS:
            raise ParameterError(
                f'algorithm must be one of {ALGORITHMS}, got {self.algorithm}'
            )
        if not all_positive(self.lr, self.batch_size, self.buffer_size,
                            self.update_every, self.eval_every,
                            self.alpha_init, self.beta_init):
            raise ParameterError(
                'lr, batch_size, buffer_size, update_every, eval_every, '
                'alpha_init and beta_init must be positive'
            )
        if not 0 < self.tau <= 1:
            raise ParameterError('tau must lie in (0, 1]')
        if not 0 <= self.gamma <= 1:
            raise ParameterError('gamma must lie in [0, 1]')
        if self.warmup_steps < 0 or self.penalty < 0:
            raise ParameterError('warmup_steps and penalty must be ≥ 0')
        if any(h < 1 for h in self.hidden):
            raise ParameterError('hidden layer widths must be positive')
        if self.algorithm == 'csac_lb' and not self.mu > 1:
            raise ParameterError('csac_lb needs mu > 1')

    @property
    def label(self) -> str:
        """
        Display name, e.g. 'SAC-30' for penalty SAC with penalty 30.
        """
        if self.algorithm == 'sac':
            return f'SAC-{num_format(self.penalty, 2)}'
        return {'sac_lag': 'SAC-Lag', 'csac_lb': 'CSAC-LB'}[self.algorithm]
