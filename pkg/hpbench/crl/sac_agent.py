import logging
from math import exp, isfinite, log
from typing import Dict, NamedTuple, Optional, Tuple

from numpy import (
    array, concatenate, isfinite as np_isfinite, maximum, minimum, ndarray,
    ones, where
)
from numpy.random import Generator, default_rng

from hpbench.barrier.actor_terms import (
    ActorTerm, beta_loss, csac_lb_actor_term, inverse_softplus,
    sac_lag_actor_term, softplus
)
from hpbench.crl.adam import Adam
from hpbench.crl.mlp import Mlp, MlpCache
from hpbench.crl.observation import normalize_observation
from hpbench.crl.replay_buffer import Batch
from hpbench.crl.squashed_gaussian_policy import (
    PolicySample, SquashedGaussianPolicy
)
from hpbench.crl.trainer_config import TrainerConfig
from hpbench.exceptions import TrainingDivergenceError

logger = logging.getLogger(__name__)

CRITIC_NAMES = ('q_r1', 'q_r2', 'q_c1', 'q_c2')


class ActorLoss(NamedTuple):

    loss: float
    term: ActorTerm
    qc: ndarray
    logp: ndarray
    sample: PolicySample


class SacAgent(object):
    """
    Soft actor-critic with twin reward critics and twin cost critics.

    The actor loss depends on the algorithm of the config:
    'sac' minimizes α·logπ − Q_r, 'sac_lag' adds β·Q_c with a learned
    multiplier β = softplus(β_raw), and 'csac_lb' adds the shifted log
    barrier of Q_c, which is zero while Q_c ≤ d. Q_r is the min and Q_c the
    max over the twin critics.
    """
    def __init__(self, config: TrainerConfig, obs_dim: int = 5,
                 rng: Optional[Generator] = None):
        """
        Create a new SacAgent.

        :param config: Trainer hyperparameters.
        :param obs_dim: Length of a normalized observation.
        :param rng: Generator for initialization and policy noise; seeded
                    with config.seed if omitted.
        """
        self._config: TrainerConfig = config
        self._obs_dim: int = obs_dim
        self._rng: Generator = (
            rng if rng is not None else default_rng(config.seed)
        )
        hidden = list(config.hidden)
        self._actor: Mlp = Mlp([obs_dim] + hidden + [2], self._rng)
        self._policy = SquashedGaussianPolicy(self._actor)
        self._critics: Dict[str, Mlp] = {
            name: Mlp([obs_dim + 1] + hidden + [1], self._rng)
            for name in CRITIC_NAMES
        }
        self._targets: Dict[str, Mlp] = {
            name: critic.copy() for name, critic in self._critics.items()
        }
        self._log_alpha: ndarray = array([log(config.alpha_init)])
        self._beta_raw: ndarray = array([inverse_softplus(config.beta_init)])
        self._optimizers: Dict[str, Adam] = {
            'actor': Adam(self._actor.params, lr=config.lr),
            'log_alpha': Adam([self._log_alpha], lr=config.lr),
            'beta_raw': Adam([self._beta_raw], lr=config.lr),
        }
        for name, critic in self._critics.items():
            self._optimizers[name] = Adam(critic.params, lr=config.lr)
        self._last_losses: Dict[str, float] = {}

    @property
    def config(self) -> TrainerConfig:
        return self._config

    @property
    def obs_dim(self) -> int:
        return self._obs_dim

    @property
    def rng(self) -> Generator:
        return self._rng

    @property
    def actor(self) -> Mlp:
        return self._actor

    @property
    def policy(self) -> SquashedGaussianPolicy:
        return self._policy

    @property
    def critics(self) -> Dict[str, Mlp]:
        return self._critics

    @property
    def targets(self) -> Dict[str, Mlp]:
        return self._targets

    @property
    def optimizers(self) -> Dict[str, Adam]:
        return self._optimizers

    @property
    def log_alpha(self) -> ndarray:
        return self._log_alpha

    @property
    def beta_raw(self) -> ndarray:
        return self._beta_raw

    @property
    def alpha(self) -> float:
        return exp(self._log_alpha[0])

    @property
    def beta(self) -> float:
        return float(softplus(self._beta_raw[0]))

    @property
    def last_losses(self) -> Dict[str, float]:
        return self._last_losses

    def networks(self) -> Dict[str, Mlp]:
        """
        Every network by name, targets suffixed with '_target'.
        """
        nets = {'actor': self._actor}
        nets.update(self._critics)
        nets.update({
            f'{name}_target': net for name, net in self._targets.items()
        })
        return nets

    @staticmethod
    def _q(net: Mlp, obs: ndarray,
           action: ndarray) -> Tuple[ndarray, MlpCache]:

        out, cache = net.forward(concatenate([obs, action[:, None]], axis=1))
        return out[:, 0], cache

    def act(self, obs: ndarray, deterministic: bool = False) -> float:
        """
        Return a normalized action for one raw observation.
        """
        x = normalize_observation(obs)[None, :]
        if deterministic:
            return float(self._policy.deterministic(x)[0])
        return float(self._policy.sample(x, self._rng).action[0])

    def critic_targets(self, batch: Batch,
                       eps: Optional[ndarray] = None
                       ) -> Tuple[ndarray, ndarray]:
        """
        Return the bootstrapped reward and cost targets of a batch.

        Reward: r + γ·(min of the target reward critics − α·logπ).
        Cost: c + γ·(max of the target cost critics), without entropy.
        """
        gamma = self._config.gamma
        sample = self._policy.sample(batch.next_obs, self._rng, eps)
        x = concatenate([batch.next_obs, sample.action[:, None]], axis=1)
        q = {
            name: target.predict(x)[:, 0]
            for name, target in self._targets.items()
        }
        live = 1.0 - batch.terminal
        y_r = batch.reward + gamma * live * (
            minimum(q['q_r1'], q['q_r2']) - self.alpha * sample.logp
        )
        y_c = batch.cost + gamma * live * maximum(q['q_c1'], q['q_c2'])
        return y_r, y_c

    def critic_update(self, batch: Batch,
                      eps: Optional[ndarray] = None) -> Dict[str, float]:
        """
        Take one gradient step on every critic towards its target and move
        the target critics by Polyak averaging.

        :param batch: Replay samples with normalized observations.
        :param eps: Policy noise for the next actions, drawn if omitted.
        """
        if len(batch.reward) == 0:
            raise ValueError('critic_update needs a non-empty batch')
        y_r, y_c = self.critic_targets(batch, eps)
        n = len(batch.reward)
        losses = {}
        for name, critic in self._critics.items():
            y = y_r if name.startswith('q_r') else y_c
            critic.zero_grad()
            q, cache = self._q(critic, batch.obs, batch.action)
            error = q - y
            losses[name] = float((error * error).mean())
            critic.backward(cache, (2 * error / n)[:, None])
            self._optimizers[name].step(critic.grads)
        if not all(isfinite(loss) for loss in losses.values()):
            raise TrainingDivergenceError(f'non-finite critic loss {losses}')
        for name, target in self._targets.items():
            target.polyak_update(self._critics[name], self._config.tau)
        return losses

    def _critic_values(self, obs: ndarray, action: ndarray
                       ) -> Tuple[ndarray, ndarray, ndarray, ndarray]:
        """
        Return min reward critic, max cost critic and their action gradients.
        """
        values = {}
        slopes = {}
        for name, critic in self._critics.items():
            q, cache = self._q(critic, obs, action)
            d_input = critic.backward(
                cache, ones((len(q), 1)), accumulate=False
            )
            values[name] = q
            slopes[name] = d_input[:, -1]
        qr = minimum(values['q_r1'], values['q_r2'])
        dqr_da = where(values['q_r1'] <= values['q_r2'],
                       slopes['q_r1'], slopes['q_r2'])
        qc = maximum(values['q_c1'], values['q_c2'])
        dqc_da = where(values['q_c1'] >= values['q_c2'],
                       slopes['q_c1'], slopes['q_c2'])
        return qr, dqr_da, qc, dqc_da

    def actor_loss(self, obs: ndarray,
                   eps: Optional[ndarray] = None) -> ActorLoss:
        """
        Evaluate the actor loss on a batch and leave its gradient in the
        actor's gradient buffers.

        :param obs: Normalized observations.
        :param eps: Policy noise, drawn if omitted.
        """
        config = self._config
        sample = self._policy.sample(obs, self._rng, eps)
        qr, dqr_da, qc, dqc_da = self._critic_values(obs, sample.action)
        alpha = self.alpha
        if config.algorithm == 'csac_lb':
            term = csac_lb_actor_term(
                qr, qc, alpha, sample.logp, config.mu, config.cost_limit_d
            )
        else:
            beta = self.beta if config.algorithm == 'sac_lag' else 0.0
            term = sac_lag_actor_term(qr, qc, beta, alpha, sample.logp)
        n = len(qr)
        d_action = (term.d_qr * dqr_da + term.d_qc * dqc_da) / n
        d_logp = term.d_logp / n
        self._actor.zero_grad()
        self._policy.backward(sample, d_action, d_logp)
        return ActorLoss(
            loss=float(term.value.mean()), term=term, qc=qc,
            logp=sample.logp, sample=sample
        )

    def actor_update(self, batch: Batch,
                     eps: Optional[ndarray] = None) -> Dict[str, float]:
        """
        Take one gradient step on the actor, then on β ('sac_lag') and on
        the entropy temperature.

        The temperature is stepped on log α with the gradient
        −mean(logπ + target_entropy), i.e. without the factor α.
        """
        config = self._config
        result = self.actor_loss(batch.obs, eps)
        if not isfinite(result.loss) or not all(
                np_isfinite(g).all() for g in self._actor.grads
        ):
            raise TrainingDivergenceError(
                f'non-finite actor loss {result.loss}'
            )
        self._optimizers['actor'].step(self._actor.grads)
        stats = {
            'actor_loss': result.loss,
            'barrier_rate': float((result.qc > config.cost_limit_d).mean()),
        }
        if config.algorithm == 'sac_lag':
            loss, _, grad_raw = beta_loss(
                self._beta_raw[0], config.cost_limit_d, result.qc
            )
            self._optimizers['beta_raw'].step([array([grad_raw])])
            stats['beta_loss'] = loss
        if config.auto_alpha:
            grad = -float((result.logp + config.target_entropy).mean())
            self._optimizers['log_alpha'].step([array([grad])])
        return stats

    def update(self, batch: Batch) -> Dict[str, float]:
        """
        One critic and one actor update on the same batch.
        """
        losses = self.critic_update(batch)
        losses.update(self.actor_update(batch))
        self._last_losses = losses
        return losses

    def snapshot(self) -> Dict[str, ndarray]:
        """
        Copy of every parameter, for restoring a known-good state.
        """
        state = {name: net.get_flat() for name, net in self.networks().items()}
        state['log_alpha'] = self._log_alpha.copy()
        state['beta_raw'] = self._beta_raw.copy()
        return state

    def restore(self, state: Dict[str, ndarray]):

        for name, net in self.networks().items():
            net.set_flat(state[name])
        self._log_alpha[...] = state['log_alpha']
        self._beta_raw[...] = state['beta_raw']

    def __str__(self):

        return (
            f'SacAgent({self._config.label}, actor={self._actor}, '
            f'α={self.alpha:.4g}, β={self.beta:.4g})'
        )
