"""
Tanh-squashed Gaussian policy on a one-dimensional action.

The actor network outputs (mean, log_std) per observation. An action is
a = tanh(u) with u = mean + exp(log_std)·ε, ε ~ N(0, 1), and its
log-density includes the change of variables −log(1 − tanh²u), evaluated
as −2·(log 2 − u − softplus(−2u)) so it stays finite as |a| → 1.
"""
from typing import NamedTuple, Optional

from numpy import clip, exp, isfinite, log, logaddexp, ndarray, pi, tanh, \
    stack
from numpy.random import Generator

from hpbench.crl.mlp import Mlp, MlpCache
from hpbench.exceptions import TrainingDivergenceError

LOG_STD_MIN = -20.0
LOG_STD_MAX = 2.0
LOG_2 = log(2.0)
HALF_LOG_2PI = 0.5 * log(2 * pi)


class PolicySample(NamedTuple):

    action: ndarray
    logp: ndarray
    mean: ndarray
    log_std: ndarray
    raw_log_std: ndarray
    eps: ndarray
    cache: MlpCache


class SquashedGaussianPolicy(object):

    def __init__(self, actor: Mlp):
        """
        :param actor: Network with 2 outputs, mean and log-std.
        """
        if actor.sizes[-1] != 2:
            raise ValueError('the actor network needs 2 outputs')
        self._actor: Mlp = actor

    @property
    def actor(self) -> Mlp:
        return self._actor

    def _outputs(self, obs: ndarray):

        out, cache = self._actor.forward(obs)
        if not isfinite(out).all():
            raise TrainingDivergenceError('non-finite actor output')
        return out[:, 0], out[:, 1], cache

    def sample(self, obs: ndarray, rng: Optional[Generator] = None,
               eps: Optional[ndarray] = None) -> PolicySample:
        """
        Draw reparameterized actions for a batch of observations.

        :param obs: Normalized observations, (batch, obs_dim).
        :param rng: Source of the Gaussian noise.
        :param eps: Standard normal noise of shape (batch,), used instead of
                    drawing from rng.
        """
        mean, raw_log_std, cache = self._outputs(obs)
        log_std = clip(raw_log_std, LOG_STD_MIN, LOG_STD_MAX)
        if eps is None:
            eps = rng.standard_normal(len(mean))
        std = exp(log_std)
        u = mean + std * eps
        action = tanh(u)
        logp = (
            -0.5 * eps * eps - log_std - HALF_LOG_2PI
            - 2 * (LOG_2 - u - logaddexp(0.0, -2 * u))
        )
        return PolicySample(
            action=action, logp=logp, mean=mean, log_std=log_std,
            raw_log_std=raw_log_std, eps=eps, cache=cache
        )

    def deterministic(self, obs: ndarray) -> ndarray:
        """
        Return tanh(mean) for a batch of observations.
        """
        mean, _, _ = self._outputs(obs)
        return tanh(mean)

    def backward(self, sample: PolicySample, d_action: ndarray,
                 d_logp: ndarray, accumulate: bool = True) -> ndarray:
        """
        Back-propagate gradients w.r.t. the sampled actions and their
        log-probabilities into the actor, holding ε fixed.

        :return: Gradient w.r.t. the actor outputs, (batch, 2).
        """
        a = sample.action
        std = exp(sample.log_std)
        d_u = d_action * (1 - a * a) + d_logp * 2 * a
        d_mean = d_u
        d_log_std = d_u * std * sample.eps - d_logp
        inside = (
            (sample.raw_log_std > LOG_STD_MIN) &
            (sample.raw_log_std < LOG_STD_MAX)
        )
        d_out = stack([d_mean, d_log_std * inside], axis=1)
        self._actor.backward(sample.cache, d_out, accumulate=accumulate)
        return d_out


def policy_sample(actor: Mlp, obs: ndarray, rng: Optional[Generator] = None,
                  deterministic: bool = False):
    """
    Return (action, logp) of the tanh-Gaussian policy of actor for a batch
    of normalized observations. logp is None in deterministic mode.
    """
    policy = SquashedGaussianPolicy(actor)
    if deterministic:
        return policy.deterministic(obs), None
    sample = policy.sample(obs, rng)
    return sample.action, sample.logp
