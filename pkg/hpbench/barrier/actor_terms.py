from typing import NamedTuple, Tuple

from numpy import asarray, logaddexp, log, expm1, ndarray
from scipy.special import expit

from hpbench.barrier.log_barrier import psi_star
from hpbench.custom_types.array_types import FloatOrFloatArray1d
from hpbench.exceptions import ParameterError


class ActorTerm(NamedTuple):
    """
    Per-sample actor loss with its partial derivatives.
    """
    value: FloatOrFloatArray1d
    d_qr: FloatOrFloatArray1d
    d_qc: FloatOrFloatArray1d
    d_logp: FloatOrFloatArray1d


def softplus(x: FloatOrFloatArray1d) -> FloatOrFloatArray1d:

    return logaddexp(0.0, x)


def inverse_softplus(y: float) -> float:
    """
    Return x with softplus(x) = y, for y > 0.
    """
    if not y > 0:
        raise ParameterError('softplus is only invertible for y > 0')
    return float(log(expm1(y)))


def beta_loss(beta_raw: float, d: float,
              qc: FloatOrFloatArray1d) -> Tuple[float, float, float]:
    """
    Return the Lagrange multiplier loss mean(β·(d − qc)) with β =
    softplus(beta_raw), its gradient w.r.t. β and w.r.t. beta_raw.

    A descent step on beta_raw raises β while the cost estimates exceed d
    and lowers it otherwise.

    :param beta_raw: Unconstrained multiplier parameter.
    :param d: Cost limit.
    :param qc: Batch of cost-critic estimates.
    """
    qc = asarray(qc, dtype=float).ravel()
    if len(qc) == 0:
        raise ParameterError('beta_loss needs a non-empty batch')
    beta = float(softplus(beta_raw))
    grad_beta = float((d - qc).mean())
    loss = beta * grad_beta
    return loss, grad_beta, grad_beta * float(expit(beta_raw))


def sac_lag_actor_term(qr: FloatOrFloatArray1d, qc: FloatOrFloatArray1d,
                       beta: float, alpha: float,
                       logp: FloatOrFloatArray1d) -> ActorTerm:
    """
    Return α·logp − qr + β·qc per sample.

    :param qr: Reward-critic estimates, min of the twins.
    :param qc: Cost-critic estimates, max of the twins.
    :param beta: Lagrange multiplier, ≥ 0.
    :param alpha: Entropy coefficient.
    :param logp: Log-probabilities of the sampled actions.
    """
    qr = asarray(qr, dtype=float)
    qc = asarray(qc, dtype=float)
    logp = asarray(logp, dtype=float)
    value = alpha * logp - qr + beta * qc
    return ActorTerm(
        value=_scalar(value),
        d_qr=_scalar(-1.0 + 0 * qr),
        d_qc=_scalar(beta + 0 * qc),
        d_logp=_scalar(alpha + 0 * logp)
    )


def csac_lb_actor_term(qr: FloatOrFloatArray1d, qc: FloatOrFloatArray1d,
                       alpha: float, logp: FloatOrFloatArray1d,
                       mu: float, d: float) -> ActorTerm:
    """
    Return α·logp − qr + psi_star(qc) per sample. The barrier term and its
    derivative vanish while qc ≤ d.

    :param qr: Reward-critic estimates, min of the twins.
    :param qc: Cost-critic estimates, max of the twins.
    :param alpha: Entropy coefficient.
    :param logp: Log-probabilities of the sampled actions.
    :param mu: Barrier sharpness, > 1.
    :param d: Cost limit.
    """
    qr = asarray(qr, dtype=float)
    logp = asarray(logp, dtype=float)
    barrier, d_barrier = psi_star(qc, mu, d)
    value = alpha * logp - qr + barrier
    return ActorTerm(
        value=_scalar(value),
        d_qr=_scalar(-1.0 + 0 * qr),
        d_qc=d_barrier,
        d_logp=_scalar(alpha + 0 * logp)
    )


def _scalar(value: ndarray) -> FloatOrFloatArray1d:

    value = asarray(value)
    if value.ndim == 0:
        return float(value)
    return value
