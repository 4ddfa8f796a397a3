import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Union

from numpy import ndarray
from pandas import DataFrame
from tqdm import tqdm

from hpbench.controllers.controller_mixin import ControllerMixin
from hpbench.crl.checkpoint import save_checkpoint
from hpbench.crl.observation import normalize_observation
from hpbench.crl.replay_buffer import ReplayBuffer
from hpbench.crl.sac_agent import SacAgent
from hpbench.crl.trainer_config import TrainerConfig
from hpbench.environment.building_env import BuildingEnv
from hpbench.environment.transition import Transition
from hpbench.exceptions import ParameterError, TrainingDivergenceError
from hpbench.harness.kpis import KpiReport, compute_kpis
from hpbench.harness.simulation import simulate

logger = logging.getLogger(__name__)

METRIC_COLUMNS = [
    'episode', 'env_steps', 'energy_kwh', 'avg_dev_k', 'max_dev_k',
    'max_underheat_k', 'avg_underheat_k', 'violation_steps',
    'alpha', 'beta', 'barrier_rate'
]


class PolicyController(ControllerMixin):
    """
    Controller acting with a trained agent's deterministic policy.
    """
    def __init__(self, agent: SacAgent, deterministic: bool = True):

        self._agent: SacAgent = agent
        self._deterministic: bool = deterministic
        self.name = agent.config.label

    def act(self, observation: ndarray, env) -> float:

        return self._agent.act(observation, self._deterministic)

    def supply_temperature(self, observation: ndarray, env) -> float:

        return env.config.supply_temperature(self.act(observation, env))


@dataclass
class TrainingResult(object):
    """
    :param agent: The trained agent.
    :param metrics: One row per evaluation.
    :param final_report: KPIs of the last evaluation.
    :param final_transitions: Steps of the last evaluation episode.
    """
    agent: SacAgent
    metrics: DataFrame
    final_report: KpiReport
    final_transitions: List[Transition]


def evaluate(agent: SacAgent, env: BuildingEnv) -> KpiReport:
    """
    Run one deterministic evaluation episode and return its KPIs.
    """
    return _evaluate(agent, env)[0]


def _evaluate(agent: SacAgent, env: BuildingEnv):

    transitions = simulate(PolicyController(agent), env, mode='eval')
    report = compute_kpis(transitions, env.config.t_ref, env.config.dt)
    return report, transitions


def _dump_divergence(out_dir: Path, agent: SacAgent,
                     last_good: Dict[str, ndarray], error: Exception,
                     episode: int, env_steps: int):

    agent.restore(last_good)
    save_checkpoint(agent, out_dir / 'last_good')
    with open(out_dir / 'divergence.json', 'w') as f:
        json.dump({
            'error': str(error),
            'episode': episode,
            'env_steps': env_steps,
            'last_losses': agent.last_losses,
        }, f, indent=2)
    logger.error('training diverged in episode %d, diagnostics in %s',
                 episode, out_dir)


def train(config: TrainerConfig, env: BuildingEnv, episodes: int,
          eval_env: Optional[BuildingEnv] = None,
          out_dir: Optional[Union[str, Path]] = None,
          agent: Optional[SacAgent] = None,
          disable_progress: bool = False) -> TrainingResult:
    """
    Train an agent on env.

    The first config.warmup_steps environment steps use uniform random
    actions; after that every config.update_every steps trigger one update.
    A deterministic evaluation episode runs after every config.eval_every
    episodes and after the final episode.

    :param config: Trainer hyperparameters.
    :param env: Training environment; reset in 'train' mode each episode.
    :param episodes: Number of training episodes, ≥ 1.
    :param eval_env: Evaluation environment; a copy of env if omitted.
    :param out_dir: Directory for metrics.csv, the final checkpoint and
                    divergence diagnostics.
    :param agent: Agent to continue training, e.g. from a checkpoint.
    :param disable_progress: Hide the progress bar.
    """
    if episodes < 1:
        raise ParameterError('episodes must be at least 1')
    if eval_env is None:
        eval_env = BuildingEnv(
            env.params, env.heat_pump, env.disturbances, env.config
        )
    out_dir = Path(out_dir) if out_dir is not None else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    agent = agent if agent is not None else SacAgent(config)
    rng = agent.rng
    buffer = ReplayBuffer(config.buffer_size)
    rows = []
    env_steps = 0
    barrier_rates = []
    last_good = agent.snapshot()
    report, transitions = None, []
    logger.info('training %s for %d episodes', config.label, episodes)
    for episode in tqdm(range(1, episodes + 1), disable=disable_progress):
        try:
            obs = env.reset('train')
            while not env.done:
                if env_steps < config.warmup_steps:
                    action = float(rng.uniform(-1.0, 1.0))
                else:
                    action = agent.act(obs)
                transition = env.step(action)
                buffer.push(
                    normalize_observation(obs), transition.action,
                    transition.reward, transition.cost,
                    normalize_observation(transition.obs)
                )
                obs = transition.obs
                env_steps += 1
                if (
                        env_steps > config.warmup_steps and
                        env_steps % config.update_every == 0
                ):
                    stats = agent.update(
                        buffer.sample(config.batch_size, rng)
                    )
                    barrier_rates.append(stats['barrier_rate'])
        except TrainingDivergenceError as error:
            if out_dir is not None:
                _dump_divergence(out_dir, agent, last_good, error,
                                 episode, env_steps)
            raise
        last_good = agent.snapshot()
        if episode % config.eval_every == 0 or episode == episodes:
            report, transitions = _evaluate(agent, eval_env)
            rows.append({
                'episode': episode,
                'env_steps': env_steps,
                'energy_kwh': report.energy_kwh,
                'avg_dev_k': report.avg_dev_k,
                'max_dev_k': report.max_dev_k,
                'max_underheat_k': report.max_underheat_k,
                'avg_underheat_k': report.avg_underheat_k,
                'violation_steps': report.violation_steps,
                'alpha': agent.alpha,
                'beta': agent.beta,
                'barrier_rate': (
                    sum(barrier_rates) / len(barrier_rates)
                    if barrier_rates else 0.0
                ),
            })
            barrier_rates = []
            logger.info('episode %d: %s', episode, report)
    metrics = DataFrame(rows, columns=METRIC_COLUMNS)
    if out_dir is not None:
        metrics.to_csv(out_dir / 'metrics.csv', index=False)
        save_checkpoint(agent, out_dir / 'checkpoint')
    return TrainingResult(
        agent=agent, metrics=metrics, final_report=report,
        final_transitions=transitions
    )
