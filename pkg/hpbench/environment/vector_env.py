from concurrent.futures import Executor, ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence

from numpy import ndarray, stack
from numpy.random import Generator, Philox, SeedSequence

from hpbench.custom_types.array_types import FloatArray1d
from hpbench.environment.building_env import BuildingEnv
from hpbench.environment.transition import Transition
from hpbench.exceptions import InvalidActionError


def spawn_generators(seed: int, n: int) -> List[Generator]:
    """
    Return n independent Philox streams derived from one seed.
    """
    return [
        Generator(Philox(child))
        for child in SeedSequence(seed).spawn(n)
    ]


def batch_step(envs: Sequence[BuildingEnv], actions: FloatArray1d,
               executor: Optional[Executor] = None) -> List[Transition]:
    """
    Step every environment with its own action.

    Results equal stepping the environments one after another since each
    environment owns its random stream.

    :param envs: Environments, each exclusively owned for the call.
    :param actions: One normalized action per environment.
    :param executor: Runs the steps in parallel when given.
    """
    actions = list(actions)
    if len(actions) != len(envs):
        raise InvalidActionError(
            f'got {len(actions)} actions for {len(envs)} environments'
        )
    if executor is None:
        return [env.step(action) for env, action in zip(envs, actions)]
    return list(executor.map(
        lambda env, action: env.step(action), envs, actions
    ))


class VectorEnv(object):
    """
    A fixed set of environments stepped together.
    """
    def __init__(self, envs: List[BuildingEnv], num_workers: int = 0):
        """
        Create a new VectorEnv.

        :param envs: Environments with independent random streams.
        :param num_workers: Threads used for stepping, sequential if 0.
        """
        if len(envs) < 1:
            raise ValueError('VectorEnv needs at least one environment')
        self._envs: List[BuildingEnv] = list(envs)
        self._executor: Optional[ThreadPoolExecutor] = (
            ThreadPoolExecutor(max_workers=num_workers)
            if num_workers > 0 else None
        )
        self._last_obs: List[ndarray] = []

    @staticmethod
    def from_seed(make_env: Callable[[Generator], BuildingEnv],
                  n: int, seed: int, num_workers: int = 0) -> 'VectorEnv':
        """
        Build n environments with streams spawned from seed.

        :param make_env: Called with each environment's random stream.
        """
        return VectorEnv(
            [make_env(rng) for rng in spawn_generators(seed, n)],
            num_workers=num_workers
        )

    @property
    def envs(self) -> List[BuildingEnv]:
        return self._envs

    def __len__(self) -> int:
        return len(self._envs)

    def reset(self, mode: str = 'train') -> ndarray:
        """
        Reset every environment and return the stacked observations.
        """
        self._last_obs = [env.reset(mode) for env in self._envs]
        return stack(self._last_obs)

    def step(self, actions: FloatArray1d) -> List[Transition]:
        """
        Step every environment, resetting those that finish an episode.

        The returned transitions hold the final observation of a finished
        episode; the reset observation is available from observations().
        """
        transitions = batch_step(self._envs, actions, self._executor)
        self._last_obs = [
            env.reset(env.mode) if t.done else t.obs
            for env, t in zip(self._envs, transitions)
        ]
        return transitions

    def observations(self) -> ndarray:
        """
        Stacked observations the next actions will act on.
        """
        return stack(self._last_obs)

    def close(self):

        if self._executor is not None:
            self._executor.shutdown()
