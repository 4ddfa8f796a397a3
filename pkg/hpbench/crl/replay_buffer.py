from typing import NamedTuple

from numpy import ndarray, zeros
from numpy.random import Generator

from hpbench.exceptions import ParameterError


class Batch(NamedTuple):

    obs: ndarray
    action: ndarray
    reward: ndarray
    cost: ndarray
    next_obs: ndarray
    terminal: ndarray


class ReplayBuffer(object):
    """
    Fixed-capacity ring of transitions; the oldest records are overwritten
    first once it is full.
    """
    def __init__(self, capacity: int, obs_dim: int = 5):

        if capacity < 1:
            raise ParameterError('capacity must be at least 1')
        self._capacity: int = int(capacity)
        self._obs = zeros((self._capacity, obs_dim))
        self._next_obs = zeros((self._capacity, obs_dim))
        self._action = zeros(self._capacity)
        self._reward = zeros(self._capacity)
        self._cost = zeros(self._capacity)
        self._terminal = zeros(self._capacity, dtype=bool)
        self._next: int = 0
        self._size: int = 0

    @property
    def capacity(self) -> int:
        return self._capacity

    @property
    def size(self) -> int:
        return self._size

    def __len__(self) -> int:
        return self._size

    def push(self, obs: ndarray, action: float, reward: float, cost: float,
             next_obs: ndarray, terminal: bool = False):

        i = self._next
        self._obs[i] = obs
        self._action[i] = action
        self._reward[i] = reward
        self._cost[i] = cost
        self._next_obs[i] = next_obs
        self._terminal[i] = terminal
        self._next = (i + 1) % self._capacity
        self._size = min(self._size + 1, self._capacity)

    def sample(self, batch_size: int, rng: Generator) -> Batch:
        """
        Draw batch_size records uniformly, with replacement, from the filled
        region.
        """
        if self._size == 0:
            raise ParameterError('cannot sample from an empty buffer')
        ix = rng.integers(0, self._size, batch_size)
        return self.get(ix)

    def get(self, ix: ndarray) -> Batch:

        return Batch(
            obs=self._obs[ix], action=self._action[ix],
            reward=self._reward[ix], cost=self._cost[ix],
            next_obs=self._next_obs[ix], terminal=self._terminal[ix]
        )
