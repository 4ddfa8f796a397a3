from concurrent.futures import ThreadPoolExecutor
from unittest.case import TestCase

from numpy import array_equal, linspace

from hpbench.environment import (
    BuildingEnv, EnvConfig, VectorEnv, batch_step, spawn_generators
)
from hpbench.exceptions import InvalidActionError
from tests.shared import toy_env

N_ENVS = 8


def noisy_env(rng) -> BuildingEnv:

    return toy_env(t_amb=-2.0, n=960, config=EnvConfig(noise_sigma=0.5),
                   rng=rng)


def make_envs(seed: int):

    envs = [noisy_env(rng) for rng in spawn_generators(seed, N_ENVS)]
    for env in envs:
        env.reset('train')
    return envs


class TestSpawnGenerators(TestCase):

    def test_reproducible(self):

        first = [rng.random() for rng in spawn_generators(5, 4)]
        second = [rng.random() for rng in spawn_generators(5, 4)]
        self.assertEqual(first, second)

    def test_independent_streams(self):

        draws = [rng.random() for rng in spawn_generators(5, 4)]
        self.assertEqual(4, len(set(draws)))


class TestBatchStep(TestCase):

    def setUp(self) -> None:

        self.actions = linspace(-1.0, 1.0, N_ENVS)

    def test_matches_sequential_stepping(self):

        batched = make_envs(7)
        sequential = make_envs(7)
        with ThreadPoolExecutor(max_workers=4) as executor:
            for _ in range(20):
                parallel = batch_step(batched, self.actions, executor)
                for env, action, result in zip(sequential, self.actions,
                                               parallel):
                    expected = env.step(action)
                    self.assertTrue(array_equal(expected.obs, result.obs))
                    self.assertEqual(expected.reward, result.reward)
                    self.assertEqual(expected.cost, result.cost)

    def test_without_executor(self):

        first = make_envs(3)
        second = make_envs(3)
        a = batch_step(first, self.actions)
        b = batch_step(second, self.actions)
        for x, y in zip(a, b):
            self.assertTrue(array_equal(x.obs, y.obs))

    def test_action_count_mismatch(self):

        with self.assertRaises(InvalidActionError):
            batch_step(make_envs(0), self.actions[:3])


class TestVectorEnv(TestCase):

    def test_reset_shape(self):

        vector = VectorEnv.from_seed(noisy_env, N_ENVS, seed=1)
        self.assertEqual((N_ENVS, 5), vector.reset().shape)
        self.assertEqual(N_ENVS, len(vector))

    def test_threads_match_sequential(self):

        threaded = VectorEnv.from_seed(noisy_env, N_ENVS, 2, num_workers=4)
        plain = VectorEnv.from_seed(noisy_env, N_ENVS, 2)
        self.assertTrue(array_equal(threaded.reset(), plain.reset()))
        actions = linspace(-0.5, 0.5, N_ENVS)
        for _ in range(100):
            threaded.step(actions)
            plain.step(actions)
            self.assertTrue(array_equal(threaded.observations(),
                                        plain.observations()))
        threaded.close()

    def test_auto_reset(self):

        def short_env(rng):
            return toy_env(config=EnvConfig(episode_len=2), rng=rng)

        vector = VectorEnv.from_seed(short_env, 2, seed=0)
        vector.reset()
        vector.step([0.0, 0.0])
        transitions = vector.step([0.0, 0.0])
        self.assertTrue(all(t.done for t in transitions))
        self.assertTrue(all(env.step_count == 0 for env in vector.envs))

    def test_empty(self):

        with self.assertRaises(ValueError):
            VectorEnv([])
