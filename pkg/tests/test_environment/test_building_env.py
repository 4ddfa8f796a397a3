from unittest.case import TestCase

from numpy import arange, array_equal, nan

from hpbench.environment import BuildingEnv, EnvConfig
from hpbench.disturbances import DisturbanceSeries
from hpbench.exceptions import EnvironmentStateError, InvalidActionError
from hpbench.heat_pump import HeatPumpModel
from hpbench.utils import discounted_sum
from tests.shared import toy_env, toy_params


class TestReset(TestCase):

    def test_unconfigured(self):

        with self.assertRaises(EnvironmentStateError):
            BuildingEnv().reset()

    def test_eval_reset(self):

        env = toy_env(config=EnvConfig(noise_sigma=0.5))
        obs = env.reset('eval')
        self.assertEqual(20.0, env.state.t_room)
        self.assertEqual(20.0, env.state.t_wall)
        self.assertEqual(25.0, env.state.t_hp_ret)
        self.assertEqual(0, env.start_index)
        self.assertEqual(96, env.episode_len)
        for observed, true in zip(obs[:4], (0.0, 20.0, 20.0, 25.0)):
            self.assertLess(abs(observed - true), 4 * 0.5)

    def test_eval_episode_len(self):

        env = toy_env(config=EnvConfig(eval_episode_len=10))
        env.reset('eval')
        self.assertEqual(10, env.episode_len)

    def test_train_reset_deterministic(self):

        env = toy_env(n=35040)
        env.reset('train', seed=11)
        first = (env.start_index, env.state)
        env.reset('train', seed=11)
        self.assertEqual(first, (env.start_index, env.state))

    def test_train_reset_ranges(self):

        env = toy_env(n=35040)
        for seed in range(50):
            env.reset('train', seed=seed)
            self.assertTrue(15.0 <= env.state.t_room <= 25.0)
            self.assertTrue(20.0 <= env.state.t_hp_ret <= 40.0)
            self.assertEqual(env.state.t_room, env.state.t_wall)

    def test_train_start_days_coverage(self):

        env = toy_env(n=35040)
        days = set()
        for _ in range(10000):
            env.reset('train')
            days.add(env.start_index // 96)
        self.assertGreaterEqual(len(days), 0.95 * 365)

    def test_unknown_mode(self):

        with self.assertRaises(ValueError):
            toy_env().reset('test')


class TestStep(TestCase):

    def setUp(self) -> None:

        self.env = toy_env(t_amb=0.0)
        self.env.reset('eval')

    def test_idle_action(self):

        transition = self.env.step(-1.0)
        self.assertEqual(20.0, transition.t_hp_sup)
        self.assertEqual(0.0, transition.p_el)
        self.assertEqual(0.0, transition.reward)
        self.assertEqual(0.0, transition.info['cop'])

    def test_reward_is_negative_energy(self):

        transition = self.env.step(0.5)
        p_el = transition.p_el
        self.assertGreater(p_el, 0.0)
        self.assertAlmostEqual(-p_el * 0.25 / 1000, transition.reward)

    def test_power_from_start_of_step_return(self):

        q_th, p_el = HeatPumpModel().hp_power(toy_params(), 40.0, 25.0, 0.0)
        transition = self.env.step(0.0)
        self.assertEqual(q_th, transition.info['q_th'])
        self.assertEqual(p_el, transition.p_el)
        self.assertAlmostEqual(q_th / p_el, transition.info['cop'])

    def test_cost_uses_true_room_temperature(self):

        env = toy_env(t_amb=-10.0, config=EnvConfig(noise_sigma=0.5))
        env.reset('eval')
        for _ in range(20):
            transition = env.step(-1.0)
            self.assertEqual(max(0.0, 20.0 - transition.state.t_room),
                             transition.cost)
        self.assertGreater(transition.cost, 0.0)

    def test_clipping(self):

        transition = self.env.step(5.0)
        self.assertEqual(1.0, transition.action)
        self.assertEqual(60.0, transition.t_hp_sup)

    def test_nan_action(self):

        with self.assertRaises(InvalidActionError):
            self.env.step(nan)

    def test_step_before_reset(self):

        with self.assertRaises(EnvironmentStateError):
            toy_env().step(0.0)

    def test_done(self):

        env = toy_env(config=EnvConfig(episode_len=3))
        env.reset('train', seed=0)
        dones = [env.step(0.0).done for _ in range(3)]
        self.assertEqual([False, False, True], dones)
        with self.assertRaises(EnvironmentStateError):
            env.step(0.0)

    def test_observation_of_upcoming_interval(self):

        weather = DisturbanceSeries('2023-01-02', t_amb=arange(10.0),
                                    q_gain=arange(10.0) * 1000)
        env = BuildingEnv(toy_params(), HeatPumpModel(), weather)
        obs = env.reset('eval')
        self.assertEqual(0.0, obs[0])
        transition = env.step(0.0)
        self.assertEqual(1.0, transition.obs[0])
        self.assertEqual(1.0, transition.obs[4])
        self.assertEqual(0.0, transition.info['t_amb'])
        self.assertEqual(transition.state.t_room, transition.obs[1])

    def test_noise_only_in_observations(self):

        clean = toy_env(t_amb=-5.0)
        noisy = toy_env(t_amb=-5.0, config=EnvConfig(noise_sigma=0.5))
        clean.reset('eval')
        noisy.reset('eval')
        for action in (0.5, 0.2, -0.3, 1.0):
            a = clean.step(action)
            b = noisy.step(action)
            self.assertEqual(a.state, b.state)
            self.assertEqual(a.reward, b.reward)
            self.assertEqual(a.cost, b.cost)
            self.assertEqual(a.obs[4], b.obs[4])
            self.assertFalse(array_equal(a.obs[:4], b.obs[:4]))

    def test_deterministic_without_noise(self):

        first, second = toy_env(n=35040), toy_env(n=35040)
        first.reset('train', seed=4)
        second.reset('train', seed=4)
        for action in (0.1, -0.4, 0.9):
            self.assertTrue(array_equal(first.step(action).obs,
                                        second.step(action).obs))


class TestDiscountedCost(TestCase):

    def test_always_cold_episode(self):

        value = discounted_sum([1.0] * 96, 0.99)
        self.assertAlmostEqual((1 - 0.99 ** 96) / 0.01, value, places=9)
        self.assertAlmostEqual(61.93, value, delta=0.01)

    def test_always_warm_episode(self):

        self.assertEqual(0.0, discounted_sum([0.0] * 96, 0.99))
        self.assertEqual(0.0, discounted_sum([], 0.99))
