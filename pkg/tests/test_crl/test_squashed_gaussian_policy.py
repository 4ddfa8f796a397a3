from math import exp, log, pi, tanh
from unittest.case import TestCase

from numpy import concatenate, full, nan, zeros
from numpy.random import default_rng

from hpbench.crl import Mlp, SquashedGaussianPolicy, policy_sample
from hpbench.exceptions import TrainingDivergenceError
from tests.shared import central_difference, relative_error


class TestSquashedGaussianPolicy(TestCase):

    def setUp(self) -> None:

        self.rng = default_rng(4)
        self.actor = Mlp([5, 8, 2], self.rng)
        self.policy = SquashedGaussianPolicy(self.actor)
        self.obs = self.rng.normal(size=(10, 5))
        self.eps = self.rng.standard_normal(10)

    def test_actions_in_range(self):

        sample = self.policy.sample(self.obs, self.rng)
        self.assertTrue((abs(sample.action) < 1).all())

    def test_log_density(self):

        sample = self.policy.sample(self.obs, eps=self.eps)
        for i in range(10):
            std = exp(sample.log_std[i])
            u = sample.mean[i] + std * self.eps[i]
            gaussian = (-0.5 * self.eps[i] ** 2 - log(std)
                        - 0.5 * log(2 * pi))
            expected = gaussian - log(1 - tanh(u) ** 2)
            self.assertAlmostEqual(expected, sample.logp[i], places=9)

    def test_log_density_finite_when_saturated(self):

        actor = Mlp([5, 2], default_rng(0))
        actor.params[1][0] = 40.0
        sample = SquashedGaussianPolicy(actor).sample(self.obs, eps=self.eps)
        self.assertTrue((abs(sample.logp) < 1e3).all())

    def test_backward(self):

        d_action = self.rng.normal(size=10)
        d_logp = self.rng.normal(size=10)

        def objective(flat):
            self.actor.set_flat(flat)
            s = self.policy.sample(self.obs, eps=self.eps)
            return float((d_action * s.action + d_logp * s.logp).sum())

        flat = self.actor.get_flat()
        numeric = central_difference(objective, flat)
        self.actor.set_flat(flat)
        sample = self.policy.sample(self.obs, eps=self.eps)
        self.actor.zero_grad()
        self.policy.backward(sample, d_action, d_logp)
        analytic = [g.ravel() for g in self.actor.grads]
        start = 0
        for grad in analytic:
            chunk = numeric[start: start + grad.size]
            self.assertLess(relative_error(grad, chunk), 1e-5)
            start += grad.size

    def test_deterministic(self):

        action, logp = policy_sample(self.actor, self.obs,
                                     deterministic=True)
        mean = self.actor.predict(self.obs)[:, 0]
        self.assertIsNone(logp)
        for a, m in zip(action, mean):
            self.assertAlmostEqual(tanh(m), a)

    def test_stochastic(self):

        action, logp = policy_sample(self.actor, self.obs, default_rng(1))
        self.assertEqual((10,), action.shape)
        self.assertEqual((10,), logp.shape)

    def test_non_finite_output(self):

        self.actor.params[1][...] = full(2, nan)
        with self.assertRaises(TrainingDivergenceError):
            self.policy.sample(self.obs, self.rng)

    def test_needs_two_outputs(self):

        with self.assertRaises(ValueError):
            SquashedGaussianPolicy(Mlp([5, 3]))

    def test_zero_actor_is_symmetric(self):

        actor = Mlp([5, 8, 2], default_rng(0))
        actor.set_flat(zeros(actor.get_flat().size))
        obs = default_rng(1).normal(size=(10000, 5))
        sample = SquashedGaussianPolicy(actor).sample(obs, default_rng(2))
        self.assertAlmostEqual(0.0, sample.action.mean(), delta=0.03)
        self.assertAlmostEqual(0.5, (sample.action > 0).mean(), delta=0.02)


class TestRandomizedLogDensityGradients(TestCase):

    def test_backward_on_random_instances(self):

        rng = default_rng(11)
        for _ in range(100):
            sizes = [int(rng.integers(1, 4)), int(rng.integers(2, 5)), 2]
            actor = Mlp(sizes, rng)
            policy = SquashedGaussianPolicy(actor)
            n = int(rng.integers(1, 5))
            obs = rng.normal(size=(n, sizes[0]))
            eps = rng.standard_normal(n)
            d_action = rng.normal(size=n)
            d_logp = rng.normal(size=n)

            def objective(flat):
                actor.set_flat(flat)
                s = policy.sample(obs, eps=eps)
                return float((d_action * s.action + d_logp * s.logp).sum())

            flat = actor.get_flat()
            numeric = central_difference(objective, flat)
            actor.set_flat(flat)
            sample = policy.sample(obs, eps=eps)
            actor.zero_grad()
            policy.backward(sample, d_action, d_logp)
            analytic = [g.ravel() for g in actor.grads]
            self.assertLess(
                relative_error(concatenate(analytic), numeric), 1e-4
            )
