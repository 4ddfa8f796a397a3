from unittest.case import TestCase

from numpy import (
    array_equal, concatenate, exp, full, linspace, maximum, sign, tile, zeros
)
from numpy.random import default_rng

from hpbench.crl import SacAgent, TrainerConfig
from hpbench.crl.replay_buffer import Batch
from tests.shared import central_difference, relative_error


def small_config(**kwargs) -> TrainerConfig:

    settings = dict(hidden=(8, 8), batch_size=16, seed=5)
    settings.update(kwargs)
    return TrainerConfig(**settings)


def random_batch(n: int = 16, seed: int = 0,
                 terminal: bool = False) -> Batch:

    rng = default_rng(seed)
    return Batch(
        obs=rng.normal(size=(n, 5)),
        action=rng.uniform(-1, 1, n),
        reward=-rng.uniform(0, 1, n),
        cost=rng.uniform(0, 2, n),
        next_obs=rng.normal(size=(n, 5)),
        terminal=zeros(n, dtype=bool) | terminal
    )


class TestCriticTargets(TestCase):

    def test_zero_discount(self):

        agent = SacAgent(small_config(gamma=0.0))
        batch = random_batch()
        y_r, y_c = agent.critic_targets(batch)
        self.assertTrue(array_equal(batch.reward, y_r))
        self.assertTrue(array_equal(batch.cost, y_c))

    def test_terminal(self):

        agent = SacAgent(small_config())
        batch = random_batch(terminal=True)
        y_r, y_c = agent.critic_targets(batch)
        self.assertTrue(array_equal(batch.reward, y_r))
        self.assertTrue(array_equal(batch.cost, y_c))

    def test_cost_target_has_no_entropy(self):

        agent = SacAgent(small_config())
        batch = random_batch()
        eps = default_rng(1).standard_normal(16)
        y_r, y_c = agent.critic_targets(batch, eps)
        sample = agent.policy.sample(batch.next_obs, eps=eps)
        x = concatenate(
            [batch.next_obs, sample.action[:, None]], axis=1
        )
        q_c = maximum(
            agent.targets['q_c1'].predict(x)[:, 0],
            agent.targets['q_c2'].predict(x)[:, 0]
        )
        self.assertTrue(array_equal(batch.cost + 0.99 * q_c, y_c))


class TestCriticUpdate(TestCase):

    def test_fits_one_step_targets(self):

        agent = SacAgent(small_config(gamma=0.0, lr=1e-2))
        batch = random_batch(64)
        first = agent.critic_update(batch)
        for _ in range(300):
            last = agent.critic_update(batch)
        for name in ('q_r1', 'q_r2', 'q_c1', 'q_c2'):
            self.assertLess(last[name], first[name])

    def test_targets_trail_critics(self):

        agent = SacAgent(small_config(tau=0.5))
        before = agent.targets['q_r1'].get_flat()
        agent.critic_update(random_batch())
        after = agent.targets['q_r1'].get_flat()
        critic = agent.critics['q_r1'].get_flat()
        self.assertTrue(abs(0.5 * before + 0.5 * critic - after).max()
                        < 1e-12)

    def test_converges_to_discounted_return(self):

        gamma, reward, cost = 0.5, -1.0, 0.5
        agent = SacAgent(small_config(gamma=gamma, lr=1e-2, tau=0.5,
                                      auto_alpha=False, alpha_init=1e-6))
        rng = default_rng(7)
        obs = tile(rng.normal(size=5), (64, 1))
        batch = Batch(
            obs=obs, action=rng.uniform(-1, 1, 64), reward=full(64, reward),
            cost=full(64, cost), next_obs=obs.copy(),
            terminal=zeros(64, dtype=bool)
        )
        for _ in range(2000):
            agent.critic_update(batch)
        x = concatenate([obs, linspace(-1, 1, 64)[:, None]], axis=1)
        for name, expected in (('q_r1', reward / (1 - gamma)),
                               ('q_r2', reward / (1 - gamma)),
                               ('q_c1', cost / (1 - gamma)),
                               ('q_c2', cost / (1 - gamma))):
            q = agent.critics[name].predict(x)[:, 0]
            self.assertLess(abs(q.mean() - expected), 0.05 * abs(expected),
                            name)


class TestActorUpdate(TestCase):

    def test_barrier_inactive_matches_unconstrained(self):

        batch = random_batch()
        eps = default_rng(2).standard_normal(16)
        sac = SacAgent(small_config(algorithm='sac'))
        barrier = SacAgent(small_config(algorithm='csac_lb'))
        sac_stats = sac.actor_update(batch, eps)
        barrier_stats = barrier.actor_update(batch, eps)
        self.assertEqual(0.0, barrier_stats['barrier_rate'])
        self.assertEqual(sac_stats['actor_loss'],
                         barrier_stats['actor_loss'])
        self.assertTrue(array_equal(sac.actor.get_flat(),
                                    barrier.actor.get_flat()))
        self.assertEqual(sac.alpha, barrier.alpha)

    def test_barrier_active_changes_update(self):

        batch = random_batch()
        eps = default_rng(2).standard_normal(16)
        sac = SacAgent(small_config(algorithm='sac'))
        barrier = SacAgent(small_config(algorithm='csac_lb',
                                        cost_limit_d=-50.0))
        sac.actor_update(batch, eps)
        stats = barrier.actor_update(batch, eps)
        self.assertEqual(1.0, stats['barrier_rate'])
        self.assertFalse(array_equal(sac.actor.get_flat(),
                                     barrier.actor.get_flat()))

    def test_multiplier_rises_while_violated(self):

        agent = SacAgent(small_config(algorithm='sac_lag',
                                      cost_limit_d=-50.0))
        before = agent.beta
        agent.actor_update(random_batch())
        self.assertGreater(agent.beta, before)

    def test_multiplier_falls_while_satisfied(self):

        agent = SacAgent(small_config(algorithm='sac_lag',
                                      cost_limit_d=1000.0))
        before = agent.beta
        agent.actor_update(random_batch())
        self.assertLess(agent.beta, before)

    def test_multiplier_follows_mean_cost_around_limit(self):

        d = 10.0
        for offset, rises in ((5.0, True), (-5.0, False)):
            agent = SacAgent(small_config(algorithm='sac_lag',
                                          cost_limit_d=d))
            for name in ('q_c1', 'q_c2'):
                critic = agent.critics[name]
                critic.set_flat(zeros(critic.get_flat().size))
                critic.params[-1][...] = d + offset
            before = agent.beta
            stats = agent.actor_update(random_batch())
            self.assertAlmostEqual(-offset, stats['beta_loss'] / before)
            if rises:
                self.assertGreater(agent.beta, before)
            else:
                self.assertLess(agent.beta, before)

    def test_alpha_steps_on_log_alpha(self):

        agent = SacAgent(small_config(lr=1e-3))
        batch = random_batch()
        eps = default_rng(6).standard_normal(16)
        logp = agent.actor_loss(batch.obs, eps).logp
        grad = -(logp.mean() + agent.config.target_entropy)
        agent.actor_update(batch, eps)
        expected = exp(-1e-3 * sign(grad))
        self.assertAlmostEqual(expected, agent.alpha, places=6)

    def test_alpha_fixed(self):

        agent = SacAgent(small_config(auto_alpha=False, alpha_init=0.2))
        agent.actor_update(random_batch())
        self.assertAlmostEqual(0.2, agent.alpha)

    def test_actor_gradient(self):

        for algorithm, d in (('sac_lag', 0.0), ('csac_lb', -50.0)):
            agent = SacAgent(small_config(algorithm=algorithm,
                                          cost_limit_d=d))
            obs = random_batch().obs
            eps = default_rng(3).standard_normal(16)
            flat = agent.actor.get_flat()

            def loss(x):
                agent.actor.set_flat(x)
                return agent.actor_loss(obs, eps).loss

            numeric = central_difference(loss, flat)
            agent.actor.set_flat(flat)
            agent.actor_loss(obs, eps)
            analytic = concatenate(
                [g.ravel() for g in agent.actor.grads]
            )
            self.assertLess(relative_error(analytic, numeric), 1e-4)


class TestAgent(TestCase):

    def test_same_seed_same_networks(self):

        a = SacAgent(small_config())
        b = SacAgent(small_config())
        for name, net in a.networks().items():
            self.assertTrue(array_equal(net.get_flat(),
                                        b.networks()[name].get_flat()))

    def test_act(self):

        agent = SacAgent(small_config())
        obs = [0.0, 20.0, 20.0, 25.0, 0.3]
        self.assertTrue(-1 < agent.act(obs) < 1)
        self.assertEqual(agent.act(obs, deterministic=True),
                         agent.act(obs, deterministic=True))

    def test_snapshot_restore(self):

        agent = SacAgent(small_config())
        state = agent.snapshot()
        agent.update(random_batch())
        agent.restore(state)
        for name, net in agent.networks().items():
            self.assertTrue(array_equal(state[name], net.get_flat()))
        self.assertEqual(1.0, agent.alpha)

    def test_update_records_losses(self):

        agent = SacAgent(small_config(algorithm='sac_lag'))
        losses = agent.update(random_batch())
        for key in ('q_r1', 'q_c2', 'actor_loss', 'barrier_rate',
                    'beta_loss'):
            self.assertIn(key, losses)
        self.assertEqual(losses, agent.last_losses)
