import json
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest.case import TestCase
from unittest.mock import patch

from hpbench.crl import (
    METRIC_COLUMNS, PolicyController, SacAgent, TrainerConfig, evaluate,
    train
)
from hpbench.exceptions import ParameterError, TrainingDivergenceError
from tests.shared import toy_env


def tiny_config(**kwargs) -> TrainerConfig:

    settings = dict(hidden=(8, 8), batch_size=8, warmup_steps=4,
                    buffer_size=1000, eval_every=1, seed=1)
    settings.update(kwargs)
    return TrainerConfig(**settings)


class TestTrain(TestCase):

    def test_single_episode(self):

        with TemporaryDirectory() as tmp:
            result = train(tiny_config(), toy_env(t_amb=-2.0), 1,
                           out_dir=tmp, disable_progress=True)
            for name in ('metrics.csv', 'checkpoint.npz', 'checkpoint.json'):
                self.assertTrue((Path(tmp) / name).is_file())
        self.assertEqual(1, len(result.metrics))
        self.assertEqual(METRIC_COLUMNS, list(result.metrics.columns))
        self.assertEqual(96, result.metrics['env_steps'].iloc[0])
        self.assertEqual(96, len(result.final_transitions))
        self.assertEqual(result.final_report.energy_kwh,
                         result.metrics['energy_kwh'].iloc[0])

    def test_evaluation_schedule(self):

        result = train(tiny_config(eval_every=2), toy_env(), 3,
                       disable_progress=True)
        self.assertEqual([2, 3], result.metrics['episode'].tolist())
        self.assertEqual([192, 288], result.metrics['env_steps'].tolist())

    def test_reproducible(self):

        first = train(tiny_config(), toy_env(), 1, disable_progress=True)
        second = train(tiny_config(), toy_env(), 1, disable_progress=True)
        self.assertTrue(first.metrics.equals(second.metrics))

    def test_continue_training(self):

        config = tiny_config()
        agent = SacAgent(config)
        result = train(config, toy_env(), 1, agent=agent,
                       disable_progress=True)
        self.assertIs(agent, result.agent)
        self.assertGreater(agent.optimizers['actor'].t, 0)

    def test_no_episodes(self):

        with self.assertRaises(ParameterError):
            train(tiny_config(), toy_env(), 0)

    def test_divergence_diagnostics(self):

        with TemporaryDirectory() as tmp:
            with patch.object(SacAgent, 'update',
                              side_effect=TrainingDivergenceError('nan')):
                with self.assertRaises(TrainingDivergenceError):
                    train(tiny_config(), toy_env(), 2, out_dir=tmp,
                          disable_progress=True)
            with open(Path(tmp) / 'divergence.json') as f:
                diagnostics = json.load(f)
            self.assertTrue((Path(tmp) / 'last_good.npz').is_file())
            self.assertFalse((Path(tmp) / 'checkpoint.npz').is_file())
        self.assertEqual(1, diagnostics['episode'])
        self.assertEqual('nan', diagnostics['error'])


class TestPolicyController(TestCase):

    def test_name_and_actions(self):

        agent = SacAgent(tiny_config(algorithm='sac', penalty=30.0))
        controller = PolicyController(agent)
        self.assertEqual('SAC-30', controller.name)
        env = toy_env()
        obs = env.reset('eval')
        action = controller.act(obs, env)
        self.assertEqual(env.config.supply_temperature(action),
                         controller.supply_temperature(obs, env))

    def test_evaluate(self):

        report = evaluate(SacAgent(tiny_config()), toy_env(t_amb=5.0))
        self.assertGreaterEqual(report.energy_kwh, 0.0)
        self.assertGreaterEqual(report.max_dev_k, report.avg_dev_k)
