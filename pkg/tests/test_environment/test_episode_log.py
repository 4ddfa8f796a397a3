from pathlib import Path
from tempfile import TemporaryDirectory
from unittest.case import TestCase

from hpbench.environment import (
    LOG_COLUMNS, episode_frame, log_episode, read_episode_log
)
from tests.shared import toy_env


def run_episode(actions, t_amb=-3.0):

    env = toy_env(t_amb=t_amb)
    env.reset('eval')
    transitions = []
    for k in range(env.episode_len):
        transitions.append(env.step(actions[k % len(actions)]))
    return transitions


class TestEpisodeLog(TestCase):

    def setUp(self) -> None:

        self.transitions = run_episode([0.3, -0.2, 0.7, 0.1])

    def test_frame(self):

        frame = episode_frame(self.transitions)
        self.assertEqual(LOG_COLUMNS, list(frame.columns))
        self.assertEqual(96, len(frame))
        self.assertEqual(list(range(96)), frame['step'].tolist())
        self.assertEqual(-3.0, frame['t_amb'].iloc[0])

    def test_round_trip(self):

        with TemporaryDirectory() as tmp:
            path = Path(tmp) / 'episode.csv'
            written = log_episode(self.transitions, path)
            with open(path) as f:
                lines = f.read().splitlines()
            self.assertEqual(97, len(lines))
            self.assertEqual(','.join(LOG_COLUMNS), lines[0])
            read = read_episode_log(path)
        for column in LOG_COLUMNS[1:]:
            self.assertEqual(written[column].tolist(), read[column].tolist())

    def test_idle_episode(self):

        frame = episode_frame(run_episode([-1.0], t_amb=25.0))
        self.assertEqual(0.0, frame['p_el_w'].abs().max())
        self.assertEqual(0.0, frame['reward'].abs().max())

    def test_not_an_episode_log(self):

        with TemporaryDirectory() as tmp:
            path = Path(tmp) / 'other.csv'
            path.write_text('a,b\n1,2\n')
            with self.assertRaises(ValueError):
                read_episode_log(path)
