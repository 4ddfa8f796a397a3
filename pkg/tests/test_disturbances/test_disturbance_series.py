from unittest.case import TestCase

from numpy import arange

from hpbench.disturbances import DisturbanceSeries
from hpbench.exceptions import ParameterError


class TestDisturbanceSeries(TestCase):

    def setUp(self) -> None:

        self.series = DisturbanceSeries(
            start='2023-01-01', t_amb=arange(10.0), q_gain=arange(10.0) * 100
        )

    def test_defaults(self):

        self.assertEqual(900, self.series.step)
        self.assertEqual(10, len(self.series))
        self.assertEqual('UTC', str(self.series.start.tz))
        self.assertEqual(0.0, self.series.solar.sum())

    def test_sample(self):

        sample = self.series.sample(3)
        self.assertEqual(3.0, sample.t_amb)
        self.assertEqual(300.0, sample.q_gain)

    def test_sample_wraps(self):

        self.assertEqual(self.series.sample(0), self.series.sample(10))
        self.assertEqual(self.series.sample(7), self.series.sample(27))

    def test_window_wraps(self):

        window = self.series.window(8, 4)
        self.assertEqual([8.0, 9.0, 0.0, 1.0], list(window.t_amb))
        self.assertEqual(self.series.index[8], window.start)

    def test_index(self):

        index = self.series.index
        self.assertEqual(10, len(index))
        self.assertEqual(900, (index[1] - index[0]).total_seconds())

    def test_read_only(self):

        with self.assertRaises(ValueError):
            self.series.t_amb[0] = 5.0

    def test_with_gains(self):

        series = self.series.with_gains(arange(10.0))
        self.assertEqual(4.0, series.sample(4).q_gain)
        self.assertEqual(400.0, self.series.sample(4).q_gain)

    def test_invalid(self):

        with self.assertRaises(ParameterError):
            DisturbanceSeries('2023-01-01', t_amb=[])
        with self.assertRaises(ParameterError):
            DisturbanceSeries('2023-01-01', t_amb=[1.0, 2.0], q_gain=[1.0])
        with self.assertRaises(ParameterError):
            DisturbanceSeries('2023-01-01', t_amb=[1.0], q_gain=[-1.0])
        with self.assertRaises(ParameterError):
            DisturbanceSeries('2023-01-01', t_amb=[1.0], step=0)

    def test_to_frame(self):

        frame = self.series.to_frame()
        self.assertEqual(['t_amb', 'q_gain', 'solar'], list(frame.columns))
        self.assertEqual(10, len(frame))
