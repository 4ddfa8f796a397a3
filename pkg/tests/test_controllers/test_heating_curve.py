from unittest.case import TestCase

from numpy import array

from hpbench.controllers import HeatingCurve, heating_curve_act
from hpbench.exceptions import ParameterError
from hpbench.harness import simulate
from tests.shared import toy_env


class TestHeatingCurve(TestCase):

    def setUp(self) -> None:

        self.curve = HeatingCurve()

    def test_design_point(self):

        self.assertEqual(28.0, heating_curve_act(self.curve, 20.0))

    def test_linear_part(self):

        self.assertEqual(48.0, heating_curve_act(self.curve, 0.0))
        self.assertEqual(38.5, heating_curve_act(self.curve, 9.5))

    def test_clamped(self):

        self.assertEqual(55.0, heating_curve_act(self.curve, -30.0))
        self.assertEqual(20.0, heating_curve_act(self.curve, 30.0))

    def test_act(self):

        env = toy_env()
        obs = array([0.0, 20.0, 20.0, 25.0, 0.0])
        self.assertEqual(48.0, self.curve.supply_temperature(obs, env))
        self.assertAlmostEqual(0.4, self.curve.act(obs, env))

    def test_custom_curve(self):

        curve = HeatingCurve(base=30.0, slope=0.5, clamp=(25.0, 45.0))
        self.assertEqual(40.0, heating_curve_act(curve, 0.0))
        self.assertEqual(25.0, heating_curve_act(curve, 20.0))

    def test_validation(self):

        with self.assertRaises(ParameterError):
            HeatingCurve(slope=-1.0)
        with self.assertRaises(ParameterError):
            HeatingCurve(clamp=(55.0, 20.0))

    def test_keeps_toy_building_warm(self):

        transitions = simulate(self.curve, toy_env(t_amb=0.0))
        self.assertEqual(96, len(transitions))
        rooms = [t.state.t_room for t in transitions]
        self.assertGreater(min(rooms), 15.0)
        self.assertTrue(all(t.p_el >= 0 for t in transitions))
