from math import log
from unittest.case import TestCase

from numpy import array, diff, linspace
from numpy.random import default_rng

from hpbench.barrier import BarrierParams, psi_star, psi_tilde
from hpbench.exceptions import ParameterError


class TestPsiTilde(TestCase):

    def test_log_branch(self):

        value, derivative = psi_tilde(-1.0, 10.0)
        self.assertEqual(0.0, value)
        self.assertAlmostEqual(0.1, derivative)
        self.assertAlmostEqual(-log(0.5) / 10, psi_tilde(-0.5, 10.0)[0])

    def test_joint(self):

        value, derivative = psi_tilde(-0.01, 10.0)
        self.assertAlmostEqual(0.460517, value, places=6)
        self.assertAlmostEqual(10.0, derivative)

    def test_linear_branch(self):

        self.assertAlmostEqual(0.560517, psi_tilde(0.0, 10.0)[0], places=6)
        self.assertAlmostEqual(10.560517, psi_tilde(1.0, 10.0)[0], places=6)
        self.assertAlmostEqual(1.193147, psi_tilde(0.0, 2.0)[0], places=6)
        self.assertEqual(10.0, psi_tilde(5.0, 10.0)[1])

    def test_continuous_derivative(self):

        for mu in (1.5, 2.0, 10.0, 50.0):
            joint = -1 / mu ** 2
            eps = 1e-9
            left_value, left_slope = psi_tilde(joint - eps, mu)
            right_value, right_slope = psi_tilde(joint + eps, mu)
            self.assertAlmostEqual(left_value, right_value, delta=1e-6)
            self.assertAlmostEqual(left_slope, right_slope, delta=1e-4 * mu)

    def test_convex_and_non_decreasing(self):

        x = linspace(-5.0, 3.0, 2001)
        values, derivatives = psi_tilde(x, 10.0)
        self.assertTrue((diff(values) >= 0).all())
        self.assertTrue((diff(derivatives) >= -1e-12).all())

    def test_vectorized(self):

        values, derivatives = psi_tilde(array([-1.0, 0.0, 1.0]), 10.0)
        self.assertEqual((3,), values.shape)
        self.assertAlmostEqual(psi_tilde(0.0, 10.0)[0], values[1])
        self.assertEqual(10.0, derivatives[2])

    def test_invalid_mu(self):

        with self.assertRaises(ParameterError):
            psi_tilde(0.0, 0.0)


class TestPsiStar(TestCase):

    def test_zero_at_or_below_limit(self):

        for x in (-3.0, 0.0, 9.999, 10.0):
            self.assertEqual((0.0, 0.0), psi_star(x, 10.0, 10.0))

    def test_continuous_at_limit(self):

        value, derivative = psi_star(10.0 + 1e-12, 10.0, 10.0)
        self.assertAlmostEqual(0.0, value, places=9)
        self.assertAlmostEqual(0.1, derivative, places=6)

    def test_violation(self):

        self.assertAlmostEqual(7.360517, psi_star(11.68, 10.0, 10.0)[0],
                               places=6)
        self.assertAlmostEqual(10.560517, psi_star(12.0, 10.0, 10.0)[0],
                               places=6)
        self.assertAlmostEqual(10.0, psi_star(12.0, 10.0, 10.0)[1])

    def test_finite_differences(self):

        for x in (10.3, 10.95, 11.5, 14.0):
            h = 1e-6
            numeric = (psi_star(x + h, 10.0, 10.0)[0] -
                       psi_star(x - h, 10.0, 10.0)[0]) / (2 * h)
            self.assertAlmostEqual(numeric, psi_star(x, 10.0, 10.0)[1],
                                   delta=1e-4)

    def test_vectorized(self):

        values, derivatives = psi_star(array([5.0, 12.0]), 10.0, 10.0)
        self.assertEqual(0.0, values[0])
        self.assertEqual(0.0, derivatives[0])
        self.assertGreater(values[1], 0.0)

    def test_needs_mu_above_one(self):

        with self.assertRaises(ParameterError):
            psi_star(12.0, 1.0, 10.0)


class TestBarrierParams(TestCase):

    def test_defaults(self):

        params = BarrierParams()
        self.assertEqual(10.0, params.mu)
        self.assertEqual(10.0, params.d)

    def test_invalid(self):

        with self.assertRaises(ParameterError):
            BarrierParams(mu=-1.0)


class TestBarrierJoint(TestCase):

    def test_branches_meet(self):

        for mu in (1.0, 2.0, 5.0, 10.0):
            joint = -1 / mu ** 2
            linear = mu * joint - log(1 / mu ** 2) / mu + 1 / mu
            value, derivative = psi_tilde(joint, mu)
            self.assertAlmostEqual(linear, value, delta=1e-9)
            self.assertAlmostEqual(mu, derivative, delta=1e-9)

    def test_shifted_barrier_zero_grid(self):

        x = linspace(-100.0, 10.0, 1000)
        values, derivatives = psi_star(x, 10.0, 10.0)
        self.assertTrue((values == 0).all())
        self.assertTrue((derivatives == 0).all())


class TestRandomizedBarrierDerivatives(TestCase):

    def test_psi_tilde(self):

        rng = default_rng(31)
        h = 1e-6
        for _ in range(100):
            mu = rng.uniform(1.1, 20.0)
            x = rng.uniform(-3.0, 2.0)
            numeric = (psi_tilde(x + h, mu)[0] -
                       psi_tilde(x - h, mu)[0]) / (2 * h)
            analytic = psi_tilde(x, mu)[1]
            self.assertLess(abs(analytic - numeric),
                            1e-4 * max(abs(analytic), 1.0))

    def test_psi_star(self):

        rng = default_rng(32)
        h = 1e-6
        for _ in range(100):
            mu = rng.uniform(1.1, 20.0)
            d = rng.uniform(-20.0, 20.0)
            x = d + rng.uniform(-2.0, 5.0)
            numeric = (psi_star(x + h, mu, d)[0] -
                       psi_star(x - h, mu, d)[0]) / (2 * h)
            analytic = psi_star(x, mu, d)[1]
            self.assertLess(abs(analytic - numeric),
                            1e-4 * max(abs(analytic), 1.0))
