import itertools
import math
import unittest

import numpy as np
from numpy import testing as npt

from qosc import DomainError, Irrep, QParam, oscillator, potential


class SecondDifferenceTest(unittest.TestCase):
    def test_constant(self):
        x = np.arange(-3.0, 4.0)
        values = potential.second_difference_potential(x, np.full(7, 0.3), np.ones(5))
        npt.assert_array_equal(np.zeros(5), values)

    def test_harmonic(self):
        h = 5e-3
        x = np.arange(-400, 401) * h
        psi = np.exp(-0.5 * x ** 2)
        values = potential.second_difference_potential(x, psi, np.full(799, h))
        npt.assert_allclose(potential.harmonic_potential(x[1:-1]), values, atol=1e-4)

    def test_sizes(self):
        with self.assertRaises(DomainError):
            potential.second_difference_potential(np.arange(5.0), np.ones(5), np.ones(5))


class ProfileTest(unittest.TestCase):
    def test_fields(self):
        irrep, qp = Irrep(4), QParam(0.7)
        profile = potential.ground_state_profile(irrep, qp)
        npt.assert_allclose(oscillator.gamma_vector(irrep, qp).gamma, profile.psi)
        npt.assert_allclose([math.cosh(s * qp.kappa) for s in (-2, -1, 0, 1, 2)], profile.half_spacings, rtol=1e-14)
        self.assertAlmostEqual(0.5 * (qp.power(-3) - qp.power(3)) / (qp.power(-0.5) - qp.power(0.5)), profile.outer[1])

    def test_positive(self):
        irrep, qp = Irrep(2), QParam(1)
        grid = oscillator.position_spectrum(irrep, qp)
        with self.assertRaises(DomainError):
            potential.GroundStateProfile(irrep, qp, np.array([0.5, 0.0, 0.5]), grid, np.ones(3), np.array([-2.0, 2.0]))

    def test_acceptable(self):
        self.assertTrue(potential.is_acceptable_ground_state(potential.ground_state_profile(Irrep(8), QParam(0.95))))
        self.assertTrue(potential.is_acceptable_ground_state(potential.ground_state_profile(Irrep(8), QParam(1))))

    def test_raised_wings(self):
        irrep, qp = Irrep(2), QParam(1)
        profile = potential.GroundStateProfile(
            irrep, qp, np.array([0.6, 0.2, 0.6]), oscillator.position_spectrum(irrep, qp), np.ones(3), np.array([-2.0, 2.0])
        )
        self.assertFalse(potential.is_acceptable_ground_state(profile))


class KravchukPotentialTest(unittest.TestCase):
    def test_centre(self):
        self.assertAlmostEqual(math.sqrt(0.5) - 1.0, potential.kravchuk_potential(0, 2), places=15)

    def test_edge(self):
        j = 2
        expected = math.sqrt(2 * j * (2 * j + 1)) / (2 * math.sqrt(2 * j + 1)) - 1.0
        self.assertAlmostEqual(expected, potential.kravchuk_potential(4, 4), places=15)

    def test_matches_differences(self):
        irrep = Irrep(8)
        values = potential.equivalent_potential_from_ground_state(potential.ground_state_profile(irrep, QParam(1)))
        expected = [potential.kravchuk_potential(twos, 8) for twos in irrep.twos_values]
        npt.assert_allclose(expected, values, atol=1e-13)

    def test_out_of_range(self):
        with self.assertRaises(DomainError):
            potential.kravchuk_potential(5, 4)


class RatioTest(unittest.TestCase):
    def test_gamma(self):
        for q in (0.5, 1.0):
            irrep, qp = Irrep(6), QParam(q)
            gamma = oscillator.gamma_vector(irrep, qp).gamma
            ratios = [potential.ground_state_ratio(twos, irrep, qp) for twos in irrep.twos_values[:-1]]
            npt.assert_allclose(gamma[1:] / gamma[:-1], ratios, rtol=1e-11)

    def test_classical(self):
        irrep, qp = Irrep(5), QParam(1)
        for twos in irrep.twos_values:
            j, s = 2.5, twos / 2
            self.assertAlmostEqual(math.sqrt((j - s) / (j + s + 1)), potential.ground_state_ratio(twos, irrep, qp))

    def test_top(self):
        self.assertEqual(0.0, potential.ground_state_ratio(3, Irrep(3), QParam(0.5)))
        self.assertGreater(potential.ground_state_ratio(1, Irrep(3), QParam(0.5)), 0.0)


class ClosedFormTest(unittest.TestCase):
    def test_consistency(self):
        for q, twoj in itertools.product((0.5, 0.8, 0.99), (0, 1, 2, 6, 11, 16)):
            irrep, qp = Irrep(twoj), QParam(q)
            table = potential.potential_table(irrep, qp)
            npt.assert_allclose(table.closed_form, table.difference, rtol=1e-11, atol=1e-9, err_msg=str((q, twoj)))

    def test_small_case(self):
        irrep, qp = Irrep(4), QParam(0.8)
        values = potential.equivalent_potential_from_ground_state(potential.ground_state_profile(irrep, qp))
        self.assertAlmostEqual(values[2], potential.q_potential_closed_form(0, irrep, qp), places=10)

    def test_trivial(self):
        qp = QParam(0.6)
        expected = -1.0 / math.cosh(0.5 * qp.kappa)
        self.assertAlmostEqual(expected, potential.q_potential_closed_form(0, Irrep(0), qp), places=14)

    def test_classical_dispatch(self):
        self.assertEqual(potential.kravchuk_potential(2, 6), potential.q_potential_closed_form(2, Irrep(6), QParam(1)))

    def test_limit(self):
        qp = QParam(1 - 1e-6)
        for twoj in range(11):
            irrep = Irrep(twoj)
            for twos in irrep.twos_values:
                self.assertAlmostEqual(
                    potential.kravchuk_potential(twos, twoj),
                    potential.q_potential_closed_form(twos, irrep, qp),
                    delta=1e-4,
                )


class VerifyPotentialTest(unittest.TestCase):
    def test_grid(self):
        for q, twoj in itertools.product((0.5, 0.8, 1.0), (0, 1, 6, 16)):
            report = potential.verify_potential(Irrep(twoj), QParam(q))
            self.assertTrue(report.passed, str(report))

    def test_csv(self):
        text = str(potential.potential_table(Irrep(2), QParam(0.5)))
        self.assertIn("twos,x,psi,potential_difference,potential_closed_form", text)
        self.assertIn("# acceptable ground state:", text)
