import itertools
import math
import unittest

import numpy as np
from numpy import testing as npt

from qosc import DomainError, Irrep, QParam, algebra, oscillator


class PositionGridTest(unittest.TestCase):
    def test_values(self):
        grid = oscillator.position_spectrum(Irrep(2), QParam(0.5))
        npt.assert_allclose([-1.0606602, 0.0, 1.0606602], grid.x, atol=1e-7)
        self.assertEqual([-2, 0, 2], grid.twos)

    def test_odd(self):
        grid = oscillator.position_spectrum(Irrep(7), QParam(0.3))
        npt.assert_allclose(-grid.x[::-1], grid.x, atol=1e-14)
        self.assertTrue(np.all(np.diff(grid.x) > 0))

    def test_rows(self):
        rows = oscillator.position_spectrum(Irrep(1), QParam(1)).rows()
        self.assertEqual([-1, 1], [row[0] for row in rows])
        npt.assert_allclose([[-0.5, 0.5], [0.5, 1.5]], [row[1:] for row in rows], atol=1e-15)


class DualKravchukTest(unittest.TestCase):
    def setUp(self):
        self.irrep = Irrep(2)
        self.qp = QParam(0.5)

    def test_constant(self):
        for twos in self.irrep.twos_values:
            self.assertEqual(1.0, oscillator.dual_q_kravchuk(0, twos, self.irrep, self.qp))

    def test_top_position(self):
        for n in range(3):
            self.assertAlmostEqual(1.0, oscillator.dual_q_kravchuk(n, 2, self.irrep, self.qp), places=13)

    def test_centre_node(self):
        self.assertAlmostEqual(0.0, oscillator.dual_q_kravchuk(1, 0, self.irrep, self.qp), places=13)

    def test_argument(self):
        self.assertAlmostEqual(0.0, oscillator.dual_kravchuk_argument(0, self.irrep, self.qp), places=14)
        self.assertAlmostEqual(-3.0, oscillator.dual_kravchuk_argument(2, self.irrep, self.qp), places=13)

    def test_out_of_range(self):
        with self.assertRaises(DomainError):
            oscillator.dual_q_kravchuk(3, 0, self.irrep, self.qp)
        with self.assertRaises(DomainError):
            oscillator.dual_q_kravchuk(0, 1, self.irrep, self.qp)


class ClassicalTest(unittest.TestCase):
    def test_ground_state(self):
        self.assertEqual(0.5, oscillator.classical_kravchuk_wavefunction(0, 2, 2))
        npt.assert_allclose(
            [0.5, math.sqrt(0.5), 0.5],
            [oscillator.wavefunction(0, twos, Irrep(2), QParam(1)) for twos in (-2, 0, 2)],
            atol=1e-15,
        )

    def test_exact_parity(self):
        for twoj in (3, 8, 15):
            for n, twos in itertools.product(range(twoj + 1), Irrep(twoj).twos_values):
                self.assertEqual(
                    (-1) ** n * oscillator.classical_kravchuk_wavefunction(n, twos, twoj),
                    oscillator.classical_kravchuk_wavefunction(n, -twos, twoj),
                )

    def test_polynomial(self):
        self.assertEqual(1.0, oscillator.classical_kravchuk_polynomial(0, 3, 6))
        self.assertEqual(0.0, oscillator.classical_kravchuk_polynomial(1, 3, 6))


class WavefunctionTest(unittest.TestCase):
    def test_ground_state_is_gamma(self):
        for q, twoj in itertools.product((0.4, 0.9), (1, 4, 9)):
            irrep, qp = Irrep(twoj), QParam(q)
            gamma = oscillator.gamma_vector(irrep, qp).gamma
            phi0 = [oscillator.wavefunction(0, twos, irrep, qp) for twos in irrep.twos_values]
            npt.assert_allclose(gamma, phi0, rtol=1e-13)
            self.assertTrue(np.all(gamma > 0))
            self.assertAlmostEqual(1.0, float(gamma @ gamma), places=12)

    def test_centre_node(self):
        irrep, qp = Irrep(6), QParam(0.6)
        for n in (1, 3, 5):
            self.assertAlmostEqual(0.0, oscillator.wavefunction(n, 0, irrep, qp), places=13)

    def test_near_classical(self):
        qp = QParam(1 - 1e-6)
        for twoj in range(13):
            irrep = Irrep(twoj)
            for n, twos in itertools.product(range(irrep.dim), irrep.twos_values):
                self.assertAlmostEqual(
                    oscillator.classical_kravchuk_wavefunction(n, twos, twoj),
                    oscillator.wavefunction(n, twos, irrep, qp),
                    delta=5e-5,
                )

    def test_matches_eigen_table(self):
        irrep, qp = Irrep(24), QParam(0.9)
        phi = oscillator.wave_table(irrep, qp, "eigen").phi
        for n, (i, twos) in itertools.product(range(irrep.dim), enumerate(irrep.twos_values)):
            self.assertAlmostEqual(phi[n, i], oscillator.wavefunction(n, twos, irrep, qp), delta=1e-10)


class WaveTableTest(unittest.TestCase):
    def test_orthonormal(self):
        for q, twoj in itertools.product((0.5, 0.9, 1.0), (0, 1, 2, 7, 16, 32)):
            phi = oscillator.wave_table(Irrep(twoj), QParam(q)).phi
            npt.assert_allclose(np.eye(twoj + 1), phi.T @ phi, atol=1e-10, err_msg=str((q, twoj)))
            npt.assert_allclose(np.eye(twoj + 1), phi @ phi.T, atol=1e-10, err_msg=str((q, twoj)))

    def test_sweep(self):
        for q, twoj in itertools.product((0.3, 0.5, 0.7, 0.9), range(1, 33)):
            irrep, qp = Irrep(twoj), QParam(q)
            phi = oscillator.wave_table(irrep, qp).phi
            message = str((q, twoj))
            npt.assert_allclose(np.eye(irrep.dim), phi.T @ phi, atol=1e-10, err_msg=message)
            q_matrix = algebra.position_momentum_hamiltonian(irrep, qp).Q.entries.real
            x = algebra.algebraic_spectrum(irrep, qp)
            residual = np.max(np.abs(q_matrix @ phi - phi * x[np.newaxis, :])) / np.max(np.abs(x))
            self.assertLess(residual, 1e-11, message)
            self.assertTrue(np.all(phi[0] > 0), message)

    def test_parity(self):
        for q, twoj in itertools.product((0.5, 0.9), range(33)):
            phi = oscillator.wave_table(Irrep(twoj), QParam(q)).phi
            signs = np.array([(-1) ** n for n in range(twoj + 1)])[:, np.newaxis]
            npt.assert_array_equal(signs * phi, phi[:, ::-1], err_msg=str((q, twoj)))

    def test_ground_row_is_gamma(self):
        for q, twoj in itertools.product((0.3, 0.9), (5, 20, 32)):
            irrep, qp = Irrep(twoj), QParam(q)
            phi = oscillator.wave_table(irrep, qp).phi
            npt.assert_allclose(oscillator.gamma_vector(irrep, qp).gamma, phi[0], atol=1e-12)

    def test_large(self):
        qp = QParam(0.5)
        for twoj in (64, 120):
            table = oscillator.wave_table(Irrep(twoj), qp)
            self.assertEqual("eigen", table.method)
            npt.assert_allclose(np.eye(twoj + 1), table.phi.T @ table.phi, atol=1e-10)
            self.assertTrue(np.all(table.phi[0] > 0))

    def test_eigen_equation(self):
        irrep, qp = Irrep(4), QParam(0.7)
        phi = oscillator.wave_table(irrep, qp).phi
        q_matrix = algebra.position_momentum_hamiltonian(irrep, qp).Q.entries.real
        x = algebra.algebraic_spectrum(irrep, qp)
        npt.assert_allclose(phi * x[np.newaxis, :], q_matrix @ phi, atol=1e-12)

    def test_methods_agree(self):
        for q, twoj in ((0.3, 12), (0.5, 16), (0.9, 12), (1.0, 10)):
            irrep, qp = Irrep(twoj), QParam(q)
            formula = oscillator.wave_table(irrep, qp, "formula")
            eigen = oscillator.wave_table(irrep, qp, "eigen")
            self.assertEqual("eigen", eigen.method)
            npt.assert_allclose(formula.phi, eigen.phi, atol=1e-10)

    def test_auto(self):
        self.assertEqual("eigen", oscillator.wave_table(Irrep(2), QParam(0.5)).method)
        self.assertEqual("formula", oscillator.wave_table(Irrep(40), QParam(1)).method)
        self.assertEqual("eigen", oscillator.wave_table(Irrep(41), QParam(1)).method)

    def test_column(self):
        table = oscillator.wave_table(Irrep(3), QParam(0.5))
        npt.assert_array_equal(table.phi[:, 0], table.column(-3))
        with self.assertRaises(DomainError):
            table.column(2)

    def test_unknown_method(self):
        with self.assertRaises(DomainError):
            oscillator.wave_table(Irrep(2), QParam(0.5), "series")

    def test_csv(self):
        text = str(oscillator.wave_table(Irrep(1), QParam(1)))
        self.assertIn("n,twos=-1,twos=1", text)
        self.assertTrue(text.startswith("# "))


class ProductFormTest(unittest.TestCase):
    def test_matches_table(self):
        for q, twoj in itertools.product((0.5, 0.8, 1.0), (0, 1, 4, 9, 16)):
            irrep, qp = Irrep(twoj), QParam(q)
            table = oscillator.wave_table(irrep, qp)
            for twos in irrep.twos_values:
                npt.assert_allclose(
                    table.column(twos),
                    oscillator.position_eigvec_product_form(twos, irrep, qp),
                    atol=1e-10,
                    err_msg=str((q, twoj, twos)),
                )

    def test_limit(self):
        with self.assertRaises(DomainError):
            oscillator.position_eigvec_product_form(0, Irrep(22), QParam(0.5))


class VerifyOscillatorTest(unittest.TestCase):
    def test_grid(self):
        for q, twoj in itertools.product((0.3, 0.5, 0.9, 1.0), (0, 3, 8, 16, 24, 64)):
            report = oscillator.verify_oscillator(Irrep(twoj), QParam(q))
            self.assertTrue(report.passed, str(report))

    def test_eigen_method(self):
        report = oscillator.verify_oscillator(Irrep(10), QParam(0.6), method="eigen")
        self.assertTrue(report.passed, str(report))
        self.assertIn("wave table method: eigen", report.notes)
