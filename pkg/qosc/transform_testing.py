import itertools
import math
import unittest

import numpy as np
from numpy import testing as npt
from scipy import linalg

from qosc import DimensionMismatch, Irrep, QParam, algebra, oscillator, transform


class ReducePowerTest(unittest.TestCase):
    def test_values(self):
        self.assertEqual(3.0, transform.reduce_power(-1.0))
        self.assertEqual(0.0, transform.reduce_power(4.0))
        self.assertEqual(0.0, transform.reduce_power(-8.0))
        self.assertAlmostEqual(1.5, transform.reduce_power(5.5), places=15)


class SpectralKernelTest(unittest.TestCase):
    def setUp(self):
        self.irrep = Irrep(3)
        self.qp = QParam(0.6)

    def test_identity(self):
        kernel = transform.kernel_spectral(self.irrep, self.qp, 0.0)
        npt.assert_array_equal(np.eye(4), kernel.matrix)

    def test_fourth_power(self):
        fourier = transform.kernel_spectral(self.irrep, self.qp, 1.0).matrix
        npt.assert_allclose(np.eye(4), np.linalg.matrix_power(fourier, 4), atol=1e-12)

    def test_unitary(self):
        for q, twoj in itertools.product((0.5, 0.9, 1.0), (1, 6, 32)):
            irrep = Irrep(twoj)
            for a in transform.DEFAULT_POWERS:
                k = transform.kernel_spectral(irrep, QParam(q), a).matrix
                npt.assert_allclose(np.eye(irrep.dim), k @ k.conj().T, atol=1e-10)

    def test_group_law(self):
        for a1, a2 in ((0.1, 0.5), (1.0, 1.9), (3.3, 3.3)):
            product = (
                transform.kernel_spectral(self.irrep, self.qp, a1).matrix
                @ transform.kernel_spectral(self.irrep, self.qp, a2).matrix
            )
            npt.assert_allclose(
                transform.kernel_spectral(self.irrep, self.qp, a1 + a2).matrix, product, atol=1e-12
            )

    def test_periodic(self):
        npt.assert_allclose(
            transform.kernel_spectral(self.irrep, self.qp, 0.7).matrix,
            transform.kernel_spectral(self.irrep, self.qp, 4.7).matrix,
            atol=1e-12,
        )

    def test_half_turn_is_parity(self):
        for twoj in (2, 5):
            irrep = Irrep(twoj)
            kernel = transform.kernel_spectral(irrep, QParam(0.5), 2.0)
            npt.assert_allclose(transform.parity_matrix(irrep), kernel.matrix, atol=1e-12)

    def test_corner_element(self):
        irrep, qp = Irrep(2), QParam(0.5)
        column = oscillator.wave_table(irrep, qp).phi[:, -1]
        expected = sum(column[n] ** 2 * (-1j) ** n for n in range(3))
        self.assertAlmostEqual(expected, transform.kernel_spectral(irrep, qp, 1.0).matrix[-1, -1], places=13)

    def test_near_classical_limit(self):
        irrep = Irrep(1)
        kernel = transform.kernel_spectral(irrep, QParam(1 - 1e-8), 1.0)
        npt.assert_allclose(transform.kernel_limit(irrep, 1.0).matrix, kernel.matrix, atol=1e-4)

    def test_limit_grid(self):
        qp = QParam(1 - 1e-6)
        for twoj in range(9):
            irrep = Irrep(twoj)
            kernel = transform.kernel_spectral(irrep, qp, 1.0)
            npt.assert_allclose(transform.kernel_limit(irrep, 1.0).matrix, kernel.matrix, atol=5e-4)

    def test_classical_little_d(self):
        for twoj, a in ((1, 1.0), (2, 0.4), (4, 1.3), (5, 3.1)):
            irrep = Irrep(twoj)
            npt.assert_allclose(
                transform.kernel_limit(irrep, a).matrix,
                transform.kernel_spectral(irrep, QParam(1), a).matrix,
                atol=1e-12,
            )


class ClosedFormTest(unittest.TestCase):
    def test_matches_spectral(self):
        for q, twoj in itertools.product((0.5, 0.9), (1, 2, 3, 4, 8)):
            irrep, qp = Irrep(twoj), QParam(q)
            for a in transform.CLOSED_FORM_POWERS:
                closed = transform.kernel_closed_form(irrep, qp, a)
                self.assertIsNone(closed.degenerate)
                npt.assert_allclose(
                    transform.kernel_spectral(irrep, qp, a).matrix, closed.matrix, atol=1e-8, err_msg=str((q, twoj, a))
                )

    def test_infinite_beta(self):
        irrep, qp = Irrep(3), QParam(0.5)
        for a in (0.3, 1.0):
            closed = transform.kernel_closed_form(irrep, qp, a, beta="infinite")
            npt.assert_allclose(transform.kernel_spectral(irrep, qp, a).matrix, closed.matrix, atol=1e-8)

    def test_watson(self):
        irrep, qp = Irrep(4), QParam(0.7)
        closed = transform.kernel_closed_form(irrep, qp, 1.0, series="watson")
        npt.assert_allclose(transform.kernel_spectral(irrep, qp, 1.0).matrix, closed.matrix, atol=1e-8)

    def test_beta_forms(self):
        irrep, qp = Irrep(3), QParam(0.5)
        for a in (0.3, 1.0, 2.7):
            t = np.exp(-0.5j * math.pi * a)
            for r, c in itertools.product(irrep.twos_values, repeat=2):
                finite = transform.beta_finite(r, c, irrep, qp, t)
                infinite = transform.beta_infinite(r, c, irrep, qp, t)
                self.assertLess(abs(finite - infinite), 1e-8 * max(1.0, abs(finite)))

    def test_spin_half_element(self):
        irrep, qp = Irrep(1), QParam(0.5)
        t = np.exp(-0.5j * math.pi * 0.6)
        closed = transform.kernel_closed_form(irrep, qp, 0.6)
        self.assertAlmostEqual(0.5 * (1 + t), closed.matrix[0, 0], places=12)

    def test_identity(self):
        closed = transform.kernel_closed_form(Irrep(3), QParam(0.5), 4.0)
        npt.assert_array_equal(np.eye(4), closed.matrix)
        self.assertEqual("t = 1: identity", closed.degenerate)

    def test_half_turn(self):
        for q, twoj in itertools.product((0.5, 0.9), range(9)):
            irrep, qp = Irrep(twoj), QParam(q)
            closed = transform.kernel_closed_form(irrep, qp, 2.0)
            self.assertEqual("t = -1: parity", closed.degenerate)
            spectral = transform.kernel_spectral(irrep, qp, 2.0)
            npt.assert_allclose(spectral.matrix, closed.matrix, atol=1e-8, err_msg=str((q, twoj)))
            npt.assert_array_equal(transform.parity_matrix(irrep), closed.matrix)

    def test_classical(self):
        irrep = Irrep(2)
        closed = transform.kernel_closed_form(irrep, QParam(1), 1.0)
        npt.assert_allclose(transform.kernel_limit(irrep, 1.0).matrix, closed.matrix)


class LittleDTest(unittest.TestCase):
    def test_zero_angle(self):
        npt.assert_allclose(np.eye(5), transform.wigner_little_d_matrix(4, 0.0), atol=1e-15)

    def test_spin_half(self):
        for beta in (0.3, 1.2, 2.9):
            self.assertAlmostEqual(math.cos(beta / 2), transform.wigner_little_d(1, 1, 1, beta), places=14)

    def test_exponential(self):
        irrep, beta = Irrep(3), 0.7
        j2 = algebra.standard_generators(irrep, QParam(1)).J2.entries
        npt.assert_allclose(linalg.expm(-1j * beta * j2).real, transform.wigner_little_d_matrix(3, beta), atol=1e-13)

    def test_orthogonal(self):
        d = transform.wigner_little_d_matrix(4, 1.1)
        npt.assert_allclose(np.eye(5), d @ d.T, atol=1e-13)


class ApplyTest(unittest.TestCase):
    def setUp(self):
        self.irrep = Irrep(5)
        self.qp = QParam(0.5)
        self.rng = np.random.default_rng(7)

    def random_signal(self) -> transform.Signal:
        values = self.rng.standard_normal(6) + 1j * self.rng.standard_normal(6)
        return transform.Signal(self.irrep, values)

    def test_delta(self):
        kernel = transform.kernel_spectral(self.irrep, self.qp, 0.8)
        delta = transform.Signal(self.irrep, np.eye(6)[2])
        npt.assert_allclose(kernel.matrix[:, 2], transform.apply(kernel, delta).values)

    def test_modes(self):
        kernel = transform.kernel_spectral(self.irrep, self.qp, 1.0)
        phi = oscillator.wave_table(self.irrep, self.qp).phi
        for n in range(6):
            result = transform.apply(kernel, transform.Signal(self.irrep, phi[n]))
            npt.assert_allclose((-1j) ** n * phi[n], result.values, atol=1e-12)

    def test_group_law(self):
        v = self.random_signal()
        k1 = transform.kernel_spectral(self.irrep, self.qp, 0.45)
        k2 = transform.kernel_spectral(self.irrep, self.qp, 1.7)
        k12 = transform.kernel_spectral(self.irrep, self.qp, 2.15)
        npt.assert_allclose(
            transform.apply(k12, v).values, transform.apply(k1, transform.apply(k2, v)).values, atol=1e-12
        )

    def test_parseval(self):
        v = self.random_signal()
        for a in (0.2, 1.0, 3.7):
            result = transform.apply(transform.kernel_spectral(self.irrep, self.qp, a), v)
            self.assertAlmostEqual(1.0, result.norm() / v.norm(), places=12)

    def test_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            transform.Signal(self.irrep, np.ones(5))
        kernel = transform.kernel_spectral(Irrep(4), self.qp, 1.0)
        with self.assertRaises(DimensionMismatch):
            transform.apply(kernel, self.random_signal())

    def test_transformed_modes(self):
        phi = oscillator.wave_table(self.irrep, self.qp).phi
        modes = transform.transformed_modes(self.irrep, self.qp, 0.5)
        npt.assert_allclose(np.exp(-0.25j * math.pi * 3) * phi[3], modes[3])


class MomentumTest(unittest.TestCase):
    def test_eigen_equation(self):
        for q, twoj in ((0.5, 6), (0.8, 3), (1.0, 4)):
            irrep, qp = Irrep(twoj), QParam(q)
            p = algebra.position_momentum_hamiltonian(irrep, qp).P.entries
            vectors = transform.momentum_eigvecs(irrep, qp)
            y = algebra.algebraic_spectrum(irrep, qp)
            npt.assert_allclose(-vectors * y[np.newaxis, :], p @ vectors, atol=1e-10 * max(1.0, y[-1]))
            npt.assert_allclose(np.eye(irrep.dim), vectors.conj().T @ vectors, atol=1e-12)

    def test_spin_half(self):
        irrep, qp = Irrep(1), QParam(1)
        vectors = transform.momentum_eigvecs(irrep, qp)
        minus_j2 = -algebra.standard_generators(irrep, qp).J2.entries
        npt.assert_allclose(0.5 * vectors[:, 0], minus_j2 @ vectors[:, 0], atol=1e-15)
        npt.assert_allclose(-0.5 * vectors[:, 1], minus_j2 @ vectors[:, 1], atol=1e-15)


class EvolutionTest(unittest.TestCase):
    def test_metaplectic_sign(self):
        for twoj in (0, 3, 8):
            irrep = Irrep(twoj)
            full = transform.evolution_operator(irrep, 2 * math.pi)
            npt.assert_allclose(-np.eye(irrep.dim), full.entries, atol=1e-12)


class VerifyTransformTest(unittest.TestCase):
    def test_classical(self):
        for twoj in range(7):
            report = transform.verify_transform(Irrep(twoj), QParam(1), tol=1e-11)
            self.assertTrue(report.passed, str(report))

    def test_deformed(self):
        report = transform.verify_transform(Irrep(8), QParam(0.5), tol=1e-9)
        self.assertTrue(report.passed, str(report))
        self.assertLess(report["closed form"].residual, 1e-8)

    def test_large(self):
        report = transform.verify_transform(Irrep(12), QParam(0.9))
        self.assertTrue(report.passed, str(report))
        self.assertIn("closed form skipped above 2j = 8", report.notes)
