import math
import unittest

import numpy as np
from numpy import testing as npt
from scipy import linalg

from qosc import DimensionMismatch, Irrep, QParam, algebra, qcore


class OperatorMatrixTest(unittest.TestCase):
    def setUp(self):
        self.irrep = Irrep(2)
        self.a = algebra.OperatorMatrix(self.irrep, np.arange(9).reshape(3, 3))

    def test_complex_entries(self):
        self.assertEqual(complex, self.a.entries.dtype)

    def test_shape(self):
        with self.assertRaises(DimensionMismatch):
            algebra.OperatorMatrix(self.irrep, np.eye(2))

    def test_mismatch(self):
        other = algebra.OperatorMatrix.identity(Irrep(3))
        with self.assertRaises(DimensionMismatch):
            algebra.commutator(self.a, other)

    def test_scalars(self):
        npt.assert_allclose(2 * self.a.entries, (np.float64(2.0) * self.a).entries)
        npt.assert_allclose(1j * self.a.entries, (self.a * 1j).entries)

    def test_self_commutator(self):
        self.assertEqual(0.0, algebra.commutator(self.a, self.a).norm())


class GeneratorTest(unittest.TestCase):
    def test_trivial(self):
        gens = algebra.standard_generators(Irrep(0), QParam(0.5))
        for op in (gens.J3, gens.Jplus, gens.Jminus, gens.J1, gens.J2):
            self.assertEqual((1, 1), op.entries.shape)
            self.assertEqual(0.0, op.norm())

    def test_spin_half_classical(self):
        gens = algebra.standard_generators(Irrep(1), QParam(1))
        npt.assert_allclose([[0, 0.5], [0.5, 0]], gens.J1.entries, atol=1e-15)
        npt.assert_allclose([-0.5, 0.5], gens.J3.diagonal().real)

    def test_raising_element(self):
        gens = algebra.standard_generators(Irrep(2), QParam(0.5))
        expected = math.sqrt(0.5 ** 0.5 + 0.5 ** -0.5)
        self.assertAlmostEqual(expected, gens.Jplus.entries[1, 0].real, places=13)
        self.assertEqual(0.0, gens.Jplus.entries[0, 1])

    def test_raising_commutator(self):
        gens = algebra.standard_generators(Irrep(3), QParam(0.7))
        residual = algebra.commutator(gens.J3, gens.Jplus) - gens.Jplus
        self.assertLess(residual.norm(), 1e-14)

    def test_j1_j2(self):
        irrep, qp = Irrep(2), QParam(0.5)
        gens = algebra.standard_generators(irrep, qp)
        expected = [0.5j * qcore.q_number(2 * m, qp) for m in (-1, 0, 1)]
        npt.assert_allclose(np.diag(expected), algebra.commutator(gens.J1, gens.J2).entries, atol=1e-13)

    def test_hermitian(self):
        gens = algebra.standard_generators(Irrep(5), QParam(0.4))
        npt.assert_allclose(gens.J2.entries, gens.J2.dagger().entries)
        self.assertEqual(0.0, max_real_part(gens.J2))


def max_real_part(op: algebra.OperatorMatrix) -> float:
    return float(np.max(np.abs(op.entries.real)))


class CasimirTest(unittest.TestCase):
    def test_trivial(self):
        qp = QParam(0.5)
        result = algebra.casimir(Irrep(0), qp)
        self.assertAlmostEqual(qcore.q_number(0.5, qp) ** 2 - 0.25, result.eigenvalue, places=14)

    def test_spin_half_classical(self):
        result = algebra.casimir(Irrep(1), QParam(1))
        self.assertAlmostEqual(0.75, result.eigenvalue, places=14)
        npt.assert_allclose(0.75 * np.eye(2), result.matrix.entries, atol=1e-14)

    def test_scalar(self):
        qp = QParam(0.5)
        result = algebra.casimir(Irrep(2), qp)
        self.assertAlmostEqual(qcore.q_number(1.5, qp) ** 2 - 0.25, result.eigenvalue, places=13)
        npt.assert_allclose(result.eigenvalue * np.eye(3), result.matrix.entries, atol=1e-12)


class OscillatorOperatorTest(unittest.TestCase):
    def test_energies(self):
        ops = algebra.position_momentum_hamiltonian(Irrep(4), QParam(0.5))
        npt.assert_allclose([0.5, 1.5, 2.5, 3.5, 4.5], ops.H.diagonal().real)

    def test_classical(self):
        irrep, qp = Irrep(3), QParam(1)
        gens = algebra.standard_generators(irrep, qp)
        ops = algebra.position_momentum_hamiltonian(irrep, qp)
        npt.assert_allclose(gens.J1.entries, ops.Q.entries)
        npt.assert_allclose(-gens.J2.entries, ops.P.entries)

    def test_position_spectrum(self):
        ops = algebra.position_momentum_hamiltonian(Irrep(2), QParam(0.5))
        x1 = math.sinh(math.log(2)) / (2 * math.sinh(0.5 * math.log(2)))
        self.assertAlmostEqual(1.0606602, x1, places=7)
        npt.assert_allclose([-x1, 0, x1], linalg.eigvalsh(ops.Q.entries), atol=1e-12)

    def test_symmetry(self):
        ops = algebra.position_momentum_hamiltonian(Irrep(6), QParam(0.3))
        self.assertEqual(0.0, float(np.max(np.abs(ops.Q.entries.imag))))
        npt.assert_allclose(ops.Q.entries, ops.Q.entries.T)
        self.assertEqual(0.0, max_real_part(ops.P))
        npt.assert_allclose(ops.P.entries, ops.P.dagger().entries)

    def test_naive_model(self):
        irrep, qp = Irrep(2), QParam(0.5)
        ops = algebra.naive_position_momentum(irrep, qp)
        hamilton = algebra.commutator(ops.H, ops.Q) + 1j * ops.P
        self.assertLess(hamilton.norm(), 1e-14)
        spectrum = linalg.eigvalsh(ops.Q.entries)
        self.assertGreater(abs(spectrum[-1] - algebra.algebraic_spectrum(irrep, qp)[-1]), 1e-2)


class FqTest(unittest.TestCase):
    def test_trivial(self):
        npt.assert_allclose([0.0], algebra.fq_diagonal(Irrep(0), QParam(0.5)), atol=1e-15)

    def test_near_classical(self):
        fq = algebra.fq_diagonal(Irrep(1), QParam(0.99))
        self.assertAlmostEqual(-0.5, fq[1], delta=1e-2)

    def test_matches_commutator(self):
        irrep, qp = Irrep(4), QParam(0.5)
        ops = algebra.position_momentum_hamiltonian(irrep, qp)
        comm = algebra.commutator(ops.Q, ops.P)
        npt.assert_allclose(1j * algebra.fq_diagonal(irrep, qp), comm.diagonal(), atol=1e-10)
        npt.assert_allclose(np.diag(comm.diagonal()), comm.entries, atol=1e-12)

    def test_chebyshev_form(self):
        irrep, qp = Irrep(7), QParam(0.6)
        npt.assert_allclose(
            algebra.fq_diagonal(irrep, qp), algebra.fq_chebyshev_form(irrep, qp), rtol=1e-12, atol=1e-12
        )


class SectionTest(unittest.TestCase):
    def test_classical(self):
        section = algebra.phase_space_section(Irrep(4), QParam(1))
        npt.assert_allclose([2, 5, 6, 5, 2], section)
        npt.assert_allclose(section, algebra.coth_section(Irrep(4), QParam(1)), atol=1e-12)

    def test_matrix(self):
        irrep, qp = Irrep(5), QParam(0.45)
        ops = algebra.position_momentum_hamiltonian(irrep, qp)
        square = ops.Q @ ops.Q + ops.P @ ops.P
        npt.assert_allclose(np.diag(algebra.phase_space_section(irrep, qp)), square.entries, atol=1e-12)

    def test_coth_form_differs(self):
        irrep, qp = Irrep(1), QParam(0.5)
        difference = algebra.phase_space_section(irrep, qp) - algebra.coth_section(irrep, qp)
        self.assertGreater(float(np.max(np.abs(difference))), 1e-3)


class VerifyAlgebraTest(unittest.TestCase):
    def test_classical(self):
        report = algebra.verify_algebra(Irrep(2), QParam(1), tol=1e-12)
        self.assertTrue(report.passed, str(report))
        self.assertEqual(1, report.fq_sign)
        self.assertLess(report["Jacobi identity"].residual, 1e-14)

    def test_deformed(self):
        report = algebra.verify_algebra(Irrep(8), QParam(0.5), tol=1e-10)
        self.assertTrue(report.passed, str(report))
        self.assertEqual(1, report.fq_sign)
        self.assertTrue(report["coth form of the section"].informational)
        self.assertGreater(report["coth form of the section"].residual, 1e-6)

    def test_grid(self):
        for q in (0.3, 0.5, 0.9, 0.99, 1.0):
            for twoj in (0, 1, 2, 5, 16, 32):
                report = algebra.verify_algebra(Irrep(twoj), QParam(q), tol=1e-10)
                self.assertTrue(report.passed, str(report))
