import math
import unittest

import numpy as np
from numpy import testing as npt
from scipy import linalg

from qosc import DomainError, Irrep, QParam, algebra, contraction


class ScaleFactorTest(unittest.TestCase):
    def test_spin_half(self):
        self.assertAlmostEqual(1.0, contraction.scale_factor(Irrep(1), QParam(0.5)), places=14)

    def test_classical(self):
        for twoj in (1, 4, 9):
            self.assertAlmostEqual(1 / math.sqrt(twoj / 2), contraction.scale_factor(Irrep(twoj), QParam(1)), places=14)

    def test_trivial(self):
        with self.assertRaises(DomainError):
            contraction.scale_factor(Irrep(0), QParam(0.5))

    def test_asymptote(self):
        self.assertAlmostEqual(math.sqrt(0.5), contraction.asymptotic_bound(QParam(0.5)), places=14)
        self.assertEqual(math.inf, contraction.asymptotic_bound(QParam(1)))


class ScaledOperatorTest(unittest.TestCase):
    def setUp(self):
        self.irrep = Irrep(6)
        self.qp = QParam(0.7)
        self.ops = contraction.scaled_ops(self.irrep, self.qp)

    def test_hamilton(self):
        self.assertLess((algebra.commutator(self.ops.H, self.ops.Qj) + 1j * self.ops.Pj).norm(), 1e-12)
        self.assertLess((algebra.commutator(self.ops.H, self.ops.Pj) - 1j * self.ops.Qj).norm(), 1e-12)

    def test_commutator_scaling(self):
        plain = algebra.position_momentum_hamiltonian(self.irrep, self.qp)
        npt.assert_allclose(
            self.ops.w ** 2 * algebra.commutator(plain.Q, plain.P).entries,
            algebra.commutator(self.ops.Qj, self.ops.Pj).entries,
            atol=1e-13,
        )

    def test_bounded(self):
        top = linalg.eigvalsh(self.ops.Qj.entries)[-1]
        x_top = 0.5 * (self.qp.power(-3) - self.qp.power(3)) / (self.qp.power(-0.5) - self.qp.power(0.5))
        self.assertAlmostEqual(self.ops.w * x_top, top, places=12)

    def test_exact_low_elements(self):
        for twoj in (4, 9, 20):
            ops = contraction.scaled_ops(Irrep(twoj), self.qp)
            comm = algebra.commutator(ops.Qj, ops.Pj).entries
            self.assertAlmostEqual(1j * self.qp.q, comm[0, 0], places=12)
            self.assertAlmostEqual(math.sqrt(2 * self.qp.q), ops.raising.entries[1, 0].real, places=12)
            self.assertAlmostEqual(0.0, ops.raising.entries[0, 1], places=14)


class TargetTest(unittest.TestCase):
    def test_classical_coincide(self):
        qp = QParam(1)
        for n in range(4):
            self.assertEqual(contraction.formal_commutator(n, qp), contraction.limit_commutator(n, qp))
            self.assertAlmostEqual(math.sqrt(2 * (n + 1)), contraction.limit_raising(n, qp))

    def test_ground(self):
        qp = QParam(0.6)
        self.assertAlmostEqual(0.6, contraction.limit_commutator(0, qp))
        self.assertAlmostEqual(1.0, contraction.formal_raising(0, qp))
        self.assertAlmostEqual(1.2, contraction.limit_ladder(0, qp))


class ContractionReportTest(unittest.TestCase):
    def test_deformed(self):
        for q in (0.5, 0.8):
            report = contraction.contraction_report([8, 16, 24, 32], QParam(q), 2)
            checks = report.checks()
            self.assertTrue(checks.passed, str(checks))
            self.assertLessEqual(report.deviation("commutator_limit")[-1], 0.05)

    def test_classical_trend(self):
        report = contraction.contraction_report([8, 16, 32], QParam(1), 2)
        deviations = report.deviation("commutator_limit")
        self.assertLess(deviations[-1], deviations[0])
        self.assertAlmostEqual(2 / 16, deviations[-1], places=12)
        self.assertTrue(report.passed)

    def test_ground_element(self):
        report = contraction.contraction_report([8, 16, 24], QParam(0.5), 0)
        formal = report.deviation("commutator_formal")
        npt.assert_allclose([0.5, 0.5, 0.5], formal, atol=1e-12)
        limit = report.deviation("commutator_limit")
        self.assertLess(max(limit), 1e-12)

    def test_block_size(self):
        with self.assertRaises(DomainError):
            contraction.contraction_report([4, 16], QParam(0.5), 2)
        with self.assertRaises(DomainError):
            contraction.contraction_report([], QParam(0.5), 2)

    def test_sorted(self):
        report = contraction.contraction_report([16, 8], QParam(0.5), 1)
        self.assertEqual([8, 16], report.twoj_list)

    def test_csv(self):
        text = str(contraction.contraction_report([8], QParam(0.5), 1))
        self.assertIn("twoj,w,bound,hamilton,commutator_formal", text)
        self.assertIn("# limit targets", text)


class BoundTableTest(unittest.TestCase):
    def test_approach(self):
        table = contraction.bound_table([8, 16, 32], QParam(0.5))
        gaps = table.gaps()
        self.assertTrue(all(g <= 0 for g in gaps))
        self.assertLess(abs(gaps[-1]), 0.02)
        npt.assert_allclose([math.sqrt(1 - 0.5 ** twoj) - 1 for twoj in (8, 16, 32)], gaps, atol=1e-13)

    def test_classical(self):
        with self.assertRaises(DomainError):
            contraction.bound_table([8], QParam(1))

    def test_rows(self):
        rows = contraction.bound_table([4], QParam(0.8)).rows()
        self.assertEqual(4, rows[0][0])
        self.assertTrue(np.isfinite(rows[0][2]))
