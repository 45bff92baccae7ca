import math
import unittest

import qosc


class QParamTest(unittest.TestCase):
    def test_kappa(self):
        qp = qosc.QParam(0.5)
        self.assertAlmostEqual(math.log(2), qp.kappa, places=15)
        self.assertFalse(qp.is_classical)

    def test_classical(self):
        qp = qosc.QParam(1)
        self.assertTrue(qp.is_classical)
        self.assertEqual(0.0, qp.kappa)
        self.assertEqual(1.0, qp.power(7.5))

    def test_from_kappa(self):
        self.assertAlmostEqual(0.25, qosc.QParam.from_kappa(math.log(4)).q, places=15)

    def test_squared(self):
        self.assertAlmostEqual(0.36, qosc.QParam(0.6).squared().q, places=15)

    def test_power(self):
        self.assertAlmostEqual(8.0, qosc.QParam(0.5).power(-3), places=13)

    def test_rejects(self):
        for q in (0.0, -0.5, float("nan"), "0.5"):
            with self.assertRaises(qosc.DomainError):
                qosc.QParam(q)

    def test_above_one(self):
        with self.assertRaises(qosc.DomainError) as context:
            qosc.QParam(2.0)
        self.assertIn("J3 -> -J3", str(context.exception))
        self.assertIn("0.5", str(context.exception))


class IrrepTest(unittest.TestCase):
    def test_labels(self):
        irrep = qosc.Irrep(3)
        self.assertEqual(4, irrep.dim)
        self.assertEqual(1.5, irrep.j)
        self.assertEqual((-3, -1, 1, 3), irrep.twos_values)
        self.assertEqual(2, irrep.index_of_twos(1))

    def test_trivial(self):
        irrep = qosc.Irrep(0)
        self.assertEqual((0,), irrep.twom_values)

    def test_rejects(self):
        for twoj in (-1, 1.5, True):
            with self.assertRaises(qosc.DomainError):
                qosc.Irrep(twoj)

    def test_checks(self):
        irrep = qosc.Irrep(2)
        irrep.check_mode(2)
        with self.assertRaises(qosc.DomainError):
            irrep.check_mode(3)
        with self.assertRaises(qosc.DomainError):
            irrep.check_twos(1)
        with self.assertRaises(qosc.DomainError):
            irrep.check_twos(4)


class LogSignedTest(unittest.TestCase):
    def test_round_trip(self):
        self.assertAlmostEqual(-3.5, qosc.LogSigned.from_value(-3.5).value, places=14)
        self.assertEqual(0.0, qosc.LogSigned.from_value(0).value)

    def test_arithmetic(self):
        a = qosc.LogSigned.from_value(-2.0)
        b = qosc.LogSigned.from_value(8.0)
        self.assertAlmostEqual(-16.0, (a * b).value, places=13)
        self.assertAlmostEqual(-4.0, (b / a).value, places=13)
        self.assertAlmostEqual(6.0, (3.0 * -a).value, places=13)
        self.assertAlmostEqual(math.sqrt(8.0), b.sqrt().value, places=13)

    def test_beyond_float_range(self):
        huge = qosc.LogSigned(1, 1000.0)
        self.assertTrue((huge / huge).is_close(qosc.LogSigned.one()))
        self.assertEqual(2000.0, (huge * huge).log_abs)

    def test_zero(self):
        zero = qosc.LogSigned.zero()
        self.assertEqual(0, (zero * qosc.LogSigned.one()).sign)
        with self.assertRaises(ZeroDivisionError):
            qosc.LogSigned.one() / zero
        self.assertTrue(zero.is_close(qosc.LogSigned.from_value(0)))

    def test_negative_sqrt(self):
        with self.assertRaises(qosc.DomainError):
            qosc.LogSigned.from_value(-1.0).sqrt()


class ErrorTest(unittest.TestCase):
    def test_hierarchy(self):
        self.assertTrue(issubclass(qosc.DomainError, ValueError))
        self.assertTrue(issubclass(qosc.DimensionMismatch, qosc.QOscError))
        self.assertTrue(issubclass(qosc.NonTerminatingSeries, ArithmeticError))
        self.assertTrue(issubclass(qosc.UsageError, qosc.QOscError))
