import math
import unittest
from fractions import Fraction

import mpmath
from scipy import special

from qosc import DomainError, LogSigned, NonTerminatingSeries, QParam, qcore


class QNumberTest(unittest.TestCase):
    def test_zero(self):
        self.assertEqual(0.0, qcore.q_number(0, QParam(0.7)))

    def test_classical(self):
        self.assertEqual(2.5, qcore.q_number(2.5, QParam(1.0)))

    def test_laurent_sums(self):
        self.assertAlmostEqual(3.5, qcore.q_number(3, QParam(0.5)), places=13)
        self.assertAlmostEqual(2.5, qcore.q_number(2, QParam(0.25)), places=13)

    def test_antisymmetric(self):
        qp = QParam(0.3)
        for r in (0.5, 1.0, 2.7, 7.0):
            self.assertAlmostEqual(-qcore.q_number(r, qp), qcore.q_number(-r, qp), places=12)

    def test_even_in_kappa(self):
        qp = QParam(0.4)
        for r in (1.5, 3.0, 5.5):
            flipped = math.sinh(-0.5 * r * qp.kappa) / math.sinh(-0.5 * qp.kappa)
            self.assertAlmostEqual(qcore.q_number(r, qp), flipped, places=12)

    def test_chebyshev(self):
        for q in (0.6, 0.3, 0.95):
            qp = QParam(q)
            x = math.cosh(0.5 * qp.kappa)
            for r in range(1, 9):
                value = qcore.q_number(r, qp)
                self.assertLessEqual(abs(value - qcore.chebyshev_U(r - 1, x)), 1e-12 * value)


class BraceNumberTest(unittest.TestCase):
    def test_small(self):
        qp = QParam(0.5)
        self.assertEqual(0.0, qcore.q_brace_number(0, qp))
        self.assertAlmostEqual(1.0, qcore.q_brace_number(1, qp), places=14)
        self.assertAlmostEqual(1.75, qcore.q_brace_number(3, qp), places=14)

    def test_classical(self):
        self.assertEqual(6.0, qcore.q_brace_number(6, QParam(1)))

    def test_negative(self):
        with self.assertRaises(DomainError):
            qcore.q_brace_number(-1, QParam(0.5))


class ChebyshevTest(unittest.TestCase):
    def test_low_degrees(self):
        for x in (-0.3, 0.0, 0.8, 1.7):
            self.assertEqual(1.0, qcore.chebyshev_U(0, x))
            self.assertAlmostEqual(2 * x, qcore.chebyshev_U(1, x), places=14)
            self.assertAlmostEqual(2 * x * x - 1, qcore.chebyshev_T(2, x), places=14)

    def test_negative_degree(self):
        with self.assertRaises(DomainError):
            qcore.chebyshev_U(-1, 0.5)


class PochhammerTest(unittest.TestCase):
    def setUp(self):
        self.qp = QParam(0.5)

    def test_empty(self):
        self.assertEqual(1.0, qcore.q_pochhammer(3.0 + 1j, self.qp, 0))

    def test_zero_base(self):
        self.assertEqual(1.0, qcore.q_pochhammer(0.0, self.qp, 5))

    def test_two_factors(self):
        self.assertAlmostEqual(0.375, qcore.q_pochhammer(0.5, self.qp, 2).real, places=15)
        self.assertAlmostEqual(0.375, qcore.q_pochhammer_log(0.5, self.qp, 2).value, places=14)

    def test_power_form(self):
        value = qcore.q_pochhammer(-(0.5 ** 1.5), self.qp, 4).real
        self.assertAlmostEqual(value, qcore.q_pochhammer_power(-1, 1.5, self.qp, 4).value, places=12)

    def test_power_form_vanishes(self):
        self.assertEqual(0, qcore.q_pochhammer_power(1, -2, self.qp, 3).sign)
        self.assertEqual(1, qcore.q_pochhammer_power(1, -2, self.qp, 2).sign)

    def test_splitting(self):
        z, m, n = 0.37, 5, 7
        whole = qcore.q_pochhammer_log(z, self.qp, m + n)
        split = qcore.q_pochhammer_log(z, self.qp, m) * qcore.q_pochhammer_log(
            z * self.qp.power(m), self.qp, n
        )
        self.assertTrue(whole.is_close(split))

    def test_negative_length(self):
        z = 0.3 + 0.2j
        expected = 1 / (1 - z / self.qp.q)
        self.assertAlmostEqual(expected, qcore.q_pochhammer_general(z, self.qp, -1), places=13)
        with self.assertRaises(DomainError):
            qcore.q_pochhammer(z, self.qp, -1)

    def test_infinite(self):
        z = 0.8 - 0.1j
        value, tail = qcore.q_pochhammer_infinite(z, self.qp)
        head = qcore.q_pochhammer(z, self.qp, 6)
        rest, _ = qcore.q_pochhammer_infinite(z * self.qp.power(6), self.qp)
        self.assertLess(tail, 1e-14)
        self.assertAlmostEqual(value, head * rest, places=13)

    def test_infinite_classical(self):
        with self.assertRaises(DomainError):
            qcore.q_pochhammer_infinite(0.5, QParam(1))


class BinomialTest(unittest.TestCase):
    def test_edges(self):
        qp = QParam(0.7)
        self.assertAlmostEqual(1.0, qcore.q_binomial(9, 0, qp).value, places=13)
        self.assertAlmostEqual(1.0, qcore.q_binomial(9, 9, qp).value, places=13)

    def test_small(self):
        self.assertAlmostEqual(1.5, qcore.q_binomial(2, 1, QParam(0.5)).value, places=14)

    def test_classical(self):
        for m in range(12):
            for n in range(m + 1):
                self.assertAlmostEqual(
                    special.comb(m, n, exact=True),
                    qcore.q_binomial(m, n, QParam(1)).value,
                    delta=1e-9 * special.comb(m, n),
                )

    def test_symmetric(self):
        qp = QParam(0.5)
        for n in range(11):
            self.assertTrue(qcore.q_binomial(10, n, qp).is_close(qcore.q_binomial(10, 10 - n, qp)))

    def test_alternate_form(self):
        for q in (0.5, 0.9):
            qp = QParam(q)
            for m in range(41):
                for n in range(m + 1):
                    self.assertTrue(
                        qcore.q_binomial(m, n, qp).is_close(
                            qcore.q_binomial_alternate(m, n, qp), rel_tol=1e-10
                        ),
                        (q, m, n),
                    )

    def test_out_of_range(self):
        with self.assertRaises(DomainError):
            qcore.q_binomial(3, 4, QParam(0.5))
        with self.assertRaises(DomainError):
            qcore.q_binomial(3, -1, QParam(0.5))


class DualKravchukSumTest(unittest.TestCase):
    def test_degree_zero(self):
        self.assertAlmostEqual(1.0, qcore.phi32_dual_kravchuk_sum(0, 3, 6, QParam(0.5)), places=14)

    def test_top_position(self):
        for n in range(7):
            self.assertAlmostEqual(1.0, qcore.phi32_dual_kravchuk_sum(n, 0, 6, QParam(0.5)), places=14)

    def test_centre_of_spin_one(self):
        for q in (0.3, 0.5, 0.9, 1.0):
            self.assertAlmostEqual(0.0, qcore.phi32_dual_kravchuk_sum(1, 1, 2, QParam(q)), places=12)

    def test_full_degree(self):
        # the last term has k = twoj, where (q^-2j;q)_k has no vanishing factor yet
        value = qcore.phi32_dual_kravchuk_sum(4, 4, 4, QParam(0.5))
        self.assertTrue(math.isfinite(value))

    def test_classical_exact(self):
        self.assertEqual(Fraction(0), qcore.classical_kravchuk_sum(1, 1, 2))
        self.assertEqual(Fraction(1, 2), qcore.classical_kravchuk_sum(1, 1, 4))
        self.assertEqual(Fraction(-1), qcore.classical_kravchuk_sum(1, 2, 2))

    def test_near_classical(self):
        qp = QParam(1 - 1e-7)
        for n in range(5):
            for xi in range(5):
                self.assertAlmostEqual(
                    float(qcore.classical_kravchuk_sum(n, xi, 4)),
                    qcore.phi32_dual_kravchuk_sum(n, xi, 4, qp),
                    places=5,
                )

    def test_cancelling_sum(self):
        qp = QParam(0.5)
        for n, xi in ((12, 10), (16, 9), (20, 20)):
            with mpmath.workdps(60):
                q = mpmath.exp(-mpmath.mpf(qp.kappa))
                expected = mpmath.fsum(
                    mpmath.qp(q ** -n, q, k) * mpmath.qp(q ** -xi, q, k) * mpmath.qp(-(q ** (xi - 24)), q, k)
                    / (mpmath.qp(q ** -24, q, k) * mpmath.qp(q, q, k))
                    * q ** k
                    for k in range(min(n, xi) + 1)
                )
                expected = float(expected)
            value = qcore.phi32_dual_kravchuk_sum(n, xi, 24, qp)
            self.assertAlmostEqual(1.0, value / expected, places=10, msg=str((n, xi)))

    def test_centre_parity_zero(self):
        for q in (0.3, 0.8):
            self.assertEqual((0.0, 0.0), qcore.phi32_scaled(5, 6, 12, QParam(q)))

    def test_indices(self):
        with self.assertRaises(DomainError):
            qcore.phi32_dual_kravchuk_sum(3, 0, 2, QParam(0.5))
        with self.assertRaises(DomainError):
            qcore.phi32_dual_kravchuk_sum(0, -1, 2, QParam(0.5))


class LogSumTest(unittest.TestCase):
    def test_cancellation(self):
        terms = [LogSigned(1, 700.0), LogSigned(-1, 700.0), LogSigned(1, 0.0)]
        mantissa, scale = qcore.log_sum(terms)
        self.assertEqual(700.0, scale)
        self.assertAlmostEqual(math.exp(-700.0), mantissa, delta=1e-300)

    def test_empty(self):
        self.assertEqual((0.0, 0.0), qcore.log_sum([LogSigned.zero()]))


class SeriesConditionTest(unittest.TestCase):
    def test_single_term(self):
        self.assertEqual(1.0, qcore.series_condition([LogSigned(-1, 3.0)]))

    def test_partial_cancellation(self):
        terms = [LogSigned.one(), LogSigned(-1, math.log(0.5))]
        self.assertAlmostEqual(3.0, qcore.series_condition(terms), places=13)

    def test_exact_cancellation(self):
        self.assertEqual(math.inf, qcore.series_condition([LogSigned.one(), LogSigned(-1, 0.0)]))


class SeriesTest(unittest.TestCase):
    def setUp(self):
        self.qp = QParam(0.6)

    def test_terminating_index(self):
        q = self.qp.q
        self.assertEqual(1, qcore.terminating_index([q ** -3, 0.2, q ** -1], self.qp))
        self.assertEqual(0, qcore.terminating_index([1.0, q ** -2], self.qp))
        self.assertIsNone(qcore.terminating_index([0.2, -(q ** -2), 1j], self.qp))

    def test_termination_tolerance(self):
        q = self.qp.q
        self.assertEqual(4, qcore.terminating_index([q ** -4 * (1 + 1e-14)], self.qp))
        self.assertIsNone(qcore.terminating_index([q ** -4 * (1 + 1e-10)], self.qp))

    def test_w87_trivial(self):
        value = qcore.w8_7(0.3, 1.0, 0.2, -0.4, 0.15, 0.35 + 0.1j, self.qp, 0.7)
        self.assertEqual(1.0, value)

    def test_w87_two_terms(self):
        q = self.qp.q
        a, b, c, d, e, f, z = 0.3, q ** -1, 0.2, -0.4, 0.15, 0.35 + 0.1j, 0.7
        second = (1 - a * q * q) / (1 - a) * (1 - a) * z / (1 - q)
        for p in (b, c, d, e, f):
            second *= (1 - p) / (1 - a * q / p)
        value = qcore.w8_7(a, b, c, d, e, f, self.qp, z)
        self.assertAlmostEqual(1 + second, value, places=13)

    def test_w87_convergent(self):
        q = self.qp.q
        a, params, z = 0.1, (0.2, 0.3, 0.25, 0.15, 0.5), 0.01
        first = (1 - a * q * q) * z / (1 - q)
        for p in params:
            first *= (1 - p) / (1 - a * q / p)
        value = qcore.w8_7(a, *params, self.qp, z)
        self.assertAlmostEqual(1 + first, value, delta=1e-3)

    def test_w87_non_convergent(self):
        with self.assertRaises(NonTerminatingSeries):
            qcore.w8_7(0.1, 0.2, 0.3, 0.25, 0.15, 0.05, self.qp, 5.0, max_terms=50)

    def test_w87_classical(self):
        with self.assertRaises(DomainError):
            qcore.w8_7(0.1, 1.0, 0.3, 0.25, 0.15, 0.05, QParam(1), 0.5)

    def test_watson(self):
        q = self.qp.q
        a, b, c, d, e, f = 0.3, q ** -3, 0.2, 0.45, -0.5, 0.35 + 0.1j
        z = a * a * q ** 5 / (c * d * e * f)
        direct = qcore.w8_7(a, b, c, d, e, f, self.qp, z)
        self.assertAlmostEqual(direct, qcore.watson_reduction(a, b, c, d, e, f, self.qp, z), places=10)

    def test_watson_wrong_argument(self):
        q = self.qp.q
        with self.assertRaises(DomainError):
            qcore.watson_reduction(0.3, q ** -2, 0.2, 0.45, -0.5, 0.35, self.qp, 0.1)

    def test_terminating_phi(self):
        q = self.qp.q
        # q-Chu-Vandermonde: 2phi1(q^-n, b; c; q, q) = (c/b;q)_n / (c;q)_n b^n
        n, b, c = 4, 0.3, 0.7
        expected = qcore.q_pochhammer(c / b, self.qp, n) / qcore.q_pochhammer(c, self.qp, n) * b ** n
        value = qcore.terminating_phi([q ** -n, b], [c], self.qp, q)
        self.assertAlmostEqual(expected, value, places=12)

    def test_phi43_shape(self):
        with self.assertRaises(DomainError):
            qcore.phi43([1.0, 0.2], [0.3], self.qp, 0.5)

    def test_non_terminating_phi(self):
        with self.assertRaises(NonTerminatingSeries):
            qcore.terminating_phi([0.2, 0.3], [0.4], self.qp, 0.5)
