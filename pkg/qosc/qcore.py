"""
q-arithmetic and the basic hypergeometric series the oscillator is built from.

Products of many q-Pochhammer factors are carried as ``LogSigned`` values and only
turned into floats when a table entry is assembled. q = 1 always goes through the
classical closed forms instead of taking limits at run time.
"""
import logging
import math
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import mpmath
from scipy import special

from qosc import DomainError, LogSigned, NonTerminatingSeries, QParam

logger = logging.getLogger(__name__)

#: truncation threshold for infinite products
INFINITE_PRODUCT_EPS = 1e-16
#: relative distance below which a parameter p counts as q^(-N)
TERMINATION_TOL = 1e-12
#: cap on the number of factors of an infinite product
MAX_PRODUCT_TERMS = 100000
#: relative rounding a float sum of alternating terms may carry before it is summed again
SERIES_LOSS_BUDGET = 1e-12
#: digits kept beyond those lost to cancellation when summing in extended precision
SERIES_GUARD_DIGITS = 20
SERIES_MAX_DIGITS = 2000


def q_number(r: float, qp: QParam) -> float:
    """
    The q-number [r]_q = sinh(r kappa / 2) / sinh(kappa / 2)

    :param r: any real number
    :param qp: deformation parameter
    :return: [r]_q, exactly r when q = 1
    """
    if qp.is_classical:
        return float(r)
    return math.sinh(0.5 * r * qp.kappa) / math.sinh(0.5 * qp.kappa)


def q_brace_number(n: int, qp: QParam) -> float:
    """{n}_q = (q^n - 1)/(q - 1) = 1 + q + ... + q^(n-1)"""
    if n < 0:
        raise DomainError(f"{{n}}_q needs n >= 0, got {n}")
    if qp.is_classical:
        return float(n)
    return math.expm1(-n * qp.kappa) / math.expm1(-qp.kappa)


def chebyshev_U(n: int, x: float) -> float:
    """Chebyshev polynomial of the second kind; [r]_q = U_(r-1)(cosh(kappa/2))"""
    if n < 0:
        raise DomainError(f"Chebyshev degree must be non-negative, got {n}")
    return float(special.eval_chebyu(int(n), x))


def chebyshev_T(n: int, x: float) -> float:
    """Chebyshev polynomial of the first kind"""
    if n < 0:
        raise DomainError(f"Chebyshev degree must be non-negative, got {n}")
    return float(special.eval_chebyt(int(n), x))


def one_minus_q_power(sign: int, exponent: float, qp: QParam) -> float:
    """
    1 - sign * q^exponent without cancellation when q^exponent is close to 1

    :param sign: +1 or -1
    :param exponent: real power of q
    :param qp: deformation parameter
    """
    if sign > 0:
        return -math.expm1(-exponent * qp.kappa)
    return 1.0 + math.exp(-exponent * qp.kappa)


def q_pochhammer(z: complex, qp: QParam, n: int) -> complex:
    """
    The finite product (z;q)_n = (1 - z)(1 - zq)...(1 - zq^(n-1))

    :param z: base, complex in general
    :param qp: deformation parameter
    :param n: number of factors, n >= 0
    :return: the product, 1 for n = 0
    :raise DomainError: if n is negative, see q_pochhammer_general
    """
    if n < 0:
        raise DomainError(f"(z;q)_n needs n >= 0, got {n}; use q_pochhammer_general")
    value = complex(1.0)
    for k in range(n):
        value *= 1.0 - z * qp.power(k)
    return value


def q_pochhammer_log(z: float, qp: QParam, n: int) -> LogSigned:
    """Real-argument (z;q)_n accumulated in the log domain"""
    if n < 0:
        raise DomainError(f"(z;q)_n needs n >= 0, got {n}")
    result = LogSigned.one()
    for k in range(n):
        result = result * (1.0 - z * qp.power(k))
    return result


def q_pochhammer_power(sign: int, exponent: float, qp: QParam, n: int) -> LogSigned:
    """
    (sign * q^exponent; q)_n in the log domain.

    Every factor is evaluated with expm1 so that products like (q;q)_n near q = 1
    keep their relative accuracy.
    """
    if n < 0:
        raise DomainError(f"(z;q)_n needs n >= 0, got {n}")
    result = LogSigned.one()
    for k in range(n):
        result = result * one_minus_q_power(sign, exponent + k, qp)
        if result.sign == 0:
            break
    return result


def q_pochhammer_general(z: complex, qp: QParam, n: int) -> complex:
    """
    (z;q)_n for any integer n, with (z;q)_(-n) = 1/(z q^(-n);q)_n

    :raise ZeroDivisionError: if the reciprocal product vanishes
    """
    if n >= 0:
        return q_pochhammer(z, qp, n)
    return 1.0 / q_pochhammer(z * qp.power(n), qp, -n)


def q_pochhammer_infinite(z: complex, qp: QParam) -> Tuple[complex, float]:
    """
    Truncated (z;q)_infinity.

    Factors are multiplied until |z q^k| < 1e-16; the remaining tail changes the
    product by a relative amount of at most exp(|z q^K|/(1 - q)) - 1.

    :return: (value, relative tail bound)
    :raise DomainError: at q = 1 where the product does not converge
    """
    if qp.is_classical:
        raise DomainError("(z;q)_infinity diverges at q = 1")
    value = complex(1.0)
    k = 0
    while abs(z) * qp.power(k) >= INFINITE_PRODUCT_EPS:
        if k >= MAX_PRODUCT_TERMS:
            raise NonTerminatingSeries(
                f"(z;q)_infinity with |z| = {abs(z):.3g}, q = {qp.q} needs more "
                f"than {MAX_PRODUCT_TERMS} factors"
            )
        value *= 1.0 - z * qp.power(k)
        k += 1
    tail = math.expm1(abs(z) * qp.power(k) / -math.expm1(-qp.kappa))
    return value, tail


def q_binomial(m: int, n: int, qp: QParam) -> LogSigned:
    """
    The q-binomial coefficient (q;q)_m / ((q;q)_n (q;q)_(m-n))

    :return: positive LogSigned value; the ordinary binomial at q = 1
    :raise DomainError: if n is outside 0..m
    """
    if not 0 <= n <= m:
        raise DomainError(f"q-binomial [{m}, {n}] needs 0 <= n <= m")
    if qp.is_classical:
        return LogSigned(
            1, float(special.gammaln(m + 1) - special.gammaln(n + 1) - special.gammaln(m - n + 1))
        )
    return q_pochhammer_power(1, 1, qp, m) / (
        q_pochhammer_power(1, 1, qp, n) * q_pochhammer_power(1, 1, qp, m - n)
    )


def q_binomial_alternate(m: int, n: int, qp: QParam) -> LogSigned:
    """(-1)^n q^(mn - n(n-1)/2) (q^(-m);q)_n / (q;q)_n, the second form of the q-binomial"""
    if not 0 <= n <= m:
        raise DomainError(f"q-binomial [{m}, {n}] needs 0 <= n <= m")
    if qp.is_classical:
        return q_binomial(m, n, qp)
    power = LogSigned(1, -(m * n - n * (n - 1) / 2) * qp.kappa)
    sign = LogSigned(-1 if n % 2 else 1, 0.0)
    return sign * power * q_pochhammer_power(1, -m, qp, n) / q_pochhammer_power(1, 1, qp, n)


def log_sum(terms: Sequence[LogSigned]) -> Tuple[float, float]:
    """
    Sum of signed log-domain terms as mantissa * exp(log_scale).

    The largest term fixes the scale and the mantissas are added with fsum.
    """
    live = [t for t in terms if t.sign != 0]
    if not live:
        return 0.0, 0.0
    scale = max(t.log_abs for t in live)
    mantissa = math.fsum(t.sign * math.exp(t.log_abs - scale) for t in live)
    return mantissa, scale


def _check_kravchuk_indices(n: int, xi: int, twoj: int) -> None:
    if twoj < 0:
        raise DomainError(f"twoj must be non-negative, got {twoj}")
    if not 0 <= n <= twoj:
        raise DomainError(f"mode number {n} outside 0..{twoj}")
    if not 0 <= xi <= twoj:
        raise DomainError(f"xi = j - s = {xi} outside 0..{twoj}")


def classical_kravchuk_sum(n: int, xi: int, twoj: int) -> Fraction:
    """
    Symmetric Kravchuk polynomial K_n(xi; 1/2, 2j) = 2F1(-n, -xi; -2j; 2), exactly
    """
    _check_kravchuk_indices(n, xi, twoj)
    total = Fraction(0)
    term = Fraction(1)
    last = min(n, xi)
    for k in range(last + 1):
        total += term
        if k == last:
            break
        term = term * Fraction((k - n) * (k - xi) * 2, (k - twoj) * (k + 1))
    return total


def phi32_terms(n: int, xi: int, twoj: int, qp: QParam) -> List[LogSigned]:
    """The terms of the dual q-Kravchuk sum, k = 0..min(n, xi), in the log domain"""
    _check_kravchuk_indices(n, xi, twoj)
    terms = []
    term = LogSigned.one()
    last = min(n, xi)
    for k in range(last + 1):
        terms.append(term)
        if k == last:
            break
        numerator = (
            one_minus_q_power(1, k - n, qp)
            * one_minus_q_power(1, k - xi, qp)
            * one_minus_q_power(-1, xi - twoj + k, qp)
        )
        denominator = one_minus_q_power(1, k - twoj, qp) * one_minus_q_power(1, k + 1, qp)
        term = term * LogSigned.from_value(numerator) / denominator * LogSigned(1, -qp.kappa)
    return terms


def series_condition(terms: Sequence[LogSigned]) -> float:
    """
    sum |t_k| / |sum t_k|, the factor by which cancellation magnifies rounding in the terms

    :return: 1 for a single term, infinity when the terms cancel exactly
    """
    mantissa, scale = log_sum(terms)
    if mantissa == 0:
        return 0.0 if all(t.sign == 0 for t in terms) else math.inf
    magnitude = math.fsum(math.exp(t.log_abs - scale) for t in terms if t.sign != 0)
    return magnitude / abs(mantissa)


def _phi32_precise(n: int, xi: int, twoj: int, qp: QParam, dps: int) -> Tuple[mpmath.mpf, mpmath.mpf]:
    """The dual q-Kravchuk sum and the sum of its absolute terms at ``dps`` digits"""
    with mpmath.workdps(dps):
        kappa = mpmath.mpf(qp.kappa)

        def power(exponent: int) -> mpmath.mpf:
            return mpmath.exp(-exponent * kappa)

        total = magnitude = term = mpmath.mpf(1)
        for k in range(min(n, xi)):
            term *= (
                (1 - power(k - n)) * (1 - power(k - xi)) * (1 + power(xi - twoj + k))
                / ((1 - power(k - twoj)) * (1 - power(k + 1)))
                * power(1)
            )
            total += term
            magnitude += abs(term)
        return +total, +magnitude


def _phi32_resummed(n: int, xi: int, twoj: int, qp: QParam, condition: float) -> Tuple[float, float]:
    """Sum again with enough digits to cover the cancellation, doubling until it is covered"""
    dps = 4 * SERIES_GUARD_DIGITS
    if math.isfinite(condition):
        dps = SERIES_GUARD_DIGITS + int(math.log10(condition))
    while True:
        total, magnitude = _phi32_precise(n, xi, twoj, qp, dps)
        lost = math.inf if total == 0 else float(mpmath.log10(magnitude / abs(total)))
        if lost + SERIES_GUARD_DIGITS <= dps or dps >= SERIES_MAX_DIGITS:
            break
        dps = min(2 * dps, SERIES_MAX_DIGITS)
    logger.debug("dual q-Kravchuk sum n=%d xi=%d 2j=%d resummed at %d digits", n, xi, twoj, dps)
    if total == 0:
        return 0.0, 0.0
    return (1.0 if total > 0 else -1.0), float(mpmath.log(abs(total)))


def phi32_scaled(n: int, xi: int, twoj: int, qp: QParam) -> Tuple[float, float]:
    """
    The dual q-Kravchuk sum as (mantissa, log_scale), ready to fold into a prefactor.

    The terms alternate in sign. When their cancellation would cost more than
    SERIES_LOSS_BUDGET in relative accuracy the sum is taken again in extended precision.
    At the centre of an integer representation the odd sums vanish by parity and are
    returned as exact zeros.
    """
    if qp.is_classical:
        value = float(classical_kravchuk_sum(n, xi, twoj))
        return value, 0.0
    if n % 2 and 2 * xi == twoj:
        return 0.0, 0.0
    terms = phi32_terms(n, xi, twoj, qp)
    condition = series_condition(terms)
    if condition * len(terms) * sys.float_info.epsilon <= SERIES_LOSS_BUDGET:
        return log_sum(terms)
    return _phi32_resummed(n, xi, twoj, qp, condition)


def phi32_dual_kravchuk_sum(n: int, xi: int, twoj: int, qp: QParam) -> float:
    """
    The terminating sum behind the dual q-Kravchuk polynomials

        sum_k (q^-n;q)_k (q^-xi;q)_k (-q^(xi-2j);q)_k / ((q^-2j;q)_k (q;q)_k) q^k

    for k = 0..min(n, xi).

    :param n: mode number, 0..twoj
    :param xi: j - s, 0..twoj
    :param twoj: twice the representation label
    :param qp: deformation parameter
    :return: the sum; the exact Kravchuk value at q = 1
    :raise DomainError: on indices out of range
    """
    mantissa, scale = phi32_scaled(n, xi, twoj, qp)
    return mantissa * math.exp(scale)


def terminating_index(params: Sequence[complex], qp: QParam) -> Optional[int]:
    """
    Smallest N such that one of ``params`` equals q^(-N), or None

    :param params: numerator parameters of a basic hypergeometric series
    :param qp: deformation parameter
    """
    best = None
    for p in params:
        p = complex(p)
        if p.real <= 0 or abs(p.imag) > TERMINATION_TOL * abs(p):
            continue
        if qp.is_classical:
            if abs(p.real - 1.0) <= TERMINATION_TOL:
                best = 0
            continue
        n = round(math.log(p.real) / qp.kappa)
        if n >= 0 and abs(p.real / qp.power(-n) - 1.0) <= TERMINATION_TOL:
            best = n if best is None else min(best, n)
    return best


def terminating_phi(
    numerators: Sequence[complex], denominators: Sequence[complex], qp: QParam, z: complex
) -> complex:
    """
    Balanced terminating series sum_k (a_1, ..., a_r+1;q)_k / ((q, b_1, ..., b_r;q)_k) z^k

    :raise NonTerminatingSeries: if no numerator parameter is of the form q^(-N)
    :raise DomainError: if a denominator factor vanishes before the series ends
    """
    if len(numerators) != len(denominators) + 1:
        raise DomainError(
            f"need one more numerator than denominator, got {len(numerators)} "
            f"and {len(denominators)}"
        )
    n_terms = terminating_index(numerators, qp)
    if n_terms is None:
        raise NonTerminatingSeries(f"no numerator parameter of {list(numerators)} is q^(-N)")
    total = complex(0.0)
    term = complex(1.0)
    for k in range(n_terms + 1):
        total += term
        if k == n_terms:
            break
        numerator = complex(1.0)
        for a in numerators:
            numerator *= 1.0 - a * qp.power(k)
        denominator = 1.0 - qp.power(k + 1)
        for b in denominators:
            denominator *= 1.0 - b * qp.power(k)
        if numerator == 0:
            break
        if denominator == 0:
            raise DomainError(f"denominator of term {k + 1} vanishes")
        term *= numerator / denominator * z
    return total


def phi43(
    numerators: Sequence[complex], denominators: Sequence[complex], qp: QParam, z: complex
) -> complex:
    """Terminating 4phi3"""
    if len(numerators) != 4 or len(denominators) != 3:
        raise DomainError("4phi3 needs four numerator and three denominator parameters")
    return terminating_phi(numerators, denominators, qp, z)


def w8_7(
    a: complex,
    b: complex,
    c: complex,
    d: complex,
    e: complex,
    f: complex,
    qp: QParam,
    z: complex,
    max_terms: int = 500,
) -> complex:
    """
    The very-well-poised series 8W7(a; b, c, d, e, f; q, z):

        sum_k (1 - a q^2k)/(1 - a) (a, b, c, d, e, f;q)_k / (q, aq/b, ..., aq/f;q)_k z^k

    Terminating series are summed up to their last non-zero term; anything else
    must converge within ``max_terms``.

    :raise DomainError: at q = 1, or when a denominator factor vanishes
    :raise NonTerminatingSeries: if a non-terminating series does not settle
    """
    if qp.is_classical:
        raise DomainError("8W7 degenerates at q = 1; use the classical limit instead")
    params = (b, c, d, e, f)
    n_terms = terminating_index(params, qp)
    last = n_terms if n_terms is not None else max_terms
    total = complex(0.0)
    term = complex(1.0)
    settled = 0
    for k in range(last + 1):
        total += term
        if n_terms is None:
            settled = settled + 1 if abs(term) <= 1e-17 * max(abs(total), 1e-300) else 0
            if settled >= 3:
                return total
        if k == last:
            break
        qk = qp.power(k)
        poised_before = 1.0 - a * qp.power(2 * k)
        poised_after = 1.0 - a * qp.power(2 * k + 2)
        numerator = poised_after * (1.0 - a * qk)
        denominator = poised_before * (1.0 - qp.power(k + 1))
        for p in params:
            numerator *= 1.0 - p * qk
            denominator *= 1.0 - a * qp.q / p * qk
        if numerator == 0:
            return total
        if denominator == 0:
            raise DomainError(f"8W7 denominator vanishes at term {k + 1}")
        term *= numerator / denominator * z
    if n_terms is None:
        raise NonTerminatingSeries(
            f"8W7 did not converge in {max_terms} terms (|z| = {abs(z):.3g})"
        )
    return total


def watson_reduction(
    a: complex,
    b: complex,
    c: complex,
    d: complex,
    e: complex,
    f: complex,
    qp: QParam,
    z: complex,
) -> complex:
    """
    Terminating 8W7 evaluated through Watson's transformation to a balanced 4phi3.

    The terminating parameter q^(-N) with the smallest N is taken out of (b, .., f)
    and the other four become b', c', d', e' in their original order. The argument
    must be the well-poised value a^2 q^(N+2) / (b' c' d' e').

    :raise NonTerminatingSeries: if none of b..f is of the form q^(-N)
    :raise DomainError: if z is not the argument the transformation needs
    """
    params = [b, c, d, e, f]
    n_terms = terminating_index(params, qp)
    if n_terms is None:
        raise NonTerminatingSeries("Watson's transformation needs a terminating 8W7")
    for i, p in enumerate(params):
        if terminating_index([p], qp) == n_terms:
            del params[i]
            break
    b1, c1, d1, e1 = params
    expected = a * a * qp.power(n_terms + 2) / (b1 * c1 * d1 * e1)
    if abs(expected - z) > 1e-9 * max(1.0, abs(z)):
        raise DomainError(f"8W7 argument {z} is not the well-poised value {expected}")
    aq = a * qp.q
    prefactor = (
        q_pochhammer(aq, qp, n_terms)
        * q_pochhammer(aq / (d1 * e1), qp, n_terms)
        / (q_pochhammer(aq / d1, qp, n_terms) * q_pochhammer(aq / e1, qp, n_terms))
    )
    series = phi43(
        [qp.power(-n_terms), d1, e1, aq / (b1 * c1)],
        [aq / b1, aq / c1, d1 * e1 * qp.power(-n_terms) / a],
        qp,
        qp.q,
    )
    return prefactor * series

