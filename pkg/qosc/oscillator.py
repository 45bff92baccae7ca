"""
Position grid, dual q-Kravchuk wavefunctions and the mode <-> position table
"""
import logging
import math
import sys
from typing import Any, List

import dataclasses
import mpmath
import numpy as np
from scipy import linalg, special

from qosc import DomainError, Irrep, LogSigned, QParam, algebra, qcore, util

logger = logging.getLogger(__name__)

#: largest representation tabulated from the exact Kravchuk sums at q = 1 by default
CLASSICAL_FORMULA_MAX_TWOJ = 40
#: the power series expansion of the position eigenfunctions is checked up to this size
PRODUCT_FORM_MAX_TWOJ = 20
#: working digits of the power series expansion
PRODUCT_FORM_DIGITS = 60

TABLE_METHODS = ("auto", "formula", "eigen")


@dataclasses.dataclass(eq=False)
class PositionGrid(util.Tabular):
    """The sensor points x_s = [2s]_q / 2, ascending in s"""

    irrep: Irrep
    x: np.ndarray

    @property
    def twos(self) -> List[int]:
        return list(self.irrep.twos_values)

    def header(self) -> List[str]:
        return ["twos", "x", "energy"]

    def rows(self) -> List[List[Any]]:
        return [[twos, float(x), n + 0.5] for n, (twos, x) in enumerate(zip(self.twos, self.x))]

    def comments(self) -> List[str]:
        return ["rows: position twos ascending; energy column is E_n = n + 1/2 for n = row index"]


@dataclasses.dataclass(eq=False)
class GammaVector:
    """Normalisation constants of the position eigenfunctions, also the ground state"""

    irrep: Irrep
    qp: QParam
    gamma: np.ndarray


@dataclasses.dataclass(eq=False)
class WaveTable(util.Tabular):
    """
    phi[n, i] = Phi_n(x_s) for mode n and the i-th position, twos ascending.

    Each column is the position eigenvector g_s written in the mode basis.
    """

    irrep: Irrep
    qp: QParam
    phi: np.ndarray
    method: str = "formula"

    def column(self, twos: int) -> np.ndarray:
        return self.phi[:, self.irrep.index_of_twos(twos)]

    def header(self) -> List[str]:
        return ["n"] + [f"twos={twos}" for twos in self.irrep.twos_values]

    def rows(self) -> List[List[Any]]:
        return [[n] + [float(v) for v in self.phi[n]] for n in range(self.irrep.dim)]

    def comments(self) -> List[str]:
        return [
            f"wavefunctions 2j={self.irrep.twoj} q={self.qp.q!r} method={self.method}",
            "rows: mode n ascending; columns: position twos ascending",
        ]


def position_spectrum(irrep: Irrep, qp: QParam) -> PositionGrid:
    return PositionGrid(irrep, algebra.algebraic_spectrum(irrep, qp))


def _xi(twos: int, irrep: Irrep) -> int:
    irrep.check_twos(twos)
    return (irrep.twoj - twos) // 2


def dual_kravchuk_argument(twos: int, irrep: Irrep, qp: QParam) -> float:
    """lambda(j - s) = q^(-j+s) - q^(-j-s), the polynomial variable at position s"""
    irrep.check_twos(twos)
    return qp.power(-(irrep.twoj - twos) / 2) - qp.power(-(irrep.twoj + twos) / 2)


def dual_q_kravchuk(n: int, twos: int, irrep: Irrep, qp: QParam) -> float:
    """
    Dual q-Kravchuk polynomial K_n(lambda(j - s); -1, 2j | q)

    :raise DomainError: on a mode or position outside the representation
    """
    irrep.check_mode(n)
    return qcore.phi32_dual_kravchuk_sum(n, _xi(twos, irrep), irrep.twoj, qp)


def _gamma_log(twos: int, irrep: Irrep, qp: QParam) -> LogSigned:
    """
    gamma_s = q^((j+s)/2) sqrt([2j, j+s]_(q^2) (1 + q^(-2s)) / (2 (-q;q)_2j))
    """
    upper = (irrep.twoj + twos) // 2
    inside = (
        qcore.q_binomial(irrep.twoj, upper, qp.squared())
        * qcore.one_minus_q_power(-1, -twos, qp)
        / (2.0 * qcore.q_pochhammer_power(-1, 1, qp, irrep.twoj))
    )
    return LogSigned(1, -0.5 * upper * qp.kappa) * inside.sqrt()


def gamma_vector(irrep: Irrep, qp: QParam) -> GammaVector:
    if qp.is_classical:
        gamma = [classical_kravchuk_wavefunction(0, twos, irrep.twoj) for twos in irrep.twos_values]
    else:
        gamma = [_gamma_log(twos, irrep, qp).value for twos in irrep.twos_values]
    return GammaVector(irrep, qp, np.array(gamma))


def classical_kravchuk_polynomial(n: int, xi: int, twoj: int) -> float:
    """Symmetric Kravchuk polynomial K_n(xi; 1/2, 2j)"""
    return float(qcore.classical_kravchuk_sum(n, xi, twoj))


def classical_kravchuk_wavefunction(n: int, twos: int, twoj: int) -> float:
    """
    2^(-j) sqrt(C(2j, j+s) C(2j, n)) K_n(j - s; 1/2, 2j), the q = 1 wavefunction

    The binomials are exact integers so Phi_n(x_-s) = (-1)^n Phi_n(x_s) holds bit for bit.
    """
    irrep = Irrep(twoj)
    irrep.check_mode(n)
    xi = _xi(twos, irrep)
    binomials = special.comb(twoj, twoj - xi, exact=True) * special.comb(twoj, n, exact=True)
    exact = qcore.classical_kravchuk_sum(n, xi, twoj)
    return math.sqrt(binomials) * 2.0 ** (-twoj / 2) * float(exact)


def _prefactor_log(n: int, twos: int, irrep: Irrep, qp: QParam) -> float:
    """log of q^(n(n-1)/4) sqrt([2j, n]_q) gamma_s"""
    return (
        -0.25 * n * (n - 1) * qp.kappa
        + 0.5 * qcore.q_binomial(irrep.twoj, n, qp).log_abs
        + _gamma_log(twos, irrep, qp).log_abs
    )


def wavefunction(n: int, twos: int, irrep: Irrep, qp: QParam) -> float:
    """
    The finite q-oscillator wavefunction Phi_n(x_s) of mode n at position s

    Sums that cancel beyond the float budget are taken again in extended precision,
    so large representations are slow here; wave_table(method="eigen") is the fast route.

    :param n: mode number 0..2j
    :param twos: twice the position label
    :param irrep: the representation
    :param qp: deformation parameter
    :raise DomainError: on a mode or position outside the representation
    """
    irrep.check_mode(n)
    if qp.is_classical:
        return classical_kravchuk_wavefunction(n, twos, irrep.twoj)
    mantissa, scale = qcore.phi32_scaled(n, _xi(twos, irrep), irrep.twoj, qp)
    if mantissa == 0:
        return 0.0
    return mantissa * math.exp(scale + _prefactor_log(n, twos, irrep, qp))


def _formula_table(irrep: Irrep, qp: QParam) -> np.ndarray:
    return np.array(
        [[wavefunction(n, twos, irrep, qp) for twos in irrep.twos_values] for n in range(irrep.dim)]
    )


def _ladder_offdiagonal(irrep: Irrep, qp: QParam) -> np.ndarray:
    """e_n = <n+1|Q|n>, all positive"""
    ops = algebra.position_momentum_hamiltonian(irrep, qp)
    return np.diag(ops.Q.entries, k=-1).real.copy()


def _odd_even_block(off: np.ndarray) -> np.ndarray:
    """
    Upper bidiagonal C with Q g = x g  <=>  C g_even = x g_odd, C^T g_odd = x g_even.

    Rows are the odd modes, columns the even modes; an odd dimension gets a zero
    row so that C is square.
    """
    size = (len(off) + 2) // 2
    block = np.zeros((size, size))
    for n, e in enumerate(off):
        if n % 2:
            block[n // 2, n // 2 + 1] = e
        else:
            block[n // 2, n // 2] = e
    return block


def _null_mode_vector(off: np.ndarray) -> np.ndarray:
    """The x = 0 eigenvector of an odd-dimensional Q, from g_(n+2) = -(e_n / e_(n+1)) g_n"""
    dim = len(off) + 1
    logs = np.zeros(dim)
    signs = np.zeros(dim)
    signs[0] = 1.0
    for n in range(0, dim - 2, 2):
        logs[n + 2] = logs[n] + math.log(off[n]) - math.log(off[n + 1])
        signs[n + 2] = -signs[n]
    vector = signs * np.exp(logs - logs[::2].max())
    return vector / np.linalg.norm(vector)


def _eigenvalues_above(x: float, off: np.ndarray, size: int) -> int:
    """Sturm count of the eigenvalues of the leading size x size block of Q above x"""
    below = 0
    pivot = 1.0
    tiny = sys.float_info.min / sys.float_info.epsilon
    for k in range(size):
        pivot = -x - (off[k - 1] ** 2 / pivot if k else 0.0)
        if pivot == 0.0:
            pivot = -tiny
        below += pivot < 0
    return size - below


def _column_sign(column: np.ndarray, x: float, off: np.ndarray) -> float:
    """
    The sign that makes the ground-mode component of an eigenvector positive.

    Components follow g_n = det(x - Q_n) / (e_0 ... e_(n-1)) g_0 for the leading
    blocks Q_n, so the sign of g_n / g_0 is (-1) to the number of eigenvalues of Q_n
    above x. The largest component decides, the ground component may be far below
    rounding.
    """
    n = int(np.argmax(np.abs(column)))
    expected = -1.0 if _eigenvalues_above(x, off, n) % 2 else 1.0
    return expected * np.sign(column[n])


def _eigen_table(irrep: Irrep, qp: QParam) -> np.ndarray:
    """
    Eigenvectors of the tridiagonal Q through the singular value decomposition of
    its odd-even bidiagonal block.

    The bidiagonal SVD keeps the relative accuracy of the strongly graded entries
    that a tridiagonal eigensolver loses. The negative positions are the parity
    images of the positive ones, so Phi_n(x_-s) = (-1)^n Phi_n(x_s) holds exactly.
    """
    if irrep.dim == 1:
        return np.ones((1, 1))
    off = _ladder_offdiagonal(irrep, qp)
    block = _odd_even_block(off)
    odd, sigma, even = linalg.svd(block, lapack_driver="gesvd")
    half = irrep.dim // 2
    phi = np.zeros((irrep.dim, irrep.dim))
    signs = np.array([(-1.0) ** n for n in range(irrep.dim)])
    for rank in range(half):
        # singular values descend, positions ascend
        column = np.zeros(irrep.dim)
        column[0::2] = even[rank]
        column[1::2] = odd[:half, rank]
        column /= np.linalg.norm(column)
        column *= _column_sign(column, sigma[rank], off)
        phi[:, irrep.dim - 1 - rank] = column
        phi[:, rank] = signs * column
    if irrep.dim % 2:
        phi[:, half] = _null_mode_vector(off)
    return phi


def wave_table(irrep: Irrep, qp: QParam, method: str = "auto") -> WaveTable:
    """
    The real orthogonal matrix of wavefunctions Phi_n(x_s).

    ``formula`` sums the dual q-Kravchuk series, ``eigen`` diagonalises the
    tridiagonal position operator, and ``auto`` takes the exact sums at q = 1 up to
    2j = CLASSICAL_FORMULA_MAX_TWOJ, the eigenvectors otherwise.

    :raise DomainError: on an unknown method
    """
    if method not in TABLE_METHODS:
        raise DomainError(f"unknown wave table method {method!r}, expected one of {TABLE_METHODS}")
    if method == "auto":
        method = "formula" if qp.is_classical and irrep.twoj <= CLASSICAL_FORMULA_MAX_TWOJ else "eigen"
    logger.debug("Building %s wave table for 2j = %d, q = %s", method, irrep.twoj, qp.q)
    phi = _formula_table(irrep, qp) if method == "formula" else _eigen_table(irrep, qp)
    return WaveTable(irrep, qp, phi, method)


def position_eigvec_product_form(twos: int, irrep: Irrep, qp: QParam) -> np.ndarray:
    """
    Mode-basis coefficients of g_s from its product form

        g_s(x) = gamma_s (q^((1-2j)/4) x;q)_(j-s) (-q^((1-2j)/4) x;q)_(j+s)

    expanded in powers of x and divided by the constants of the monomial basis
    f_m(x) = q^((m^2 - j^2)/4) sqrt([2j, j+m]_q) x^(j+m).

    :raise DomainError: for 2j above PRODUCT_FORM_MAX_TWOJ or an invalid position
    """
    if irrep.twoj > PRODUCT_FORM_MAX_TWOJ:
        raise DomainError(
            f"product form expansion is limited to 2j <= {PRODUCT_FORM_MAX_TWOJ}, got {irrep.twoj}"
        )
    xi = _xi(twos, irrep)
    with mpmath.workdps(PRODUCT_FORM_DIGITS):
        a = mpmath.mpf(qp.power(0.25 * (1 - irrep.twoj)))
        q = mpmath.mpf(qp.q)
        roots = [a * q ** k for k in range(xi)] + [-a * q ** k for k in range(irrep.twoj - xi)]
        expansion = [mpmath.mpf(1)]
        for root in roots:
            # multiply by (1 - root x)
            expansion = [c - root * b for c, b in zip(expansion + [0], [0] + expansion)]
        coefficients = np.array([float(c) for c in expansion])
    gamma = gamma_vector(irrep, qp).gamma[irrep.index_of_twos(twos)]
    m = algebra.m_values(irrep)
    j = irrep.j
    basis = np.array(
        [
            qp.power(0.25 * (m[n] ** 2 - j * j)) * math.sqrt(qcore.q_binomial(irrep.twoj, n, qp).value)
            for n in range(irrep.dim)
        ]
    )
    return gamma * coefficients / basis


def verify_oscillator(irrep: Irrep, qp: QParam, tol: float = 1e-10, method: str = "auto") -> util.Report:
    """
    Orthogonality, completeness, parity and the eigen-equation of the wave table,
    plus its agreement with gamma and with the product form where that is available
    """
    logger.info("Verifying wavefunctions for 2j = %d, q = %s ...", irrep.twoj, qp.q)
    report = util.Report(f"oscillator 2j={irrep.twoj} q={qp.q!r}")
    table = wave_table(irrep, qp, method)
    phi = table.phi
    identity = np.eye(irrep.dim)
    report.notes.append(f"wave table method: {table.method}")
    report.add("orthonormality", util.max_abs(phi.T @ phi - identity), tol)
    report.add("completeness", util.max_abs(phi @ phi.T - identity), tol)
    signs = np.array([(-1) ** n for n in range(irrep.dim)])[:, np.newaxis]
    report.add("parity", util.max_abs(phi[:, ::-1] - signs * phi), tol)

    ops = algebra.position_momentum_hamiltonian(irrep, qp)
    x = algebra.algebraic_spectrum(irrep, qp)
    eigen = ops.Q.entries.real @ phi - phi * x[np.newaxis, :]
    report.add("Q g_s = x_s g_s", util.max_abs(eigen) / max(1.0, util.max_abs(x)), tol)

    gamma = gamma_vector(irrep, qp).gamma
    report.add("ground state is gamma", util.max_abs(phi[0] - gamma), tol)
    report.add("ground state positive", max(0.0, -float(np.min(phi[0]))), tol)
    if irrep.twoj <= PRODUCT_FORM_MAX_TWOJ:
        product = np.column_stack(
            [position_eigvec_product_form(twos, irrep, qp) for twos in irrep.twos_values]
        )
        report.add("product form", util.max_abs(product - phi), tol)
    return report
