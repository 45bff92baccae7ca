"""
The fractional Fourier-q-Kravchuk transform of finite signals
"""
import cmath
import itertools
import logging
import math
from typing import Any, List, Optional, Sequence

import dataclasses
import numpy as np
from scipy import linalg

from qosc import DimensionMismatch, DomainError, Irrep, QParam, algebra, oscillator, qcore, util

logger = logging.getLogger(__name__)

#: the closed form is a cross-check for small representations only
CLOSED_FORM_MAX_TWOJ = 8
#: tolerance between the closed form and the spectral kernel
CLOSED_FORM_TOL = 1e-8

DEFAULT_POWERS = (0.1, 0.5, 1.0, 1.9, 3.3)
CLOSED_FORM_POWERS = (0.3, 1.0, 2.7)


@dataclasses.dataclass(eq=False)
class Kernel(util.Tabular):
    """
    matrix[r, c] = K_(s, s') for positions s, s' in ascending order.

    ``degenerate`` names the special handling the closed form needed, if any.
    """

    irrep: Irrep
    qp: QParam
    a: float
    matrix: np.ndarray
    method: str = "spectral"
    degenerate: Optional[str] = None

    def header(self) -> List[str]:
        columns = ["twos"]
        for twos in self.irrep.twos_values:
            columns += [f"re[{twos}]", f"im[{twos}]"]
        return columns

    def rows(self) -> List[List[Any]]:
        return [
            [twos] + util.complex_columns(self.matrix[i])
            for i, twos in enumerate(self.irrep.twos_values)
        ]

    def comments(self) -> List[str]:
        notes = [
            f"kernel 2j={self.irrep.twoj} q={self.qp.q!r} a={self.a!r} method={self.method}",
            "rows: position twos ascending; columns: (re, im) pairs for twos' ascending",
        ]
        if self.degenerate:
            notes.append(f"degenerate: {self.degenerate}")
        return notes


@dataclasses.dataclass(eq=False)
class Signal(util.Tabular):
    """Complex samples at the sensor points, twos ascending"""

    irrep: Irrep
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.irrep.dim,):
            raise DimensionMismatch(
                f"signal has {self.values.size} samples, the 2j = {self.irrep.twoj} "
                f"representation needs {self.irrep.dim}"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def header(self) -> List[str]:
        return ["twos", "re", "im"]

    def rows(self) -> List[List[Any]]:
        return [
            [twos, float(v.real), float(v.imag)]
            for twos, v in zip(self.irrep.twos_values, self.values)
        ]

    def comments(self) -> List[str]:
        return ["rows: position twos ascending"]


def reduce_power(a: float) -> float:
    """a mod 4 in [0, 4); the kernel is periodic with period 4"""
    reduced = math.fmod(a, 4.0)
    if reduced < 0:
        reduced += 4.0
    return 0.0 if reduced == 4.0 else reduced


def mode_phases(irrep: Irrep, a: float) -> np.ndarray:
    """e^(-i pi n a / 2) for n = 0..2j"""
    return np.exp(-0.5j * math.pi * np.arange(irrep.dim) * reduce_power(a))


def kernel_spectral(irrep: Irrep, qp: QParam, a: float, table: Optional[oscillator.WaveTable] = None) -> Kernel:
    """
    K = Phi^T diag(e^(-i pi n a / 2)) Phi from the wave table

    :param irrep: the representation
    :param qp: deformation parameter
    :param a: fractional power, any real number
    :param table: a wave table to reuse, built when not given
    """
    if reduce_power(a) == 0.0:
        return Kernel(irrep, qp, a, np.eye(irrep.dim, dtype=complex))
    if table is None:
        table = oscillator.wave_table(irrep, qp)
    phi = table.phi
    matrix = phi.T @ (mode_phases(irrep, a)[:, np.newaxis] * phi)
    return Kernel(irrep, qp, a, matrix)


def _power_of_t(sign: int, exponent: float, t: complex, qp: QParam) -> complex:
    return sign * qp.power(exponent) * t


def beta_finite(twos: int, twos_prime: int, irrep: Irrep, qp: QParam, t: complex) -> complex:
    """
    Prefactor of the closed-form kernel as a ratio of finite products

        (q^(s-j) t;q)_(j-s') (q^(s'-j) t;q)_(j-s) (-q^(-j-s') t;q)_(j-s)
            (-q^(-j-s) t;q)_(j+2s+s') / (-q^(-2j) t;q)_2j

    The last length in the numerator is negative for some positions and is then
    the reciprocal product (z;q)_(-n) = 1/(z q^(-n);q)_n.
    """
    j, s, sp = irrep.j, twos / 2, twos_prime / 2
    xi, xi_prime = (irrep.twoj - twos) // 2, (irrep.twoj - twos_prime) // 2
    numerator = (
        qcore.q_pochhammer(_power_of_t(1, s - j, t, qp), qp, xi_prime)
        * qcore.q_pochhammer(_power_of_t(1, sp - j, t, qp), qp, xi)
        * qcore.q_pochhammer(_power_of_t(-1, -j - sp, t, qp), qp, xi)
        * qcore.q_pochhammer_general(
            _power_of_t(-1, -j - s, t, qp), qp, (irrep.twoj + 2 * twos + twos_prime) // 2
        )
    )
    return numerator / qcore.q_pochhammer(_power_of_t(-1, -irrep.twoj, t, qp), qp, irrep.twoj)


def beta_infinite(twos: int, twos_prime: int, irrep: Irrep, qp: QParam, t: complex) -> complex:
    """The same prefactor as a ratio of ten truncated infinite products"""
    j, s, sp = irrep.j, twos / 2, twos_prime / 2
    top = [
        _power_of_t(1, s - j, t, qp),
        _power_of_t(-1, -j - s, t, qp),
        _power_of_t(1, sp - j, t, qp),
        _power_of_t(-1, -j - sp, t, qp),
        -t,
    ]
    bottom = [
        _power_of_t(1, s - sp, t, qp),
        _power_of_t(-1, s + sp, t, qp),
        _power_of_t(1, sp - s, t, qp),
        _power_of_t(-1, -s - sp, t, qp),
        _power_of_t(-1, -irrep.twoj, t, qp),
    ]
    value = complex(1.0)
    for z in top:
        value *= qcore.q_pochhammer_infinite(z, qp)[0]
    for z in bottom:
        value /= qcore.q_pochhammer_infinite(z, qp)[0]
    return value


def kernel_series_parameters(twos: int, twos_prime: int, irrep: Irrep, qp: QParam, t: complex) -> List[complex]:
    """(a, b, c, d, e, f, z) of the very-well-poised series in a kernel element"""
    j, s, sp = irrep.j, twos / 2, twos_prime / 2
    return [
        _power_of_t(-1, -irrep.twoj - 1, t, qp),
        qp.power(s - j),
        -qp.power(-j - s),
        qp.power(sp - j),
        -qp.power(-j - sp),
        -t,
        -t,
    ]


def _closed_form_matrix(irrep: Irrep, qp: QParam, t: complex, beta: str, series: str) -> np.ndarray:
    gamma = oscillator.gamma_vector(irrep, qp).gamma
    beta_of = beta_finite if beta == "finite" else beta_infinite
    matrix = np.zeros((irrep.dim, irrep.dim), dtype=complex)
    for (r, twos), (c, twos_prime) in itertools.product(enumerate(irrep.twos_values), repeat=2):
        a, b, cc, d, e, f, z = kernel_series_parameters(twos, twos_prime, irrep, qp, t)
        if series == "watson":
            w = qcore.watson_reduction(a, b, cc, d, e, f, qp, z)
        else:
            w = qcore.w8_7(a, b, cc, d, e, f, qp, z)
        matrix[r, c] = gamma[r] * gamma[c] * beta_of(twos, twos_prime, irrep, qp, t) * w
    return matrix


def kernel_closed_form(
    irrep: Irrep, qp: QParam, a: float, beta: str = "finite", series: str = "w87"
) -> Kernel:
    """
    Kernel elements gamma_s gamma_s' beta_(s,s')(t) 8W7(-q^(-2j-1) t; q^(s-j), -q^(-j-s),
    q^(s'-j), -q^(-j-s'), -t; q, -t) with t = e^(-i pi a / 2).

    At t = 1 the products degenerate and the identity is returned. At t = -1 the
    vanishing prefactors cancel against the series and the kernel is the parity
    matrix delta_(s,-s'). At q = 1 the little-d limit is used. Each case is named in ``degenerate``.

    :param beta: "finite" or "infinite" product form of the prefactor
    :param series: "w87" sums the series directly, "watson" through the balanced 4phi3
    :raise NonTerminatingSeries: propagated from the series evaluation
    """
    if beta not in ("finite", "infinite") or series not in ("w87", "watson"):
        raise DomainError(f"unknown closed form variant beta={beta!r} series={series!r}")
    reduced = reduce_power(a)
    if reduced == 0.0:
        return Kernel(irrep, qp, a, np.eye(irrep.dim, dtype=complex), "closed", "t = 1: identity")
    if qp.is_classical:
        return Kernel(irrep, qp, a, kernel_limit(irrep, a).matrix, "closed", "q = 1: little-d limit")
    method = f"closed/{beta}/{series}"
    if reduced == 2.0:
        return Kernel(irrep, qp, a, parity_matrix(irrep).astype(complex), method, "t = -1: parity")
    t = cmath.exp(-0.5j * math.pi * reduced)
    return Kernel(irrep, qp, a, _closed_form_matrix(irrep, qp, t, beta, series), method)


def wigner_little_d(twoj: int, twos: int, twos_prime: int, beta: float) -> float:
    """
    Wigner little-d function d^j_(s, s')(beta),

        sqrt((j+s)! (j-s)! (j+s')! (j-s')!) sum_k (-1)^(s-s'+k)
            cos(beta/2)^(2j+s'-s-2k) sin(beta/2)^(s-s'+2k)
            / ((j+s'-k)! k! (s-s'+k)! (j-s-k)!)

    :raise DomainError: on positions outside the representation
    """
    irrep = Irrep(twoj)
    irrep.check_twos(twos)
    irrep.check_twos(twos_prime)
    jp, jm = (twoj + twos) // 2, (twoj - twos) // 2
    kp, km = (twoj + twos_prime) // 2, (twoj - twos_prime) // 2
    shift = (twos - twos_prime) // 2
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    total = 0.0
    for k in range(max(0, -shift), min(kp, jm) + 1):
        total += (
            (-1) ** ((shift + k) % 2)
            * c ** (kp + jm - 2 * k)
            * s ** (shift + 2 * k)
            / (math.factorial(kp - k) * math.factorial(k) * math.factorial(shift + k) * math.factorial(jm - k))
        )
    norm = math.factorial(jp) * math.factorial(jm) * math.factorial(kp) * math.factorial(km)
    return math.sqrt(norm) * total


def wigner_little_d_matrix(twoj: int, beta: float) -> np.ndarray:
    twos_values = Irrep(twoj).twos_values
    return np.array([[wigner_little_d(twoj, r, c, beta) for c in twos_values] for r in twos_values])


def kernel_limit(irrep: Irrep, a: float) -> Kernel:
    """The q = 1 kernel e^(-i pi j a/2) (-i)^(s-s') d^j_(s,s')(pi a / 2)"""
    d = wigner_little_d_matrix(irrep.twoj, 0.5 * math.pi * a)
    twos = np.array(irrep.twos_values)
    shift = (twos[:, np.newaxis] - twos[np.newaxis, :]) // 2
    phases = np.power(-1j, shift % 4) * cmath.exp(-0.5j * math.pi * irrep.j * a)
    return Kernel(irrep, QParam(1.0), a, phases * d, "little-d")


def apply(kernel: Kernel, signal: Signal) -> Signal:
    """
    The transformed signal sum_s' K_(s,s') Phi(x_s')

    :raise DimensionMismatch: if kernel and signal have different sizes
    """
    if kernel.irrep.dim != signal.irrep.dim:
        raise DimensionMismatch(
            f"kernel of dimension {kernel.irrep.dim} applied to a signal of {signal.irrep.dim} samples"
        )
    return Signal(signal.irrep, kernel.matrix @ signal.values)


def momentum_eigvecs(irrep: Irrep, qp: QParam, table: Optional[oscillator.WaveTable] = None) -> np.ndarray:
    """Columns are the momentum eigenvectors K_q g_r in the mode basis, P v_r = -Y_r v_r"""
    if table is None:
        table = oscillator.wave_table(irrep, qp)
    return mode_phases(irrep, 1.0)[:, np.newaxis] * table.phi


def transformed_modes(irrep: Irrep, qp: QParam, a: float, table: Optional[oscillator.WaveTable] = None) -> np.ndarray:
    """Rows are the modes after the transform, e^(-i pi n a / 2) Phi_n(x_s)"""
    if table is None:
        table = oscillator.wave_table(irrep, qp)
    return mode_phases(irrep, a)[:, np.newaxis] * table.phi


def evolution_operator(irrep: Irrep, tau: float) -> algebra.OperatorMatrix:
    """exp(i tau H) in the mode basis"""
    energies = np.arange(irrep.dim) + 0.5
    return algebra.OperatorMatrix(irrep, linalg.expm(1j * tau * np.diag(energies)))


def parity_matrix(irrep: Irrep) -> np.ndarray:
    """s -> -s on signals"""
    return np.fliplr(np.eye(irrep.dim))


def _unitarity(matrix: np.ndarray) -> float:
    return util.max_abs(matrix @ matrix.conj().T - np.eye(matrix.shape[0]))


def verify_transform(
    irrep: Irrep, qp: QParam, tol: float = 1e-10, powers: Sequence[float] = DEFAULT_POWERS
) -> util.Report:
    """
    Unitarity, group law, periodicity, the metaplectic sign and parity of the kernel,
    the momentum eigenbasis, and the closed form against the spectral kernel
    """
    logger.info("Verifying transform for 2j = %d, q = %s ...", irrep.twoj, qp.q)
    report = util.Report(f"transform 2j={irrep.twoj} q={qp.q!r}")
    table = oscillator.wave_table(irrep, qp)
    kernels = {a: kernel_spectral(irrep, qp, a, table).matrix for a in powers}

    report.add("unitarity", max(_unitarity(k) for k in kernels.values()), tol)
    report.add(
        "group law",
        max(
            util.max_abs(kernels[a1] @ kernels[a2] - kernel_spectral(irrep, qp, a1 + a2, table).matrix)
            for a1, a2 in itertools.product(powers, repeat=2)
        ),
        tol,
    )
    report.add(
        "periodicity",
        max(util.max_abs(kernel_spectral(irrep, qp, a + 4, table).matrix - kernels[a]) for a in powers),
        tol,
    )
    fourier = kernel_spectral(irrep, qp, 1.0, table).matrix
    report.add("K^4 = 1", util.max_abs(np.linalg.matrix_power(fourier, 4) - np.eye(irrep.dim)), tol)
    report.add(
        "exp(2 pi i H) = -1",
        (evolution_operator(irrep, 2 * math.pi) + algebra.OperatorMatrix.identity(irrep)).norm(),
        tol,
    )
    parity = parity_matrix(irrep)
    report.add("parity commutes", max(util.max_abs(k @ parity - parity @ k) for k in kernels.values()), tol)

    modes = transformed_modes(irrep, qp, 1.0, table)
    report.add("K Phi_n = (-i)^n Phi_n", util.max_abs(table.phi @ fourier.T - modes), tol)

    ops = algebra.position_momentum_hamiltonian(irrep, qp)
    y = algebra.algebraic_spectrum(irrep, qp)
    vectors = momentum_eigvecs(irrep, qp, table)
    report.add(
        "P g~_r = -Y_r g~_r",
        util.max_abs(ops.P.entries @ vectors + vectors * y[np.newaxis, :]) / max(1.0, util.max_abs(y)),
        tol,
    )

    closed_tol = max(tol, CLOSED_FORM_TOL)
    if qp.is_classical:
        report.add(
            "little-d limit",
            max(util.max_abs(kernel_limit(irrep, a).matrix - kernels[a]) for a in powers),
            tol,
        )
    elif irrep.twoj <= CLOSED_FORM_MAX_TWOJ:
        closed = max(
            util.max_abs(kernel_closed_form(irrep, qp, a).matrix - kernel_spectral(irrep, qp, a, table).matrix)
            for a in CLOSED_FORM_POWERS
        )
        report.add("closed form", closed, closed_tol)
        t = cmath.exp(-0.5j * math.pi)
        beta_gap = max(
            abs(beta_finite(r, c, irrep, qp, t) - beta_infinite(r, c, irrep, qp, t))
            / max(1.0, abs(beta_finite(r, c, irrep, qp, t)))
            for r, c in itertools.product(irrep.twos_values, repeat=2)
        )
        report.add("finite and infinite beta", beta_gap, closed_tol)
        watson = max(
            util.max_abs(
                kernel_closed_form(irrep, qp, a, series="watson").matrix
                - kernel_closed_form(irrep, qp, a).matrix
            )
            for a in CLOSED_FORM_POWERS
        )
        report.add("Watson reduction", watson, closed_tol)
    else:
        report.notes.append(f"closed form skipped above 2j = {CLOSED_FORM_MAX_TWOJ}")
    return report
