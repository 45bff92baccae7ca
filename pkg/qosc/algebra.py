"""
Dense matrices of su_q(2) in the standard (mode) basis, the nonstandard position and
momentum operators built from them, and the check suite for their relations.

Rows and columns run over the mode number n = 0..2j, i.e. m = -j..j ascending.
"""
import logging
import math
from typing import Union

import dataclasses
import numpy as np
from scipy import linalg

from qosc import DimensionMismatch, Irrep, QParam, qcore, util

logger = logging.getLogger(__name__)


@dataclasses.dataclass(eq=False)
class OperatorMatrix:
    """A square matrix acting on the 2j+1 dimensional representation space"""

    irrep: Irrep
    entries: np.ndarray

    # numpy scalars on the left defer to __rmul__
    __array_ufunc__ = None

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.entries.shape != (self.irrep.dim, self.irrep.dim):
            raise DimensionMismatch(
                f"matrix of shape {self.entries.shape} does not act on the "
                f"{self.irrep.dim}-dimensional representation"
            )

    def _check(self, other: "OperatorMatrix") -> None:
        if other.irrep.dim != self.irrep.dim:
            raise DimensionMismatch(
                f"operators act on dimensions {self.irrep.dim} and {other.irrep.dim}"
            )

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.irrep, self.entries @ other.entries)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.irrep, self.entries + other.entries)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.irrep, self.entries - other.entries)

    def __mul__(self, scalar: Union[complex, float]) -> "OperatorMatrix":
        return OperatorMatrix(self.irrep, scalar * self.entries)

    __rmul__ = __mul__

    def __neg__(self) -> "OperatorMatrix":
        return OperatorMatrix(self.irrep, -self.entries)

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.irrep, self.entries.conj().T)

    def diagonal(self) -> np.ndarray:
        return np.diag(self.entries).copy()

    def norm(self) -> float:
        """Largest absolute entry"""
        return util.max_abs(self.entries)

    @classmethod
    def diag(cls, irrep: Irrep, values) -> "OperatorMatrix":
        return cls(irrep, np.diag(np.asarray(values, dtype=complex)))

    @classmethod
    def identity(cls, irrep: Irrep) -> "OperatorMatrix":
        return cls(irrep, np.eye(irrep.dim, dtype=complex))


@dataclasses.dataclass(eq=False)
class Generators:
    J3: OperatorMatrix
    Jplus: OperatorMatrix
    Jminus: OperatorMatrix
    J1: OperatorMatrix
    J2: OperatorMatrix


@dataclasses.dataclass(eq=False)
class CasimirResult:
    matrix: OperatorMatrix
    eigenvalue: float


@dataclasses.dataclass(eq=False)
class OscillatorOperators:
    Q: OperatorMatrix
    P: OperatorMatrix
    H: OperatorMatrix


@dataclasses.dataclass()
class AlgebraReport(util.Report):
    """Check suite of the algebra, with the sign found in [Q, P] = sign * i F_q"""

    fq_sign: int = 1


def m_values(irrep: Irrep) -> np.ndarray:
    """J3 eigenvalues m = n - j in mode order"""
    return np.array(irrep.twom_values, dtype=float) / 2


def algebraic_spectrum(irrep: Irrep, qp: QParam) -> np.ndarray:
    """x_s = [2s]_q / 2 for s = -j..j ascending"""
    return np.array([0.5 * qcore.q_number(twos, qp) for twos in irrep.twos_values])


def raising_elements(irrep: Irrep, qp: QParam) -> np.ndarray:
    """Sub-diagonal of J+: <n+1|J+|n> = sqrt([n+1]_q [2j-n]_q)"""
    return np.array(
        [
            math.sqrt(qcore.q_number(n + 1, qp) * qcore.q_number(irrep.twoj - n, qp))
            for n in range(irrep.twoj)
        ]
    )


def standard_generators(irrep: Irrep, qp: QParam) -> Generators:
    """
    J3, J+, J- and J1 = (J+ + J-)/2, J2 = (J+ - J-)/2i on the standard basis

    :param irrep: the representation
    :param qp: deformation parameter
    """
    j3 = OperatorMatrix.diag(irrep, m_values(irrep))
    jplus = OperatorMatrix(irrep, np.diag(raising_elements(irrep, qp), k=-1))
    jminus = jplus.dagger()
    j1 = 0.5 * (jplus + jminus)
    j2 = (jplus - jminus) * (1 / 2j)
    return Generators(J3=j3, Jplus=jplus, Jminus=jminus, J1=j1, J2=j2)


def _q_number_diag(irrep: Irrep, qp: QParam, shift: float, scale: float) -> OperatorMatrix:
    """diag([scale * (m + shift)]_q) over the standard basis"""
    return OperatorMatrix.diag(
        irrep, [qcore.q_number(scale * (m + shift), qp) for m in m_values(irrep)]
    )


def casimir(irrep: Irrep, qp: QParam) -> CasimirResult:
    """
    C_q = J+ J- + [J3 - 1/2]_q^2 - 1/4, with eigenvalue [j + 1/2]_q^2 - 1/4
    """
    gens = standard_generators(irrep, qp)
    shifted = _q_number_diag(irrep, qp, -0.5, 1.0)
    matrix = gens.Jplus @ gens.Jminus + shifted @ shifted - 0.25 * OperatorMatrix.identity(irrep)
    eigenvalue = qcore.q_number(irrep.j + 0.5, qp) ** 2 - 0.25
    return CasimirResult(matrix=matrix, eigenvalue=eigenvalue)


def conjugating_diagonal(irrep: Irrep, qp: QParam) -> np.ndarray:
    """Entries of q^(J3/4)"""
    return np.exp(-0.25 * qp.kappa * m_values(irrep))


def position_momentum_hamiltonian(irrep: Irrep, qp: QParam) -> OscillatorOperators:
    """
    Q = q^(J3/4) J1 q^(J3/4), P = -q^(J3/4) J2 q^(J3/4) and H = J3 + j + 1/2.

    The conjugation is an entrywise scaling by the outer product of q^(m/4).
    """
    gens = standard_generators(irrep, qp)
    d = conjugating_diagonal(irrep, qp)
    scaling = np.outer(d, d)
    q_op = OperatorMatrix(irrep, scaling * gens.J1.entries)
    p_op = OperatorMatrix(irrep, -scaling * gens.J2.entries)
    h_op = OperatorMatrix.diag(irrep, np.arange(irrep.dim) + 0.5)
    return OscillatorOperators(Q=q_op, P=p_op, H=h_op)


def naive_position_momentum(irrep: Irrep, qp: QParam) -> OscillatorOperators:
    """The plain choice Q = J1, P = -J2; Hamilton equations hold but the spectrum is not x_s"""
    gens = standard_generators(irrep, qp)
    h_op = OperatorMatrix.diag(irrep, np.arange(irrep.dim) + 0.5)
    return OscillatorOperators(Q=gens.J1, P=-gens.J2, H=h_op)


def fq_diagonal(irrep: Irrep, qp: QParam) -> np.ndarray:
    """
    Diagonal of F_q in the standard basis,

        (e^(-2m kappa) cosh(kappa/2) - e^(-m kappa) cosh((j + 1/2) kappa)) / (2 sinh(kappa/2))

    which tends to -m as q -> 1.
    """
    m = m_values(irrep)
    if qp.is_classical:
        return -m
    k = qp.kappa
    return (np.exp(-2 * m * k) * math.cosh(0.5 * k) - np.exp(-m * k) * math.cosh((irrep.j + 0.5) * k)) / (
        2 * math.sinh(0.5 * k)
    )


def fq_chebyshev_form(irrep: Irrep, qp: QParam) -> np.ndarray:
    """F_q with cosh((j + 1/2) kappa) written as T_(2j+1)(cosh(kappa/2))"""
    m = m_values(irrep)
    if qp.is_classical:
        return -m
    c = math.cosh(0.5 * qp.kappa)
    top = qcore.chebyshev_T(irrep.twoj + 1, c)
    return (np.exp(-2 * m * qp.kappa) * c - np.exp(-m * qp.kappa) * top) / (2 * math.sinh(0.5 * qp.kappa))


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """
    AB - BA

    :raise DimensionMismatch: if the operators act on different dimensions
    """
    return a @ b - b @ a


def phase_space_section(irrep: Irrep, qp: QParam) -> np.ndarray:
    """
    Diagonal of Q^2 + P^2,

        q^m (q^(-1/2) [j+m]_q [j-m+1]_q + q^(1/2) [j+m+1]_q [j-m]_q) / 2

    which is j(j+1) - m^2 at q = 1.
    """
    j = irrep.j
    values = []
    for m in m_values(irrep):
        lower = qcore.q_number(j + m, qp) * qcore.q_number(j - m + 1, qp)
        upper = qcore.q_number(j + m + 1, qp) * qcore.q_number(j - m, qp)
        values.append(0.5 * qp.power(m) * (qp.power(-0.5) * lower + qp.power(0.5) * upper))
    return np.array(values)


def _half_coth_minus_csch(m: float, qp: QParam) -> float:
    """(e^(-m kappa) coth(kappa/2) - csch(kappa/2)) / 2, which is -m at q = 1"""
    if qp.is_classical:
        return -m
    k = qp.kappa
    return 0.5 * (math.exp(-m * k) * math.cosh(0.5 * k) - 1.0) / math.sinh(0.5 * k)


def coth_section(irrep: Irrep, qp: QParam) -> np.ndarray:
    """
    The form ([j+1/2]^2 cosh(kappa/2) - [m-1/2]^2 + (e^(-m kappa) coth(kappa/2)
    - csch(kappa/2))/2) e^(-m kappa) of the section. It agrees with
    ``phase_space_section`` only at q = 1 and is kept for comparison.
    """
    top = qcore.q_number(irrep.j + 0.5, qp) ** 2 * math.cosh(0.5 * qp.kappa)
    return np.array(
        [
            (top - qcore.q_number(m - 0.5, qp) ** 2 + _half_coth_minus_csch(m, qp)) * qp.power(m)
            for m in m_values(irrep)
        ]
    )


def casimir_qp_form(irrep: Irrep, qp: QParam) -> OperatorMatrix:
    """
    sech(kappa/2) (Q^2 + P^2) e^(kappa J3) + D_q(J3), the Casimir rewritten through Q
    and P, with D_q(J3) = sech(kappa/2)([J3-1/2]^2 - (e^(-kappa J3) coth(kappa/2)
    - csch(kappa/2))/2) - 1/4. Only at q = 1 does it reproduce C_q.
    """
    ops = position_momentum_hamiltonian(irrep, qp)
    sech = 1.0 / math.cosh(0.5 * qp.kappa)
    m = m_values(irrep)
    square = ops.Q @ ops.Q + ops.P @ ops.P
    rotated = OperatorMatrix(irrep, square.entries * np.exp(qp.kappa * m)[np.newaxis, :])
    shift = [
        sech * (qcore.q_number(mm - 0.5, qp) ** 2 - _half_coth_minus_csch(mm, qp)) - 0.25 for mm in m
    ]
    return sech * rotated + OperatorMatrix.diag(irrep, shift)


def _scaled(residual: float, scale: float) -> float:
    return residual / max(1.0, scale)


def _off_diagonal(matrix: OperatorMatrix) -> float:
    return util.max_abs(matrix.entries - np.diag(matrix.diagonal()))


def verify_algebra(irrep: Irrep, qp: QParam, tol: float = 1e-10) -> AlgebraReport:
    """
    Check every relation of the algebra and of the oscillator operators numerically.

    Residuals are max-norms, divided by the size of the operators involved when that
    size exceeds one. The coth form of the section and the Casimir through Q, P
    disagree with the matrices for q < 1 and are listed as informational entries.

    :param irrep: the representation
    :param qp: deformation parameter
    :param tol: tolerance every scaled residual has to meet
    :return: the report, with the sign of [Q, P] against i F_q
    """
    logger.info("Verifying algebra for 2j = %d, q = %s ...", irrep.twoj, qp.q)
    report = AlgebraReport(f"algebra 2j={irrep.twoj} q={qp.q!r}")
    gens = standard_generators(irrep, qp)
    ops = position_momentum_hamiltonian(irrep, qp)
    q_norm = max(ops.Q.norm(), 1.0)
    two_m = _q_number_diag(irrep, qp, 0.0, 2.0)

    report.add("[J3,J+] = J+", (commutator(gens.J3, gens.Jplus) - gens.Jplus).norm(), tol)
    report.add("[J3,J-] = -J-", (commutator(gens.J3, gens.Jminus) + gens.Jminus).norm(), tol)
    report.add(
        "[J+,J-] = [2J3]",
        _scaled((commutator(gens.Jplus, gens.Jminus) - two_m).norm(), gens.Jplus.norm() ** 2),
        tol,
    )
    report.add(
        "[J1,J2] = i[2J3]/2",
        _scaled((commutator(gens.J1, gens.J2) - 0.5j * two_m).norm(), gens.Jplus.norm() ** 2),
        tol,
    )
    report.add("[J2,J3] = iJ1", (commutator(gens.J2, gens.J3) - 1j * gens.J1).norm(), tol)
    report.add("[J3,J1] = iJ2", (commutator(gens.J3, gens.J1) - 1j * gens.J2).norm(), tol)

    report.add("[J3,Q] = -iP", _scaled((commutator(gens.J3, ops.Q) + 1j * ops.P).norm(), q_norm), tol)
    report.add("[J3,P] = iQ", _scaled((commutator(gens.J3, ops.P) - 1j * ops.Q).norm(), q_norm), tol)
    report.add("[H,Q] = -iP", _scaled((commutator(ops.H, ops.Q) + 1j * ops.P).norm(), q_norm), tol)
    report.add("[H,P] = iQ", _scaled((commutator(ops.H, ops.P) - 1j * ops.Q).norm(), q_norm), tol)

    qp_comm = commutator(ops.Q, ops.P)
    fq = fq_diagonal(irrep, qp)
    found = (-1j * qp_comm.diagonal()).real
    plus, minus = util.max_abs(found - fq), util.max_abs(found + fq)
    report.fq_sign = 1 if plus <= minus else -1
    report.notes.append(f"[Q,P] = {'+' if report.fq_sign > 0 else '-'}i F_q")
    report.add(
        "[Q,P] = i sign F_q",
        _scaled(max(min(plus, minus), _off_diagonal(qp_comm)), q_norm ** 2),
        tol,
    )
    report.add(
        "F_q Chebyshev form",
        _scaled(util.max_abs(fq_chebyshev_form(irrep, qp) - fq), util.max_abs(fq)),
        tol,
    )

    cas = casimir(irrep, qp)
    identity = OperatorMatrix.identity(irrep)
    report.add(
        "Casimir scalar",
        _scaled((cas.matrix - cas.eigenvalue * identity).norm(), abs(cas.eigenvalue)),
        tol,
    )
    shifted = _q_number_diag(irrep, qp, -0.5, 1.0)
    j1j2_form = gens.J1 @ gens.J1 + gens.J2 @ gens.J2 + shifted @ shifted + 0.5 * two_m - 0.25 * identity
    report.add(
        "Casimir J1,J2 form",
        _scaled((j1j2_form - cas.matrix).norm(), abs(cas.eigenvalue)),
        tol,
    )

    square = ops.Q @ ops.Q + ops.P @ ops.P
    section = phase_space_section(irrep, qp)
    report.add(
        "Q^2+P^2 section",
        _scaled(max(util.max_abs(square.diagonal() - section), _off_diagonal(square)), util.max_abs(section)),
        tol,
    )
    report.add("[J3,Q^2+P^2] = 0", _scaled(commutator(gens.J3, square).norm(), q_norm ** 2), tol)
    report.add(
        "coth form of the section",
        _scaled(util.max_abs(square.diagonal() - coth_section(irrep, qp)), util.max_abs(section)),
        tol,
        informational=True,
    )
    report.add(
        "Casimir through Q,P",
        _scaled((casimir_qp_form(irrep, qp) - cas.eigenvalue * identity).norm(), abs(cas.eigenvalue)),
        tol,
        informational=True,
    )

    jacobi = (
        commutator(ops.Q, commutator(ops.P, ops.H))
        + commutator(ops.P, commutator(ops.H, ops.Q))
        + commutator(ops.H, commutator(ops.Q, ops.P))
    )
    report.add("Jacobi identity", _scaled(jacobi.norm(), q_norm ** 2), tol)

    x = algebraic_spectrum(irrep, qp)
    x_scale = util.max_abs(x)
    report.add(
        "spectrum of Q",
        _scaled(util.max_abs(linalg.eigvalsh(ops.Q.entries) - x), x_scale),
        tol,
    )
    report.add(
        "spectrum of P",
        _scaled(util.max_abs(linalg.eigvalsh(ops.P.entries) - x), x_scale),
        tol,
    )
    logger.info("Algebra checks %s", "passed" if report.passed else "FAILED")
    return report

