"""
Equivalent potentials read off nodeless ground states through second differences
on the position grid
"""
import logging
import math
from typing import Any, List

import dataclasses
import numpy as np

from qosc import DomainError, Irrep, QParam, oscillator, qcore, util

logger = logging.getLogger(__name__)


@dataclasses.dataclass(eq=False)
class GroundStateProfile:
    """
    Ground state samples psi(s) = Phi_0(x_s) together with the grid they live on.

    ``outer`` holds the two points x_(-j-1) and x_(j+1) where the continued ground
    state vanishes; ``half_spacings`` are x_(s+1/2) - x_(s-1/2).
    """

    irrep: Irrep
    qp: QParam
    psi: np.ndarray
    grid: oscillator.PositionGrid
    half_spacings: np.ndarray
    outer: np.ndarray

    def __post_init__(self):
        if np.any(self.psi <= 0):
            raise DomainError("ground state samples must be positive to define a potential")
        if np.any(self.half_spacings <= 0):
            raise DomainError("grid half spacings must be positive")


@dataclasses.dataclass(eq=False)
class PotentialTable(util.Tabular):
    profile: GroundStateProfile
    difference: np.ndarray
    closed_form: np.ndarray

    def header(self) -> List[str]:
        return ["twos", "x", "psi", "potential_difference", "potential_closed_form"]

    def rows(self) -> List[List[Any]]:
        return [
            [twos, float(x), float(psi), float(v), float(c)]
            for twos, x, psi, v, c in zip(
                self.profile.irrep.twos_values,
                self.profile.grid.x,
                self.profile.psi,
                self.difference,
                self.closed_form,
            )
        ]

    def comments(self) -> List[str]:
        return [
            f"equivalent potential 2j={self.profile.irrep.twoj} q={self.profile.qp.q!r}",
            "values are V(x_s) - E_0; psi is taken as 0 beyond s = +-j",
            f"acceptable ground state: {is_acceptable_ground_state(self.profile)}",
        ]


def half_spacing(twos: int, qp: QParam) -> float:
    """x_(s+1/2) - x_(s-1/2) from the q-numbers, equal to cosh(s kappa)"""
    return 0.5 * (qcore.q_number(twos + 1, qp) - qcore.q_number(twos - 1, qp))


def ground_state_profile(irrep: Irrep, qp: QParam) -> GroundStateProfile:
    grid = oscillator.position_spectrum(irrep, qp)
    outer = np.array([-0.5 * qcore.q_number(irrep.twoj + 2, qp), 0.5 * qcore.q_number(irrep.twoj + 2, qp)])
    half = np.array([half_spacing(twos, qp) for twos in irrep.twos_values])
    psi = oscillator.gamma_vector(irrep, qp).gamma
    return GroundStateProfile(irrep, qp, psi, grid, half, outer)


def second_difference_potential(x: np.ndarray, psi: np.ndarray, half_spacings: np.ndarray) -> np.ndarray:
    """
    V - E_0 = ((psi(s+1) - psi(s)) / (x_(s+1) - x_s) - (psi(s) - psi(s-1)) / (x_s - x_(s-1)))
              / (2 psi(s) (x_(s+1/2) - x_(s-1/2)))

    :param x: grid including one point on each side beyond the samples of interest
    :param psi: samples on the same grid
    :param half_spacings: one per interior point
    :return: the potential at the interior points
    """
    if len(x) != len(psi) or len(half_spacings) != len(x) - 2:
        raise DomainError(f"grid of {len(x)} points, {len(psi)} samples and {len(half_spacings)} half spacings")
    right = np.diff(psi)[1:] / np.diff(x)[1:]
    left = np.diff(psi)[:-1] / np.diff(x)[:-1]
    return (right - left) / (2.0 * psi[1:-1] * half_spacings)


def equivalent_potential_from_ground_state(profile: GroundStateProfile) -> np.ndarray:
    """V(x_s) - E_0 for every s, with the ground state continued by zero at s = +-(j+1)"""
    x = np.concatenate([profile.outer[:1], profile.grid.x, profile.outer[1:]])
    psi = np.concatenate([[0.0], profile.psi, [0.0]])
    return second_difference_potential(x, psi, profile.half_spacings)


def _check_position(twos: int, twoj: int) -> Irrep:
    irrep = Irrep(twoj)
    irrep.check_twos(twos)
    return irrep


def kravchuk_potential(twos: int, twoj: int) -> float:
    """
    V - E_0 = (sqrt((j+s)(j+s+1)) + sqrt((j-s)(j-s+1))) / (2 sqrt((j+1)^2 - s^2)) - 1
    on the unit-spaced Kravchuk grid
    """
    _check_position(twos, twoj)
    j, s = twoj / 2, twos / 2
    numerator = math.sqrt((j + s) * (j + s + 1)) + math.sqrt((j - s) * (j - s + 1))
    return numerator / (2 * math.sqrt((j + 1) ** 2 - s * s)) - 1.0


def _sinh_ratio(top: float, bottom: float, qp: QParam) -> float:
    if qp.is_classical:
        return top / bottom
    return math.sinh(top * qp.kappa) / math.sinh(bottom * qp.kappa)


def _cosh_ratio(top: float, bottom: float, qp: QParam) -> float:
    return math.cosh(top * qp.kappa) / math.cosh(bottom * qp.kappa)


def ground_state_ratio(twos: int, irrep: Irrep, qp: QParam) -> float:
    """
    psi(s+1) / psi(s) = q^(-s-1/2) sqrt(cosh((s+1) kappa) sinh((j-s) kappa)
                                        / (cosh(s kappa) sinh((j+s+1) kappa)))

    Zero at s = j, where the continued ground state vanishes.
    """
    irrep.check_twos(twos)
    j, s = irrep.j, twos / 2
    inside = _cosh_ratio(s + 1, s, qp) * _sinh_ratio(j - s, j + s + 1, qp)
    return qp.power(-s - 0.5) * math.sqrt(inside)


def q_potential_closed_form(twos: int, irrep: Irrep, qp: QParam) -> float:
    """
    V(x_s) - E_0 on the q-grid:

        (q^s cosh((s+1/2)k)/cosh(sk) sqrt(cosh((s-1)k) sinh((j+s)k) / (cosh(sk) sinh((j-s+1)k)))
         + q^-s cosh((s-1/2)k)/cosh(sk) sqrt(cosh((s+1)k) sinh((j-s)k) / (cosh(sk) sinh((j+s+1)k)))
         - 2 q^(1/2) cosh(k/2)) / (2 q^(1/2) cosh((s+1/2)k) cosh((s-1/2)k))

    At q = 1 this is the Kravchuk potential.
    """
    irrep.check_twos(twos)
    if qp.is_classical:
        return kravchuk_potential(twos, irrep.twoj)
    j, s, kappa = irrep.j, twos / 2, qp.kappa
    up, down = math.cosh((s + 0.5) * kappa), math.cosh((s - 0.5) * kappa)
    centre = math.cosh(s * kappa)
    lower = qp.power(s) * up / centre * math.sqrt(_cosh_ratio(s - 1, s, qp) * _sinh_ratio(j + s, j - s + 1, qp))
    upper = qp.power(-s) * down / centre * math.sqrt(_cosh_ratio(s + 1, s, qp) * _sinh_ratio(j - s, j + s + 1, qp))
    root_q = qp.power(0.5)
    return (lower + upper - 2 * root_q * math.cosh(0.5 * kappa)) / (2 * root_q * up * down)


def is_acceptable_ground_state(profile: GroundStateProfile) -> bool:
    """True when psi rises to a single maximum and falls, i.e. has no raised wings"""
    steps = np.sign(np.diff(profile.psi))
    steps = steps[steps != 0]
    return bool(np.all(np.diff(steps) <= 0))


def harmonic_potential(x: np.ndarray) -> np.ndarray:
    """x^2/2 - 1/2, the continuum potential of the ground state e^(-x^2/2)"""
    return 0.5 * np.asarray(x) ** 2 - 0.5


def potential_table(irrep: Irrep, qp: QParam) -> PotentialTable:
    profile = ground_state_profile(irrep, qp)
    closed = np.array([q_potential_closed_form(twos, irrep, qp) for twos in irrep.twos_values])
    return PotentialTable(profile, equivalent_potential_from_ground_state(profile), closed)


def verify_potential(irrep: Irrep, qp: QParam, tol: float = 1e-9) -> util.Report:
    """
    The half-spacing identity, the ground state ratio against gamma, and the closed
    form potential against the second differences of the ground state
    """
    logger.info("Verifying equivalent potential for 2j = %d, q = %s ...", irrep.twoj, qp.q)
    report = util.Report(f"potential 2j={irrep.twoj} q={qp.q!r}")
    table = potential_table(irrep, qp)
    profile = table.profile
    cosh = np.array([math.cosh(0.5 * twos * qp.kappa) for twos in irrep.twos_values])
    report.add("half spacing = cosh(s kappa)", util.max_abs(profile.half_spacings - cosh), tol)

    if irrep.twoj > 0:
        ratios = np.array([ground_state_ratio(twos, irrep, qp) for twos in irrep.twos_values[:-1]])
        observed = profile.psi[1:] / profile.psi[:-1]
        report.add("ground state ratio", util.max_abs(ratios / observed - 1.0), tol)
        telescoped = float(np.prod(ratios))
        report.add("telescoped ratio", abs(telescoped / (profile.psi[-1] / profile.psi[0]) - 1.0), tol)
    scale = max(1.0, util.max_abs(table.closed_form))
    report.add("closed form potential", util.max_abs(table.closed_form - table.difference) / scale, tol)
    if qp.is_classical:
        kravchuk = np.array([kravchuk_potential(twos, irrep.twoj) for twos in irrep.twos_values])
        report.add("Kravchuk potential", util.max_abs(kravchuk - table.difference), tol)
    report.notes.append(f"acceptable ground state: {is_acceptable_ground_state(profile)}")
    return report
