"""
Scaled position and momentum of growing representations, and how their low modes
approach the q-oscillator algebra
"""
import logging
import math
from typing import Any, Callable, Dict, List, Sequence

import dataclasses
import numpy as np

from qosc import DomainError, Irrep, QParam, algebra, qcore, util

logger = logging.getLogger(__name__)

#: a deviation may grow by this factor from one representation to the next and still count as falling
TREND_SLACK = 1.1
#: largest deviation accepted at the last representation of a sequence
FINAL_DEVIATION = 0.05
#: rises below this size are rounding, not growth
TREND_NOISE = 1e-12

DEVIATIONS = (
    "commutator_formal",
    "commutator_limit",
    "raising_formal",
    "raising_limit",
    "ladder_formal",
    "ladder_limit",
)


def scale_factor(irrep: Irrep, qp: QParam) -> float:
    """
    w_j = q^((j+1/2)/2) / sqrt(x_j), which is 1/sqrt(j) at q = 1

    :raise DomainError: for the trivial representation, where x_j = 0
    """
    if irrep.twoj == 0:
        raise DomainError("the scale factor needs 2j >= 1, x_j vanishes for 2j = 0")
    return qp.power(0.5 * (irrep.j + 0.5)) / math.sqrt(0.5 * qcore.q_number(irrep.twoj, qp))


def asymptotic_bound(qp: QParam) -> float:
    """1/sqrt(2(1/q - 1)), the limit of w_j x_j; infinite at q = 1"""
    if qp.is_classical:
        return math.inf
    return 1.0 / math.sqrt(2.0 * math.expm1(qp.kappa))


@dataclasses.dataclass(eq=False)
class ScaledOperators:
    irrep: Irrep
    qp: QParam
    w: float
    Qj: algebra.OperatorMatrix
    Pj: algebra.OperatorMatrix
    H: algebra.OperatorMatrix

    @property
    def raising(self) -> algebra.OperatorMatrix:
        """A+ = Qj - i Pj"""
        return self.Qj - 1j * self.Pj

    @property
    def lowering(self) -> algebra.OperatorMatrix:
        return self.Qj + 1j * self.Pj


def scaled_ops(irrep: Irrep, qp: QParam) -> ScaledOperators:
    w = scale_factor(irrep, qp)
    ops = algebra.position_momentum_hamiltonian(irrep, qp)
    return ScaledOperators(irrep, qp, w, w * ops.Q, w * ops.P, ops.H)


def formal_commutator(n: int, qp: QParam) -> float:
    """q^n, the formal limit of <n|[Qj, Pj]|n> / i"""
    return qp.power(n)


def limit_commutator(n: int, qp: QParam) -> float:
    """(1 + q) q^(2n) - q^n, what <n|[Qj, Pj]|n> / i approaches as j grows"""
    return (1 + qp.q) * qp.power(2 * n) - qp.power(n)


def formal_raising(n: int, qp: QParam) -> float:
    return math.sqrt(qcore.q_brace_number(n + 1, qp))


def limit_raising(n: int, qp: QParam) -> float:
    """sqrt(2 q^(n+1) {n+1}_q), the large-j limit of <n+1|A+|n>"""
    return math.sqrt(2 * qp.power(n + 1) * qcore.q_brace_number(n + 1, qp))


def formal_ladder(n: int, qp: QParam) -> float:
    return 1.0


def limit_ladder(n: int, qp: QParam) -> float:
    """2 q^(2n+1), the large-j limit of <n|A- A+ - q A+ A-|n>"""
    return 2 * qp.power(2 * n + 1)


def _targets(target: Callable[[int, QParam], float], n_max: int, qp: QParam) -> np.ndarray:
    return np.array([target(n, qp) for n in range(n_max + 1)])


@dataclasses.dataclass()
class ContractionRow:
    twoj: int
    w: float
    bound: float
    hamilton: float
    deviations: Dict[str, float]


def contraction_row(irrep: Irrep, qp: QParam, n_max: int) -> ContractionRow:
    """
    Deviations of the low-mode block n <= n_max from the formal and the limit targets

    :raise DomainError: if the block does not fit, 2j < 2 n_max + 2
    """
    if n_max < 0 or irrep.twoj < 2 * n_max + 2:
        raise DomainError(f"a low-mode block with n_max = {n_max} needs 2j >= {2 * n_max + 2}, got {irrep.twoj}")
    ops = scaled_ops(irrep, qp)
    block = slice(0, n_max + 1)
    comm = algebra.commutator(ops.Qj, ops.Pj).entries[block, block]
    raising = np.array([ops.raising.entries[n + 1, n] for n in range(n_max + 1)])
    lowering = ops.lowering
    ladder = (lowering @ ops.raising - qp.q * (ops.raising @ lowering)).entries[block, block]

    deviations = {}
    for name, target in (("formal", formal_commutator), ("limit", limit_commutator)):
        deviations[f"commutator_{name}"] = util.max_abs(comm - 1j * np.diag(_targets(target, n_max, qp)))
    for name, target in (("formal", formal_raising), ("limit", limit_raising)):
        deviations[f"raising_{name}"] = util.max_abs(raising - _targets(target, n_max, qp))
    for name, target in (("formal", formal_ladder), ("limit", limit_ladder)):
        deviations[f"ladder_{name}"] = util.max_abs(ladder - np.diag(_targets(target, n_max, qp)))

    hamilton = max(
        (algebra.commutator(ops.H, ops.Qj) + 1j * ops.Pj).norm(),
        (algebra.commutator(ops.H, ops.Pj) - 1j * ops.Qj).norm(),
    )
    bound = ops.w * 0.5 * qcore.q_number(irrep.twoj, qp)
    logger.debug("2j = %d: w = %s, deviations %s", irrep.twoj, ops.w, deviations)
    return ContractionRow(irrep.twoj, ops.w, bound, hamilton, deviations)


def _trend_excess(values: Sequence[float]) -> float:
    """How far a sequence rises above the allowed slack, zero for a falling one"""
    return max([0.0] + [later - TREND_SLACK * earlier for earlier, later in zip(values, values[1:])])


@dataclasses.dataclass()
class ContractionReport(util.Tabular):
    """Per-representation deviations of the scaled low modes from the q-oscillator algebra"""

    qp: QParam
    n_max: int
    rows_: List[ContractionRow] = dataclasses.field(default_factory=list)

    @property
    def twoj_list(self) -> List[int]:
        return [row.twoj for row in self.rows_]

    def deviation(self, name: str) -> List[float]:
        return [row.deviations[name] for row in self.rows_]

    def checks(self) -> util.Report:
        """
        Trend and threshold acceptance on the limit deviations; the formal ones are
        informational, and so is the threshold at q = 1 where deviations fall like n/j
        """
        report = util.Report(f"contraction q={self.qp.q!r} n_max={self.n_max}")
        classical = self.qp.is_classical
        for name in ("commutator", "raising", "ladder"):
            limit = self.deviation(f"{name}_limit")
            report.add(f"{name} trend", _trend_excess(limit), TREND_NOISE)
            report.add(f"{name} final deviation", limit[-1], FINAL_DEVIATION, informational=classical)
            formal = self.deviation(f"{name}_formal")
            report.add(f"{name} formal deviation", formal[-1], FINAL_DEVIATION, informational=True)
        report.add("scaled Hamilton equations", max(row.hamilton for row in self.rows_), 1e-12)
        if not self.qp.is_classical:
            asymptote = asymptotic_bound(self.qp)
            report.add("finite bound", max(0.0, max(row.bound for row in self.rows_) / asymptote - 1.0), 1e-12)
        return report

    @property
    def passed(self) -> bool:
        return self.checks().passed

    def header(self) -> List[str]:
        return ["twoj", "w", "bound", "hamilton"] + list(DEVIATIONS)

    def rows(self) -> List[List[Any]]:
        return [
            [row.twoj, row.w, row.bound, row.hamilton] + [row.deviations[d] for d in DEVIATIONS]
            for row in self.rows_
        ]

    def comments(self) -> List[str]:
        return [
            f"contraction q={self.qp.q!r} n_max={self.n_max}",
            "formal targets: [Q,P] = i q^n, <n+1|A+|n> = sqrt({n+1}_q), A-A+ - qA+A- = 1",
            "limit targets: [Q,P] = i((1+q)q^2n - q^n), <n+1|A+|n> = sqrt(2q^(n+1){n+1}_q), A-A+ - qA+A- = 2q^(2n+1)",
            f"acceptance: limit deviations fall within {TREND_SLACK} slack and end below {FINAL_DEVIATION}",
        ]


def contraction_report(twoj_list: Sequence[int], qp: QParam, n_max: int = 2) -> ContractionReport:
    """
    :param twoj_list: increasing representation sizes, each at least 2 n_max + 2
    :raise DomainError: on an empty list or a block that does not fit
    """
    if not twoj_list:
        raise DomainError("the contraction needs at least one representation")
    logger.info("Contracting q = %s over 2j in %s ...", qp.q, list(twoj_list))
    report = ContractionReport(qp, n_max)
    for twoj in sorted(twoj_list):
        report.rows_.append(contraction_row(Irrep(twoj), qp, n_max))
    return report


@dataclasses.dataclass()
class BoundTable(util.Tabular):
    qp: QParam
    twoj_list: List[int]
    bounds: List[float]

    @property
    def asymptote(self) -> float:
        return asymptotic_bound(self.qp)

    def gaps(self) -> List[float]:
        return [b / self.asymptote - 1.0 for b in self.bounds]

    def header(self) -> List[str]:
        return ["twoj", "bound", "asymptote", "relative_gap"]

    def rows(self) -> List[List[Any]]:
        return [[twoj, b, self.asymptote, gap] for twoj, b, gap in zip(self.twoj_list, self.bounds, self.gaps())]


def bound_table(twoj_list: Sequence[int], qp: QParam) -> BoundTable:
    """
    w_j x_j against its limit 1/sqrt(2(1/q - 1))

    :raise DomainError: at q = 1, where the position interval is unbounded
    """
    if qp.is_classical:
        raise DomainError("the scaled position interval grows without bound at q = 1")
    twoj_list = sorted(twoj_list)
    bounds = [scale_factor(Irrep(twoj), qp) * 0.5 * qcore.q_number(twoj, qp) for twoj in twoj_list]
    return BoundTable(qp, twoj_list, bounds)
