"""
Utility functions
"""
import abc
import logging
from typing import Any, Dict, List, Sequence

import dataclasses
import numpy as np

from qosc import DomainError

logger = logging.getLogger(__name__)


class Tabular(abc.ABC):
    """
    Anything the command line can emit: a header, rows of cells, and a JSON form
    """

    @abc.abstractmethod
    def header(self) -> List[str]:
        pass

    @abc.abstractmethod
    def rows(self) -> List[List[Any]]:
        pass

    def comments(self) -> List[str]:
        return []

    def to_json_object(self) -> Dict[str, Any]:
        return {
            "comments": self.comments(),
            "header": self.header(),
            "rows": [[jsonable(cell) for cell in row] for row in self.rows()],
        }

    def __str__(self) -> str:
        lines = ["# " + c for c in self.comments()]
        lines.append(",".join(self.header()))
        for row in self.rows():
            lines.append(",".join(format_cell(cell) for cell in row))
        return "\n".join(lines)


@dataclasses.dataclass()
class Check:
    """One verified relation: the residual it left and the tolerance it had to meet"""

    name: str
    residual: float
    tolerance: float
    informational: bool = False

    @property
    def passed(self) -> bool:
        if self.informational:
            return True
        return bool(np.isfinite(self.residual)) and self.residual <= self.tolerance


@dataclasses.dataclass()
class Report(Tabular):
    """A named collection of checks, as produced by every ``verify_*`` function"""

    title: str
    checks: List[Check] = dataclasses.field(default_factory=list)
    notes: List[str] = dataclasses.field(default_factory=list)

    def add(self, name: str, residual: float, tolerance: float, **kwargs) -> Check:
        check = Check(name, float(residual), float(tolerance), **kwargs)
        self.checks.append(check)
        level = logging.DEBUG if check.passed else logging.WARNING
        logger.log(
            level,
            "%s: %s residual %.3e (tolerance %.1e)",
            self.title,
            name,
            check.residual,
            check.tolerance,
        )
        return check

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def __getitem__(self, name: str) -> Check:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def header(self) -> List[str]:
        return ["suite", "check", "residual", "tolerance", "passed", "informational"]

    def rows(self) -> List[List[Any]]:
        return [
            [self.title, c.name, c.residual, c.tolerance, c.passed, c.informational]
            for c in self.checks
        ]

    def comments(self) -> List[str]:
        return list(self.notes)


def format_cell(cell: Any) -> str:
    """Render one CSV cell; floats use repr so that reading them back is lossless"""
    if isinstance(cell, bool):
        return "true" if cell else "false"
    if isinstance(cell, (float, np.floating)):
        return repr(float(cell))
    if isinstance(cell, (int, np.integer)):
        return str(int(cell))
    return str(cell)


def jsonable(cell: Any) -> Any:
    if isinstance(cell, (bool, np.bool_)):
        return bool(cell)
    if isinstance(cell, (complex, np.complexfloating)):
        return {"re": float(cell.real), "im": float(cell.imag)}
    if isinstance(cell, (float, np.floating)):
        return float(cell)
    if isinstance(cell, (int, np.integer)):
        return int(cell)
    return cell


def complex_columns(values: Sequence[complex]) -> List[float]:
    """Flatten complex values into (re, im) pairs of columns"""
    cells: List[float] = []
    for value in values:
        cells.append(float(np.real(value)))
        cells.append(float(np.imag(value)))
    return cells


def max_abs(matrix: np.ndarray) -> float:
    """The max-norm used by every residual in the package"""
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix)))


def parse_signal(text: str) -> np.ndarray:
    """
    Parse a signal: one sample per line as ``re,im`` (``im`` optional).

    Blank lines and lines starting with ``#`` are skipped.

    :param text: the file contents
    :return: complex sample vector
    :raise DomainError: on a line that is not one or two numbers
    """
    samples = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = [p.strip() for p in stripped.split(",")]
        if len(parts) > 2:
            raise DomainError(f"line {line_number}: expected 're,im', got {line!r}")
        try:
            real = float(parts[0])
            imag = float(parts[1]) if len(parts) == 2 and parts[1] else 0.0
        except ValueError:
            raise DomainError(f"line {line_number}: not a number: {line!r}")
        samples.append(complex(real, imag))
    return np.array(samples, dtype=complex)


def read_signal(file_name: str) -> np.ndarray:
    """
    Read a signal file into a complex vector

    :param file_name: path of the signal file
    :return: complex sample vector
    :raise OSError: on errors opening the file
    """
    logger.info("Reading signal from: %s ...", file_name)
    with open(file_name, "r") as file:
        samples = parse_signal(file.read())
    logger.info("Read %d samples from: %s", len(samples), file_name)
    return samples


def format_signal(values: Sequence[complex]) -> str:
    return "\n".join(
        f"{format_cell(float(np.real(v)))},{format_cell(float(np.imag(v)))}"
        for v in values
    )


class SetGet:
    """
    Defines an interface for setting/getting multiple attributes with keyword arguments
    """

    def set(self, **kwargs):
        for prop_name, prop_val in kwargs.items():
            setattr(self, prop_name, prop_val)

    def get(self, *args):
        return [getattr(self, a) for a in args]
