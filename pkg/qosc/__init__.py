"""
For building and checking the finite q-oscillator: deformation parameter,
representation label, overflow-safe signed logarithms and the errors shared by
every module of the package
"""
import math
import numbers
from typing import Tuple, Union

import dataclasses


class QOscError(Exception):
    """Base class for everything this package raises on purpose"""


class DomainError(QOscError, ValueError):
    """An index or parameter lies outside the range an operation is defined on"""


class DimensionMismatch(QOscError, ValueError):
    """Two operands belong to representations of different dimension"""


class NonTerminatingSeries(QOscError, ArithmeticError):
    """A basic hypergeometric series neither terminates nor converges in budget"""


class UsageError(QOscError):
    """The command line configuration cannot be run"""


@dataclasses.dataclass(frozen=True)
class QParam:
    """
    The deformation parameter q in (0, 1] together with kappa = -ln q.

    q = 1 is the classical flag: code paths test ``is_classical`` rather than
    evaluating removable 0/0 expressions.
    """

    q: float
    kappa: float = dataclasses.field(init=False)

    def __post_init__(self):
        if not isinstance(self.q, numbers.Real) or math.isnan(self.q):
            raise DomainError(f"q must be a real number, got {self.q!r}")
        if self.q <= 0:
            raise DomainError(f"q must be positive, got {self.q}")
        if self.q > 1:
            raise DomainError(
                f"q = {self.q} > 1 is not supported; use q -> 1/q = {1 / self.q:.12g} "
                "together with the reflection J3 -> -J3, which maps the model onto "
                "itself (the ground state of q becomes the top state of 1/q)"
            )
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "kappa", 0.0 if self.q == 1.0 else -math.log(self.q))

    @classmethod
    def from_kappa(cls, kappa: float) -> "QParam":
        return cls(math.exp(-kappa))

    @property
    def is_classical(self) -> bool:
        return self.q == 1.0

    def squared(self) -> "QParam":
        """The parameter q^2, used by the q^2-binomials of the position basis"""
        return QParam(self.q * self.q)

    def power(self, exponent: float) -> float:
        """q raised to ``exponent``, evaluated as exp(-exponent * kappa)"""
        return math.exp(-exponent * self.kappa)


@dataclasses.dataclass(frozen=True)
class Irrep:
    """
    The (2j+1)-dimensional irreducible representation, labelled by twoj = 2j.

    Half-integers are carried doubled everywhere: spin index twom = 2n - twoj for
    mode number n, position index twos in {-twoj, -twoj + 2, ..., twoj}.
    """

    twoj: int

    def __post_init__(self):
        if isinstance(self.twoj, bool) or not isinstance(self.twoj, int):
            raise DomainError(f"twoj must be an integer, got {self.twoj!r}")
        if self.twoj < 0:
            raise DomainError(f"twoj must be non-negative, got {self.twoj}")

    @property
    def dim(self) -> int:
        return self.twoj + 1

    @property
    def j(self) -> float:
        return self.twoj / 2

    @property
    def twom_values(self) -> Tuple[int, ...]:
        """Doubled J3 eigenvalues in mode order, index n <-> m = n - j"""
        return tuple(2 * n - self.twoj for n in range(self.dim))

    @property
    def twos_values(self) -> Tuple[int, ...]:
        """Doubled position labels in ascending order"""
        return self.twom_values

    def check_mode(self, n: int) -> None:
        if not 0 <= n <= self.twoj:
            raise DomainError(f"mode number {n} outside 0..{self.twoj}")

    def check_twos(self, twos: int) -> None:
        if abs(twos) > self.twoj or (twos - self.twoj) % 2 != 0:
            raise DomainError(
                f"twos = {twos} is not a position label of the 2j = {self.twoj} "
                "representation"
            )

    def index_of_twos(self, twos: int) -> int:
        self.check_twos(twos)
        return (twos + self.twoj) // 2


@dataclasses.dataclass(frozen=True)
class LogSigned:
    """
    A real number held as sign and natural log of its magnitude, so that long
    products of q-Pochhammer factors neither overflow nor underflow.
    """

    sign: int
    log_abs: float = 0.0

    @classmethod
    def from_value(cls, value: float) -> "LogSigned":
        if value == 0:
            return cls.zero()
        return cls(1 if value > 0 else -1, math.log(abs(value)))

    @classmethod
    def zero(cls) -> "LogSigned":
        return cls(0, -math.inf)

    @classmethod
    def one(cls) -> "LogSigned":
        return cls(1, 0.0)

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def __mul__(self, other: Union["LogSigned", float]) -> "LogSigned":
        if not isinstance(other, LogSigned):
            other = LogSigned.from_value(other)
        if self.sign == 0 or other.sign == 0:
            return LogSigned.zero()
        return LogSigned(self.sign * other.sign, self.log_abs + other.log_abs)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["LogSigned", float]) -> "LogSigned":
        if not isinstance(other, LogSigned):
            other = LogSigned.from_value(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogSigned value")
        if self.sign == 0:
            return LogSigned.zero()
        return LogSigned(self.sign * other.sign, self.log_abs - other.log_abs)

    def __neg__(self) -> "LogSigned":
        return LogSigned(-self.sign, self.log_abs)

    def sqrt(self) -> "LogSigned":
        if self.sign < 0:
            raise DomainError("square root of a negative LogSigned value")
        if self.sign == 0:
            return self
        return LogSigned(1, 0.5 * self.log_abs)

    def is_close(self, other: "LogSigned", rel_tol: float = 1e-12) -> bool:
        if self.sign != other.sign:
            return False
        if self.sign == 0:
            return True
        return abs(self.log_abs - other.log_abs) <= rel_tol
