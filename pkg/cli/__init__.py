"""
Command line front end for the finite q-oscillator: tables of spectra, wavefunctions,
kernels and potentials, signal transforms, and the verification suites
"""
import argparse
import json
import logging
import sys
from typing import ClassVar, Dict, List, Optional, Sequence, Tuple

import dataclasses
import numpy as np

from qosc import (
    DimensionMismatch,
    DomainError,
    Irrep,
    NonTerminatingSeries,
    QParam,
    UsageError,
    algebra,
    contraction,
    oscillator,
    potential,
    transform,
    util,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


@dataclasses.dataclass()
class RunConfig(util.SetGet):
    command: str = "spectra"
    twoj: int = 2
    q: float = 0.5
    a: float = 1.0
    format: str = "csv"
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    tol: float = 1e-10
    n_max: int = 2
    twoj_list: Optional[List[int]] = None
    method: str = "spectral"
    verbose: bool = False

    COMMANDS: ClassVar[Tuple[str, ...]] = (
        "spectra",
        "wavefuncs",
        "kernel",
        "transform",
        "potential",
        "verify",
        "contract",
    )
    FORMATS: ClassVar[Tuple[str, ...]] = ("csv", "json")
    KERNEL_METHODS: ClassVar[Tuple[str, ...]] = ("spectral", "closed", "limit")
    DEFAULT_CONTRACTION_LIST: ClassVar[Tuple[int, ...]] = (8, 16, 24, 32)

    def validate(self) -> None:
        """
        :raise UsageError: on a configuration that cannot be run
        """
        if self.command not in self.COMMANDS:
            raise UsageError(f"unknown command {self.command!r}, expected one of {self.COMMANDS}")
        if self.format not in self.FORMATS:
            raise UsageError(f"unknown format {self.format!r}, expected one of {self.FORMATS}")
        if self.method not in self.KERNEL_METHODS:
            raise UsageError(f"unknown kernel method {self.method!r}, expected one of {self.KERNEL_METHODS}")
        if self.twoj < 0:
            raise UsageError(f"--twoj must be non-negative, got {self.twoj}")
        if self.tol <= 0:
            raise UsageError(f"--tol must be positive, got {self.tol}")
        if self.n_max < 0:
            raise UsageError(f"--nmax must be non-negative, got {self.n_max}")
        if self.command == "transform" and not self.input_path:
            raise UsageError("transform needs an --input signal file")
        if self.twoj_list is not None and (not self.twoj_list or min(self.twoj_list) < 0):
            raise UsageError(f"--twoj-list needs non-negative sizes, got {self.twoj_list}")

    def qparam(self) -> QParam:
        return QParam(self.q)

    def irrep(self) -> Irrep:
        return Irrep(self.twoj)


@dataclasses.dataclass()
class Reports(util.Tabular):
    """Several verification reports emitted as one table"""

    reports: List[util.Report] = dataclasses.field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    def header(self) -> List[str]:
        return util.Report("").header()

    def rows(self) -> List[list]:
        return [row for report in self.reports for row in report.rows()]

    def comments(self) -> List[str]:
        return [f"{report.title}: {note}" for report in self.reports for note in report.notes]


#: the closed form and potential checks carry a few more digits of rounding than the others
VERIFY_TOLERANCE_FLOOR: Dict[str, float] = {"transform": 1e-9, "potential": 1e-9}


def verify(config: RunConfig) -> Reports:
    qp = config.qparam()
    reports = Reports()
    for twoj in config.twoj_list or [config.twoj]:
        irrep = Irrep(twoj)
        reports.reports.append(algebra.verify_algebra(irrep, qp, config.tol))
        reports.reports.append(oscillator.verify_oscillator(irrep, qp, config.tol))
        reports.reports.append(
            transform.verify_transform(irrep, qp, max(config.tol, VERIFY_TOLERANCE_FLOOR["transform"]))
        )
        reports.reports.append(
            potential.verify_potential(irrep, qp, max(config.tol, VERIFY_TOLERANCE_FLOOR["potential"]))
        )
    return reports


def build_kernel(config: RunConfig) -> transform.Kernel:
    irrep, qp = config.irrep(), config.qparam()
    if config.method == "closed":
        return transform.kernel_closed_form(irrep, qp, config.a)
    if config.method == "limit":
        return transform.kernel_limit(irrep, config.a)
    return transform.kernel_spectral(irrep, qp, config.a)


def transform_signal(config: RunConfig) -> transform.Signal:
    """
    :raise OSError: on errors reading the input file
    :raise DimensionMismatch: if the file does not hold 2j + 1 samples
    """
    signal = transform.Signal(config.irrep(), util.read_signal(config.input_path))
    return transform.apply(build_kernel(config), signal)


def render(table: util.Tabular, config: RunConfig) -> str:
    if config.format == "json":
        return json.dumps(table.to_json_object(), sort_keys=True, indent=2) + "\n"
    if isinstance(table, transform.Signal):
        lines = ["# " + c for c in table.comments()]
        lines.append(util.format_signal(table.values))
        return "\n".join(lines) + "\n"
    return str(table) + "\n"


def write_output(text: str, output_path: Optional[str]) -> None:
    """
    :raise OSError: on errors writing the output file
    """
    if output_path is None:
        sys.stdout.write(text)
        return
    logger.info("Writing output to: %s ...", output_path)
    with open(output_path, "w") as file:
        file.write(text)


def run(config: RunConfig) -> int:
    """
    Run one command and write its table.

    :return: 0 on success, 1 if a verification failed, 2 on a usage or I/O error
    """
    try:
        config.validate()
        status = EXIT_OK
        if config.command == "spectra":
            table: util.Tabular = oscillator.position_spectrum(config.irrep(), config.qparam())
        elif config.command == "wavefuncs":
            table = oscillator.wave_table(config.irrep(), config.qparam())
        elif config.command == "kernel":
            table = build_kernel(config)
        elif config.command == "transform":
            table = transform_signal(config)
        elif config.command == "potential":
            table = potential.potential_table(config.irrep(), config.qparam())
        elif config.command == "verify":
            reports = verify(config)
            table = reports
            status = EXIT_OK if reports.passed else EXIT_FAILED
        else:
            twoj_list = config.twoj_list or list(RunConfig.DEFAULT_CONTRACTION_LIST)
            report = contraction.contraction_report(twoj_list, config.qparam(), config.n_max)
            table = report
            status = EXIT_OK if report.passed else EXIT_FAILED
        write_output(render(table, config), config.output_path)
    except (UsageError, DomainError, DimensionMismatch, NonTerminatingSeries) as error:
        logger.error("%s", error)
        return EXIT_USAGE
    except OSError as error:
        logger.error("I/O error: %s", error)
        return EXIT_USAGE
    except (ArithmeticError, np.linalg.LinAlgError) as error:
        logger.error("%s: cannot evaluate 2j = %d, q = %s: %s", config.command, config.twoj, config.q, error)
        return EXIT_USAGE
    if status == EXIT_FAILED:
        logger.warning("%s: verification failed", config.command)
    return status


def _twoj_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def argument_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log progress at debug level")
    common.add_argument("--twoj", type=int, default=RunConfig.twoj, help="twice the representation label j")
    common.add_argument("--q", type=float, default=RunConfig.q, help="deformation parameter, 0 < q <= 1")
    common.add_argument("--a", type=float, default=RunConfig.a, help="power of the fractional transform")
    common.add_argument("--format", choices=RunConfig.FORMATS, default=RunConfig.format)
    common.add_argument("-i", "--input", dest="input_path", help="signal file, one 're,im' sample per line")
    common.add_argument("-o", "--output", dest="output_path", help="write here instead of standard output")
    common.add_argument("--tol", type=float, default=RunConfig.tol, help="verification tolerance")
    common.add_argument(
        "--nmax", dest="n_max", type=int, default=RunConfig.n_max, help="highest mode checked by contract"
    )
    common.add_argument("--twoj-list", dest="twoj_list", type=_twoj_list, help="comma separated 2j values")
    common.add_argument(
        "--method", choices=RunConfig.KERNEL_METHODS, default=RunConfig.method, help="kernel construction"
    )

    parser = argparse.ArgumentParser(
        prog="qkrav",
        description="Finite q-oscillator tables, fractional q-Kravchuk transforms and checks",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True
    helps = {
        "spectra": "position spectrum and energies",
        "wavefuncs": "table of wavefunctions Phi_n(x_s)",
        "kernel": "matrix of the fractional transform",
        "transform": "apply the fractional transform to a signal file",
        "potential": "equivalent potential of the ground state",
        "verify": "run the verification suites",
        "contract": "deviations of the scaled low modes from the q-oscillator algebra",
    }
    for name in RunConfig.COMMANDS:
        commands.add_parser(
            name, parents=[common], help=helps[name], formatter_class=argparse.ArgumentDefaultsHelpFormatter
        )
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    namespace = argument_parser().parse_args(argv)
    config = RunConfig()
    config.set(**vars(namespace))
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_args(argv)
    except SystemExit as exit_:
        return EXIT_USAGE if exit_.code else EXIT_OK
    logging.basicConfig(
        level=logging.DEBUG if config.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return run(config)
