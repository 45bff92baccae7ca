import contextlib
import io
import json
import os
import tempfile
import unittest

import numpy as np
from numpy import testing as npt

import cli
from qosc import UsageError, util


def capture(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        status = cli.main(argv)
    return status, out.getvalue()


class RunConfigTest(unittest.TestCase):
    def test_parse(self):
        config = cli.parse_args(["kernel", "--twoj", "3", "--q", "0.7", "--a", "0.5", "--format", "json", "-o", "k.json"])
        self.assertEqual(["kernel", 3, 0.7, 0.5, "json", "k.json"], config.get("command", "twoj", "q", "a", "format", "output_path"))
        self.assertIsNone(config.input_path)

    def test_lists(self):
        config = cli.parse_args(["contract", "--twoj-list", "8,16", "--nmax", "1"])
        self.assertEqual([8, 16], config.twoj_list)
        self.assertEqual(1, config.n_max)

    def test_defaults(self):
        config = cli.parse_args(["spectra"])
        self.assertEqual(1e-10, config.tol)
        self.assertEqual("csv", config.format)
        self.assertFalse(config.verbose)

    def test_validate(self):
        for kwargs in ({"command": "plot"}, {"format": "xml"}, {"twoj": -1}, {"tol": 0.0}, {"command": "transform"}):
            config = cli.RunConfig()
            config.set(**kwargs)
            with self.assertRaises(UsageError):
                config.validate()

    def test_bad_arguments(self):
        with contextlib.redirect_stderr(io.StringIO()):
            self.assertEqual(cli.EXIT_USAGE, cli.main(["spectra", "--twoj", "two"]))
            self.assertEqual(cli.EXIT_USAGE, cli.main([]))


class CommandTest(unittest.TestCase):
    def test_spectra(self):
        status, text = capture(["spectra", "--twoj", "2", "--q", "0.5"])
        self.assertEqual(cli.EXIT_OK, status)
        rows = [line.split(",") for line in text.splitlines() if not line.startswith("#")][1:]
        npt.assert_allclose([-1.0606602, 0.0, 1.0606602], [float(row[1]) for row in rows], atol=1e-7)

    def test_kernel_identity(self):
        status, text = capture(["kernel", "--twoj", "1", "--q", "1", "--a", "0", "--format", "json"])
        self.assertEqual(cli.EXIT_OK, status)
        rows = json.loads(text)["rows"]
        self.assertEqual([[-1, 1.0, 0.0, 0.0, 0.0], [1, 0.0, 0.0, 1.0, 0.0]], rows)

    def test_kernel_methods(self):
        for method in ("closed", "limit"):
            status, text = capture(["kernel", "--twoj", "2", "--q", "1", "--method", method])
            self.assertEqual(cli.EXIT_OK, status)
            self.assertIn("kernel 2j=2", text)

    def test_deterministic(self):
        argv = ["wavefuncs", "--twoj", "5", "--q", "0.6", "--format", "json"]
        self.assertEqual(capture(argv)[1], capture(argv)[1])

    def test_potential(self):
        status, text = capture(["potential", "--twoj", "4", "--q", "0.8"])
        self.assertEqual(cli.EXIT_OK, status)
        self.assertIn("potential_closed_form", text)

    def test_verify(self):
        status, text = capture(["verify", "--twoj", "8", "--q", "0.5"])
        self.assertEqual(cli.EXIT_OK, status, text)
        self.assertIn("transform 2j=8 q=0.5", text)
        self.assertNotIn(",false,", text)

    def test_contract(self):
        status, text = capture(["contract", "--q", "0.5", "--twoj-list", "8,16,24,32", "--format", "json"])
        self.assertEqual(cli.EXIT_OK, status)
        self.assertEqual(4, len(json.loads(text)["rows"]))

    def test_q_above_one(self):
        with self.assertLogs("cli", level="ERROR") as logs:
            status, _ = capture(["spectra", "--q", "2"])
        self.assertEqual(cli.EXIT_USAGE, status)
        self.assertIn("J3 -> -J3", "\n".join(logs.output))

    def test_overflow(self):
        with self.assertLogs("cli", level="ERROR") as logs:
            status, _ = capture(["spectra", "--twoj", "3000", "--q", "0.5"])
        self.assertEqual(cli.EXIT_USAGE, status)
        self.assertIn("cannot evaluate 2j = 3000", "\n".join(logs.output))


class TransformCommandTest(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.signal = np.array([0.3, -1.2 + 0.5j, 2.0, 0.0, 0.7j, -0.4])
        self.path = os.path.join(self.directory.name, "signal.csv")
        with open(self.path, "w") as file:
            file.write(util.format_signal(self.signal))

    def tearDown(self):
        self.directory.cleanup()

    def test_four_quarter_turns(self):
        current = self.path
        for step in range(4):
            target = os.path.join(self.directory.name, f"step{step}.csv")
            status = cli.main(["transform", "--twoj", "5", "--q", "0.6", "--a", "1", "-i", current, "-o", target])
            self.assertEqual(cli.EXIT_OK, status)
            current = target
        npt.assert_allclose(self.signal, util.read_signal(current), atol=1e-9)

    def test_wrong_size(self):
        with self.assertLogs("cli", level="ERROR"):
            status = cli.main(["transform", "--twoj", "4", "-i", self.path, "-o", os.devnull])
        self.assertEqual(cli.EXIT_USAGE, status)

    def test_missing_input(self):
        with self.assertLogs("cli", level="ERROR"):
            status = cli.main(["transform", "--twoj", "5", "-i", os.path.join(self.directory.name, "none.csv")])
        self.assertEqual(cli.EXIT_USAGE, status)
