import json
import os
import tempfile
import unittest

import numpy as np
from numpy import testing as npt

from qosc import DomainError, util


class Table(util.Tabular):
    def header(self):
        return ["name", "value", "ok"]

    def rows(self):
        return [["a", 0.1, True], ["b", np.float64(2.5), False]]

    def comments(self):
        return ["generated"]


class TabularTest(unittest.TestCase):
    def test_csv(self):
        self.assertEqual("# generated\nname,value,ok\na,0.1,true\nb,2.5,false", str(Table()))

    def test_json(self):
        obj = Table().to_json_object()
        self.assertEqual(["name", "value", "ok"], obj["header"])
        self.assertEqual([["a", 0.1, True], ["b", 2.5, False]], obj["rows"])
        json.dumps(obj)


class ReportTest(unittest.TestCase):
    def setUp(self):
        self.report = util.Report("suite")

    def test_pass(self):
        self.report.add("small", 1e-14, 1e-12)
        self.assertTrue(self.report.passed)
        self.assertTrue(self.report["small"].passed)

    def test_fail(self):
        self.report.add("small", 1e-14, 1e-12)
        with self.assertLogs("qosc.util", level="WARNING"):
            self.report.add("large", 1.0, 1e-12)
        self.assertFalse(self.report.passed)

    def test_informational(self):
        self.report.add("closed form", 1.0, 1e-12, informational=True)
        self.assertTrue(self.report.passed)

    def test_nan(self):
        self.report.add("broken", float("nan"), 1.0)
        self.assertFalse(self.report.passed)

    def test_missing(self):
        with self.assertRaises(KeyError):
            self.report["nothing"]

    def test_rows(self):
        self.report.notes.append("note")
        self.report.add("small", 0.5, 1.0)
        self.assertEqual("# note\nsuite,check,residual,tolerance,passed,informational\nsuite,small,0.5,1.0,true,false", str(self.report))


class CellTest(unittest.TestCase):
    def test_format(self):
        self.assertEqual("0.1", util.format_cell(0.1))
        self.assertEqual("3", util.format_cell(np.int64(3)))
        self.assertEqual("true", util.format_cell(True))
        self.assertEqual("x", util.format_cell("x"))

    def test_jsonable(self):
        self.assertEqual({"re": 1.0, "im": -2.0}, util.jsonable(1 - 2j))
        self.assertIs(True, util.jsonable(np.bool_(True)))
        self.assertEqual(4, util.jsonable(np.int32(4)))

    def test_complex_columns(self):
        self.assertEqual([1.0, 0.0, 0.0, -1.0], util.complex_columns([1, -1j]))


class MatrixTest(unittest.TestCase):
    def test_max_abs(self):
        self.assertEqual(3.0, util.max_abs(np.array([[1, -3j], [0, 2]])))
        self.assertEqual(0.0, util.max_abs(np.zeros((0, 0))))


class SignalFileTest(unittest.TestCase):
    def test_parse(self):
        text = "# samples\n1.5,-2\n\n3\n 0.25 , 0.5 \n"
        npt.assert_array_equal([1.5 - 2j, 3 + 0j, 0.25 + 0.5j], util.parse_signal(text))

    def test_bad_lines(self):
        with self.assertRaises(DomainError):
            util.parse_signal("1,2,3")
        with self.assertRaises(DomainError):
            util.parse_signal("one")

    def test_read_format(self):
        values = np.array([0.1 + 0.2j, -3.0 + 0j])
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "signal.csv")
            with open(path, "w") as file:
                file.write(util.format_signal(values))
            npt.assert_array_equal(values, util.read_signal(path))

    def test_missing_file(self):
        with self.assertRaises(OSError):
            util.read_signal("/nonexistent/signal.csv")


class SetGetTest(unittest.TestCase):
    def test_set_get(self):
        obj = util.SetGet()
        obj.set(a=1, b="two")
        self.assertEqual([1, "two"], obj.get("a", "b"))
