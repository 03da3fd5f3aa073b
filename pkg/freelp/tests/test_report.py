"""
    Testcases for the freelp.report module
"""

import os.path
import tempfile
import shutil
import json
import unittest

import numpy as np
import tables

from freelp.utils.instances import counterexample_tensor
from freelp.schatten import intersection_norm
from freelp.verify import Case, SuiteResult
from freelp.report import to_json, to_csv, csv_rows, write_report


class TestReport(unittest.TestCase):
    def setUp(self):
        self.dirname = tempfile.mkdtemp()
        self.doc = intersection_norm(counterexample_tensor(3), 4).to_json()
        self.suite = SuiteResult("demo", [Case("a", True, [1., 2.], 2., 1e-9, claim="c"),
                                          Case("b", False, {"lower": 1.}, None, 0)]).to_json()

    def tearDown(self):
        shutil.rmtree(self.dirname)

    def test_json_plain(self):
        doc = json.loads(to_json({"x": np.float64(1.5), "k": np.int64(2), "b": np.bool_(True),
                                  "z": 1 + 2j, "a": np.arange(3)}))
        self.assertEqual(doc, {"x": 1.5, "k": 2, "b": True, "z": [1., 2.], "a": [0, 1, 2]})

    def test_csv_splits(self):
        rows = csv_rows(self.doc)
        self.assertEqual(len(rows), 3)
        self.assertEqual([r["alpha"] for r in rows], ["", "1", "1,2"])
        text = to_csv(self.doc)
        self.assertTrue(text.startswith("p,kind,alpha,norm,T,transposed,value"))
        self.assertEqual(len(text.splitlines()), 4)

    def test_csv_cases(self):
        rows = csv_rows(self.suite)
        self.assertEqual([r["pass"] for r in rows], [True, False])
        self.assertEqual(rows[0]["observed"], "[1.0, 2.0]")
        self.assertEqual(rows[1]["expected"], "null")

    def test_write_json(self):
        fname = os.path.join(self.dirname, "report.json")
        write_report(self.doc, fname)
        with open(fname) as f:
            doc = json.load(f)
        self.assertAlmostEqual(doc["value"], 3 ** 0.75)

    def test_write_h5(self):
        fname = os.path.join(self.dirname, "suite.h5")
        write_report(self.suite, fname, fmt="h5")
        with tables.open_file(fname) as h5:
            self.assertEqual(list(h5.root.tol.read()), [1e-9, 0.])
            self.assertEqual(h5.root.description.read(), ["a", "b"])

    def test_h5_needs_file(self):
        self.assertRaises(ValueError, write_report, self.doc, None, "h5")

    def test_unknown_format(self):
        self.assertRaises(ValueError, write_report, self.doc, None, "xml")
