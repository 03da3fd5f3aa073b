"""
    Testcases for the freelp.khintchine module
"""

import warnings
import unittest

import numpy as np

from freelp.errors import SchemaError, ConvergenceWarning, CapExceededError
from freelp.tensors import CoeffTensor, SIGNED
from freelp.utils.instances import counterexample_tensor, ones_tensor, random_tensor
from freelp.khintchine import (Check, khintchine_report, signed_diagonal_split,
                               signed_split_check)


class TestCheck(unittest.TestCase):
    def test_slack(self):
        self.assertTrue(Check("eq", 1., 1.).passed)
        self.assertTrue(Check("eps", 1. + 1e-12, 1.).passed)
        self.assertFalse(Check("gt", 1.1, 1.).passed)
        self.assertEqual(Check("x", 1., 3.).to_json(), {"name": "x", "pass": True, "slack": 2.})


class TestKhintchineReport(unittest.TestCase):
    def test_counterexample(self):
        report = khintchine_report(counterexample_tensor(3), 4)
        self.assertAlmostEqual(report.norms.value, 3 ** 0.75)
        self.assertEqual(len(report.checks), 3)
        self.assertTrue(report.passed)

    def test_degree_one(self):
        for seed in range(4):
            report = khintchine_report(random_tensor(2 + seed % 2, 1, 2, seed=seed), 4)
            self.assertEqual([c.name for c in report.checks],
                             ["lower-estimate k=0", "lower-estimate k=1", "degree1-upper"])
            self.assertTrue(report.passed)

    def test_p2(self):
        t = ones_tensor(3, 1)
        report = khintchine_report(t, 2)
        self.assertAlmostEqual(report.lp, np.sqrt(3))
        for r in report.ratios:
            self.assertAlmostEqual(r, 1.)

    def test_zero(self):
        report = khintchine_report(CoeffTensor(2, 2), 4)
        self.assertEqual(report.lp, 0.)
        self.assertEqual(report.ratios, [None, None, None])
        self.assertTrue(report.passed)

    def test_odd_p(self):
        self.assertRaises(ValueError, khintchine_report, ones_tensor(2, 1), 3)

    def test_inf_interval(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConvergenceWarning)
            report = khintchine_report(random_tensor(2, 1, 2, seed=5), "inf", depth=3)
        self.assertLessEqual(report.lp, report.lp_upper + 1e-9)
        doc = report.to_json()
        self.assertEqual(doc["lp"]["p"], "inf")
        self.assertEqual(set(doc["lp"]["value"]), {"lower", "upper"})

    def test_separated(self):
        report = khintchine_report(random_tensor(2, 2, seed=6), 4, separated=True)
        self.assertGreater(report.separated, 0.)
        self.assertIn("separated", report.to_json())

    def test_separate_caps(self):
        t = random_tensor(2, 1, 2, seed=5)
        self.assertRaises(CapExceededError, khintchine_report, t, 4, dense_cap=3)
        self.assertRaises(CapExceededError, khintchine_report, t, "inf", depth=3, ball_cap=50)
        report = khintchine_report(t, 4, dense_cap=4, ball_cap=1)
        self.assertGreater(report.lp, 0.)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConvergenceWarning)
            report = khintchine_report(t, "inf", depth=3, dense_cap=4, ball_cap=106)
        self.assertLessEqual(report.lp, report.lp_upper + 1e-9)

    def test_json(self):
        doc = khintchine_report(counterexample_tensor(2), 4).to_json()
        for key in ("p", "splits", "value", "lp", "ratios", "checks"):
            self.assertIn(key, doc)
        self.assertEqual(len(doc["ratios"]), 3)


class TestSignedSplit(unittest.TestCase):
    def signed(self, seed):
        return CoeffTensor(2, 2, 1, SIGNED, random_tensor(4, 2, seed=seed).entries)

    def test_split_parts(self):
        t = self.signed(7)
        diag, offdiag = signed_diagonal_split(t)
        self.assertEqual(set(diag.entries), {(0, 2), (1, 3), (2, 0), (3, 1)})
        self.assertEqual(len(diag) + len(offdiag), len(t))

    def test_check(self):
        for seed in range(3):
            check, reconstructed = signed_split_check(self.signed(seed), 4)
            self.assertTrue(check.passed)
            self.assertTrue(reconstructed)

    def test_schema(self):
        self.assertRaises(SchemaError, signed_diagonal_split, random_tensor(2, 2, seed=0))
        self.assertRaises(SchemaError, signed_diagonal_split, random_tensor(2, 1, 1, SIGNED, seed=0))
