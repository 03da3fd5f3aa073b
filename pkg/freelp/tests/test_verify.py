"""
    Testcases for the freelp.verify suites
"""

import unittest

from freelp.verify import (Case, Job, SuiteResult, SUITES, SUITE_ORDER, close_rel, run_suite)


class TestSuiteResult(unittest.TestCase):
    def test_job_wraps_case(self):
        job = Job("one", lambda: Case("one", True, 1., 1., 0))
        self.assertEqual(len(job()), 1)

    def test_passed(self):
        result = SuiteResult("x", [Case("a", True, 1, 1, 0), Case("b", False, 2, 1, 0)])
        self.assertFalse(result.passed)
        self.assertEqual([c.description for c in result.failures], ["b"])
        self.assertTrue(SuiteResult("x", []).passed)

    def test_json(self):
        doc = SuiteResult("x", [Case("a", True, 1., 1., 1e-9, claim="a = a")], 3.).to_json()
        self.assertEqual(set(doc), {"suite", "pass", "cases"})
        self.assertEqual(set(doc["cases"][0]),
                         {"description", "anchor", "claim", "pass", "observed", "expected", "tol"})

    def test_close_rel(self):
        self.assertTrue(close_rel(1. + 1e-12, 1., 1e-10))
        self.assertFalse(close_rel(1.1, 1., 1e-3))
        self.assertTrue(close_rel(0., 0., 1e-10))


class TestSuites(unittest.TestCase):
    def test_registered(self):
        for name in ("counterexample", "transposition", "sum-norm", "lower-estimate",
                     "degree1", "converse", "cancellation", "signed", "fell", "oracle",
                     "truncation"):
            self.assertIn(name, SUITES)
        self.assertEqual(len(SUITE_ORDER), len(SUITES))

    def test_unknown(self):
        self.assertRaises(KeyError, run_suite, "nope")

    def test_counterexample(self):
        result = run_suite("counterexample")
        self.assertEqual(len(result.cases), 18)
        self.assertTrue(result.passed, result.failures)

    def test_small_suites(self):
        for name in ("transposition", "lower-estimate", "degree1", "converse", "cancellation",
                     "signed", "fell", "oracle"):
            result = run_suite(name, seed=3, cases=2)
            self.assertTrue(result.cases)
            self.assertTrue(result.passed, (name, result.failures))

    def test_cases_name_anchor(self):
        cases = list(run_suite("counterexample").cases)
        for name in ("transposition", "degree1", "cancellation", "fell", "oracle"):
            cases.extend(run_suite(name, seed=1, cases=1).cases)
        for c in cases:
            self.assertTrue(c.anchor, c.description)
            self.assertIn("anchor", c.to_json())

    def test_sum_norm_gap_cases(self):
        result = run_suite("sum-norm", seed=0, cases=2)
        gaps = [c for c in result.cases if c.description.startswith("p=1")]
        self.assertEqual(sorted(c.description.split()[2] for c in gaps),
                         ["d=2", "d=2", "d=3", "d=3"])
        for c in gaps:
            self.assertLessEqual(c.observed["lower"], c.observed["upper"])
            self.assertLessEqual(c.observed["upper"], c.observed["single"] * (1. + 1e-12))
            self.assertLessEqual(c.observed["relative_gap"], 1e-4)
        self.assertTrue(result.passed, result.failures)

    def test_oracle_cases(self):
        result = run_suite("oracle", cases=2)
        self.assertEqual(len(result.cases), 7)

    def test_deterministic(self):
        a = run_suite("transposition", seed=5, cases=3).to_json()
        b = run_suite("transposition", seed=5, cases=3).to_json()
        self.assertEqual(a, b)
