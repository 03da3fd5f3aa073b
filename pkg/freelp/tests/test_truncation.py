"""
    Testcases for the freelp.truncation module
"""

import math
import warnings
import unittest

import numpy as np
from numpy.testing import assert_allclose

from freelp.errors import CapExceededError, RankMismatchError, ConvergenceWarning
from freelp.words import ball_size
from freelp.utils.instances import random_tensor
from freelp.operators import FreeOperator, tensor_power_operator, norm_p2
from freelp.truncation import (enumerate_patterns, pattern_compression, ball_compression,
                               power_iteration, opnorm_lower_trunc, opnorm_lower_path)


class TestCompressions(unittest.TestCase):
    def test_pattern_sizes(self):
        for N, L in ((1, 3), (2, 3), (3, 4)):
            patterns, sizes = enumerate_patterns(N, L)
            self.assertEqual(sum(sizes), ball_size(N, L))
            self.assertEqual(patterns[0], ())

    def test_pattern_count(self):
        patterns, _ = enumerate_patterns(3, 12)
        self.assertEqual(len(patterns), 2 ** 13 - 1)

    def test_pattern_below_ball(self):
        X = FreeOperator.from_terms([((i, ), 1.) for i in (1, 2, 3)], 3)
        for L in (1, 2, 3):
            K = ball_compression(X, L).toarray()
            P = pattern_compression(3, L, 1., 0.).toarray()
            self.assertLessEqual(np.linalg.norm(P, 2), np.linalg.norm(K, 2) + 1e-10)

    def test_pattern_single_generator(self):
        X = FreeOperator.from_terms([((1, ), 2.), ((-1, ), 1j)], 1)
        for L in (1, 2, 3):
            K = ball_compression(X, L).toarray()
            P = pattern_compression(1, L, 2., 1j).toarray()
            assert_allclose(np.linalg.norm(P, 2), np.linalg.norm(K, 2), rtol=1e-10)

    def test_ball_shape(self):
        X = FreeOperator.from_tensor(random_tensor(2, 1, 2, seed=0))
        K = ball_compression(X, 2)
        self.assertEqual(K.shape, (2 * 17, 2 * 17))

    def test_ball_cap(self):
        X = FreeOperator.from_tensor(random_tensor(2, 1, seed=0))
        self.assertRaises(CapExceededError, ball_compression, X, 5, 100)


class TestPowerIteration(unittest.TestCase):
    def test_diagonal(self):
        import scipy.sparse as sparse
        K = sparse.csr_matrix(np.diag([1., 3., 2.]))
        lam, x, it, converged = power_iteration(K, np.ones(3), 1e-12, 1000)
        self.assertTrue(converged)
        self.assertAlmostEqual(lam, 9.)

    def test_zero_start(self):
        import scipy.sparse as sparse
        lam, _, _, converged = power_iteration(sparse.eye(3, format='csr'), np.zeros(3), 1e-8, 10)
        self.assertEqual(lam, 0.)


class TestOpnormLower(unittest.TestCase):
    def test_unitary(self):
        X = FreeOperator.from_terms([((1, ), 1.)], 2)
        for L in (1, 2, 3):
            self.assertAlmostEqual(opnorm_lower_trunc(X, L).value, 1., places=6)

    def test_unitary_pattern(self):
        X = FreeOperator.from_terms([((1, ), 1.)], 1)
        result = opnorm_lower_trunc(X, 4)
        self.assertEqual(result.method, "pattern")
        self.assertAlmostEqual(result.value, 1., places=6)

    def test_monotone_random(self):
        X = FreeOperator.from_tensor(random_tensor(2, 1, 2, seed=1))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConvergenceWarning)
            values = [r.value for r in opnorm_lower_path(X, range(1, 5))]
        for a, b in zip(values, values[1:]):
            self.assertGreaterEqual(b, a - 1e-9)

    def test_below_even_norms(self):
        X = FreeOperator.from_terms([((i, ), 1.) for i in (1, 2, 3)], 3)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConvergenceWarning)
            values = [r.value for r in opnorm_lower_path(X, range(1, 7))]
        self.assertLessEqual(values[-1], 2 * math.sqrt(2) + 1e-9)
        self.assertGreaterEqual(values[-1], norm_p2(X) - 1e-9)

    def test_reproducible(self):
        X = FreeOperator.from_tensor(random_tensor(2, 2, 1, seed=2))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConvergenceWarning)
            a = opnorm_lower_trunc(X, 3, seed=5)
            b = opnorm_lower_trunc(X, 3, seed=5)
        self.assertEqual(a.value, b.value)
        self.assertEqual(a.method, "ball")

    def test_product_rejected(self):
        X = tensor_power_operator(random_tensor(2, 2, seed=0))
        self.assertRaises(RankMismatchError, opnorm_lower_trunc, X, 2)

    def test_cap(self):
        X = FreeOperator.from_tensor(random_tensor(3, 1, 2, seed=0))
        self.assertRaises(CapExceededError, opnorm_lower_trunc, X, 6, cap=1000)
