"""
    Testcases for the canned and random tensors of freelp.utils.instances
"""

import itertools
import unittest

import numpy as np
from numpy.testing import assert_allclose

from freelp.errors import CapExceededError
from freelp.tensors import SIGNED, validate_cancellation, tensor_to_json
from freelp.utils.instances import counterexample_tensor, ones_tensor, random_tensor


class TestInstances(unittest.TestCase):
    def test_counterexample(self):
        t = counterexample_tensor(3)
        self.assertEqual(t.shape, (3, 2, 3, "generators"))
        for i, j in itertools.product(range(3), repeat=2):
            self.assertEqual(t[i, j][j, i], 1.)
            self.assertEqual(np.count_nonzero(t[i, j]), 1)

    def test_ones(self):
        t = ones_tensor(2, 3, 2)
        self.assertEqual(len(t), 8)
        assert_allclose(t[1, 0, 1], np.eye(2))

    def test_deterministic(self):
        a = random_tensor(2, 2, 2, seed=7)
        b = random_tensor(2, 2, 2, seed=7)
        self.assertEqual(tensor_to_json(a), tensor_to_json(b))
        c = random_tensor(2, 2, 2, seed=8)
        self.assertFalse(a.allclose(c))

    def test_full_density(self):
        self.assertEqual(len(random_tensor(2, 2, seed=0)), 4)

    def test_density(self):
        t = random_tensor(4, 3, seed=1, density=0.25)
        self.assertLess(len(t), 64)
        self.assertGreater(len(t), 0)
        self.assertRaises(ValueError, random_tensor, 2, 2, density=0.)
        self.assertRaises(ValueError, random_tensor, 2, 2, density=1.5)

    def test_signed_projected(self):
        t = random_tensor(2, 3, 1, SIGNED, seed=3)
        self.assertEqual(len(t), 4 * 3 * 3)
        for I in t.entries:
            self.assertTrue(validate_cancellation(I, 2))

    def test_cap(self):
        self.assertRaises(CapExceededError, random_tensor, 10, 4, cap=1000)

    def test_integer(self):
        t = random_tensor(2, 2, 2, seed=0, integer=True)
        for a in t.entries.values():
            assert_allclose(a.real, np.round(a.real))
            self.assertTrue(np.all(np.abs(a.real) <= 2))
