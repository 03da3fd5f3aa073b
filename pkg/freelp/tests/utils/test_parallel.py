import numpy as np
import unittest

from mpi4py import MPI

import freelp.utils.parallel as parallel


class TestParallel(unittest.TestCase):
    def setUp(self):
        self.comm = MPI.COMM_WORLD

    def test_stride_data_covers(self):
        for N in (0, 1, 7, 100):
            blocks = self.comm.allgather(parallel.stride_data(N, comm=self.comm))
            covered = []
            for first, last in blocks:
                covered.extend(range(first, last))
            self.assertEqual(covered, list(range(N)))

    def test_stride_data_contiguous(self):
        first, last = parallel.stride_data(10, comm=self.comm)
        self.assertLessEqual(first, last)

    def test_gather_ordered(self):
        first, last = parallel.stride_data(13, comm=self.comm)
        items = parallel.gather_ordered(range(first, last), comm=self.comm)
        self.assertEqual(items, list(range(13)))

    def test_ordered_sum(self):
        terms = [0.1] * 10 + [1e16, 1., -1e16]
        first, last = parallel.stride_data(len(terms), comm=self.comm)
        total = parallel.ordered_sum(terms[first:last], comm=self.comm)
        self.assertEqual(total, 2.)

    def test_ordered_sum_complex(self):
        terms = [1j, 2., 3 - 1j]
        first, last = parallel.stride_data(len(terms), comm=self.comm)
        self.assertEqual(parallel.ordered_sum(terms[first:last], comm=self.comm), 5.)

    def test_ordered_sum_arrays(self):
        terms = [np.ones(3) * k for k in range(4)]
        first, last = parallel.stride_data(len(terms), comm=self.comm)
        total = parallel.ordered_sum(terms[first:last], comm=self.comm)
        self.assertTrue(np.allclose(total, 6.))

    def test_ordered_sum_empty(self):
        self.assertEqual(parallel.ordered_sum([], comm=self.comm), 0.)
