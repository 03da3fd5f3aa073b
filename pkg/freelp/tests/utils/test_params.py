"""
    Testcases for the helpers in freelp.utils
"""

import os
import shutil
import tempfile
import unittest
from unittest import mock

from mpi4py import MPI

from freelp.utils import (default_params, load_params, thread_cap, job_suffix,
                          create_output_path)


class TestParams(unittest.TestCase):
    def setUp(self):
        self.dirname = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dirname)

    def test_load_params(self):
        fname = os.path.join(self.dirname, "params.py")
        with open(fname, "w") as f:
            f.write("NODE_BUDGET = 10**6\ntol = 1e-10\nunrelated = 'x'\n")
        params = load_params(fname)
        self.assertEqual(params['node_budget'], 10 ** 6)
        self.assertEqual(params['tol'], 1e-10)
        self.assertEqual(params['dense_cap'], default_params['dense_cap'])
        self.assertNotIn('unrelated', params)
        self.assertEqual(default_params['tol'], 1e-8)

    def test_thread_cap(self):
        size = MPI.COMM_WORLD.size
        with mock.patch.dict(os.environ, {'FREELP_THREADS': '1'}):
            self.assertEqual(thread_cap(), 1)
        with mock.patch.dict(os.environ, {'FREELP_THREADS': 'many'}):
            self.assertEqual(thread_cap(), size)

    def test_job_suffix(self):
        env = {'PBS_JOBID': '4711.master'}
        with mock.patch.dict(os.environ, env):
            for var in ('SLURM_JOB_ID', 'SLURM_JOBID'):
                os.environ.pop(var, None)
            self.assertEqual(job_suffix(), "d4711")

    def test_output_path(self):
        root = os.path.join(self.dirname, "output")
        with mock.patch.dict(os.environ, {'SLURM_JOB_ID': '42'}):
            first = create_output_path("verify-oracle", root, MPI.COMM_SELF)
            second = create_output_path("verify-oracle", root, MPI.COMM_SELF)
        self.assertEqual(first, os.path.join(root, "verify-oracle.d42") + "/")
        self.assertEqual(second, os.path.join(root, "verify-oracle.d42+1") + "/")
        self.assertTrue(os.path.isdir(second))
