"""
Testcases for the freelp.utils.tracing module
"""

import os.path
import tempfile
import shutil
import unittest

from freelp.errors import BudgetExceededError
import freelp.utils.tracing as tracing


@tracing.traced
def kernel(x):
    """Kernel doc."""
    if x < 0:
        raise BudgetExceededError("negative")
    return 2 * x


class TestTracing(unittest.TestCase):
    def setUp(self):
        self.dirname = os.path.join(tempfile.mkdtemp(), "traces")
        self.fname = tracing.set_tracedir(self.dirname)

    def tearDown(self):
        tracing.close()
        shutil.rmtree(os.path.dirname(self.dirname))

    def read(self):
        with open(self.fname) as f:
            return f.read()

    def test_wrapper_keeps_name(self):
        self.assertEqual(kernel.__doc__, "Kernel doc.")
        self.assertEqual(kernel.__name__, "kernel")
        self.assertEqual(kernel(3), 6)

    def test_file_per_rank(self):
        self.assertTrue(tracing.is_active())
        self.assertEqual(os.path.dirname(self.fname), self.dirname)
        self.assertTrue(os.path.basename(self.fname).startswith("trace-"))

    def test_kernel_stats(self):
        kernel(1)
        kernel(2)
        calls, seconds = tracing.summary()["kernel"]
        self.assertEqual(calls, 2)
        self.assertGreaterEqual(seconds, 0.)

    def test_end_on_exception(self):
        self.assertRaises(BudgetExceededError, kernel, -1)
        self.assertEqual(tracing.summary()["kernel"][0], 1)
        tracing.tracepoint("suite:oracle")
        stats = tracing.close()
        self.assertFalse(tracing.is_active())
        self.assertIn("kernel", stats)
        text = self.read()
        self.assertIn("[kernel:begin]", text)
        self.assertIn("[kernel:end]", text)
        self.assertIn("[suite:oracle]", text)
        self.assertIn("# kernel 1 ", text)

    def test_inactive(self):
        tracing.close()
        self.assertEqual(tracing.close(), {})
        self.assertEqual(kernel(1), 2)
        self.assertEqual(tracing.summary(), {})
