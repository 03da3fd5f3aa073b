"""
    Testcases for the freelp.utils.autotable module
"""

import os.path
import tempfile
import shutil
import unittest

import numpy as np
import tables

from freelp.utils.autotable import AutoTable


class TestAutoTable(unittest.TestCase):
    def setUp(self):
        self.dirname = tempfile.mkdtemp()
        self.fname = os.path.join(self.dirname, "report.h5")
        self.tbl = AutoTable(self.fname)

    def tearDown(self):
        self.tbl.close()
        shutil.rmtree(self.dirname)

    def read(self, name):
        self.tbl.close()
        with tables.open_file(self.fname) as h5:
            return h5.get_node(h5.root, name).read()

    def test_normalize(self):
        self.assertEqual(AutoTable.normalize("1,2"), "1,2")
        self.assertTrue(np.isnan(AutoTable.normalize(None)))
        self.assertEqual(AutoTable.normalize(np.int32(3)).dtype, np.int64)
        self.assertEqual(AutoTable.normalize(True).dtype, np.bool_)
        self.assertEqual(AutoTable.normalize(np.ones(2, np.float32)).dtype, np.float32)

    def test_matrix_rows(self):
        self.tbl.append('block', np.eye(3))
        self.tbl.append('block', 2 * np.eye(3))
        self.assertEqual(self.read('block').shape, (2, 3, 3))

    def test_complex(self):
        self.tbl.append('coeffs', np.array([1 + 2j, 3j]))
        np.testing.assert_allclose(self.read('coeffs'), [[1 + 2j, 3j]])

    def test_shape_mismatch(self):
        self.tbl.append('block', np.eye(3))
        self.assertRaises(TypeError, self.tbl.append, 'block', np.ones(3))

    def test_kind_mismatch(self):
        self.tbl.append('alpha', "1")
        self.assertRaises(TypeError, self.tbl.append, 'alpha', 1.)
        self.tbl.append('norm', 1.)
        self.assertRaises(TypeError, self.tbl.append, 'norm', "1")

    def test_object(self):
        self.assertRaises(TypeError, self.tbl.append, 'split', {'alpha': (1, )})

    def test_rows(self):
        for k in range(3):
            self.tbl.append_row({'k': k, 'alpha': "1,%d" % k, 'expected': None})
        self.assertEqual(self.tbl.names, ['alpha', 'expected', 'k'])
        self.tbl.close()
        with tables.open_file(self.fname) as h5:
            self.assertEqual(list(h5.root.k.read()), [0, 1, 2])
            self.assertEqual(h5.root.alpha.read(), ["1,0", "1,1", "1,2"])
            self.assertTrue(np.all(np.isnan(h5.root.expected.read())))
